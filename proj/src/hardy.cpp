#include "tobs/hardy.hpp"

namespace tobs {

namespace {

void check_sign(int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("riesz sign must be +1 or -1");
}

}  // namespace

GridFunction riesz_project(const GridFunction& f, int sign) {
  check_sign(sign);
  const int n = f.spec.n_points;
  if (f.samples.size() != n)
    throw std::invalid_argument("riesz_project: size mismatch");
  VecC d = fft_bins(f.samples);
  const int h = n / 2;
  if (sign == 1)
    d.tail(n - h).setZero();
  else
    d.head(h).setZero();
  return GridFunction{f.spec, ifft_bins(d)};
}

MatC riesz_matrix(const GridSpec& spec, int sign) {
  check_sign(sign);
  const int n = spec.n_points;
  MatC p(n, n);
  VecC e = VecC::Zero(n);
  for (int k = 0; k < n; ++k) {
    e[k] = 1.0;
    p.col(k) = riesz_project(GridFunction{spec, e}, sign).samples;
    e[k] = 0.0;
  }
  return p;
}

GridFunction unitary_evolve(const GridFunction& f, double t) {
  const int n = f.spec.n_points;
  if (f.samples.size() != n)
    throw std::invalid_argument("unitary_evolve: size mismatch");
  VecC out(n);
  for (int k = 0; k < n; ++k)
    out[k] = std::exp(cd(0.0, -f.spec.sigma(k) * t)) * f.samples[k];
  return GridFunction{f.spec, std::move(out)};
}

GridFunction toeplitz_evolve(const GridFunction& f, double t, int sign) {
  return riesz_project(unitary_evolve(f, t), sign);
}

double hardy_fraction(const GridFunction& f, int sign) {
  const double tot = norm(f);
  if (tot == 0.0) throw std::invalid_argument("hardy_fraction: zero function");
  const double part = norm(riesz_project(f, sign));
  return (part * part) / (tot * tot);
}

double wrap_horizon(const GridSpec& spec) {
  return spec.half_points() * spec.dtau();
}

}  // namespace tobs
