#include "tobs/grid.hpp"

namespace tobs {

GridSpec make_grid(int n_points, double halfwidth) {
  if (n_points < 8 || n_points % 2 != 0)
    throw std::invalid_argument("make_grid: n_points must be even and >= 8");
  if (!(halfwidth > 0.0))
    throw std::invalid_argument("make_grid: halfwidth must be positive");
  return GridSpec{n_points, halfwidth};
}

cd inner(const GridFunction& f, const GridFunction& g) {
  if (f.spec != g.spec) throw std::invalid_argument("inner: grid mismatch");
  return f.spec.dsig() * f.samples.dot(g.samples);
}

cd inner(const HalfLineFunction& f, const HalfLineFunction& g) {
  if (f.spec != g.spec) throw std::invalid_argument("inner: grid mismatch");
  return f.spec.dsig() * f.samples.dot(g.samples);
}

double norm(const GridFunction& f) { return std::sqrt(std::abs(inner(f, f))); }
double norm(const HalfLineFunction& f) { return std::sqrt(std::abs(inner(f, f))); }

GridFunction embed_half(const HalfLineFunction& h) {
  const int n = h.spec.n_points;
  if (h.samples.size() != h.spec.half_points())
    throw std::invalid_argument("embed_half: size mismatch");
  VecC full = VecC::Zero(n);
  full.tail(n / 2) = h.samples;
  return GridFunction{h.spec, std::move(full)};
}

HalfLineFunction restrict_half(const GridFunction& f, RestrictMode mode,
                               double support_tol) {
  const int n = f.spec.n_points;
  if (f.samples.size() != n)
    throw std::invalid_argument("restrict_half: size mismatch");
  if (mode == RestrictMode::strict) {
    const double left = std::sqrt(f.spec.dsig()) * f.samples.head(n / 2).norm();
    const double tot = norm(f);
    if (left > support_tol * std::max(tot, 1e-300))
      throw invariant_error("restrict_half: mass on sigma < 0 exceeds support_tol");
  }
  return HalfLineFunction{f.spec, f.samples.tail(n / 2)};
}

GridFunction sample(const GridSpec& spec, const std::function<cd(double)>& rule) {
  VecC v(spec.n_points);
  for (int k = 0; k < spec.n_points; ++k) v[k] = rule(spec.sigma(k));
  return GridFunction{spec, std::move(v)};
}

HalfLineFunction sample_half(const GridSpec& spec,
                             const std::function<cd(double)>& rule) {
  const int h = spec.half_points();
  VecC v(h);
  for (int k = 0; k < h; ++k) v[k] = rule(spec.sigma(spec.half_points() + k));
  return HalfLineFunction{spec, std::move(v)};
}

}  // namespace tobs
