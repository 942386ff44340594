#include "tobs/cauchyflow.hpp"

#include "tobs/quasiaffine.hpp"

namespace tobs {

namespace {

// Composite Simpson weights over m+1 equispaced nodes (step ds); odd interval
// counts get a trapezoid patch on the final interval.
VecR simpson_weights(int nodes, double ds) {
  if (nodes < 3) throw std::invalid_argument("simpson_weights: too few nodes");
  VecR w = VecR::Zero(nodes);
  const int intervals = nodes - 1;
  const int simpson_end = (intervals % 2 == 0) ? intervals : intervals - 1;
  for (int k = 0; k + 2 <= simpson_end; k += 2) {
    w[k] += ds / 3.0;
    w[k + 1] += 4.0 * ds / 3.0;
    w[k + 2] += ds / 3.0;
  }
  if (intervals % 2 != 0) {
    w[nodes - 2] += ds / 2.0;
    w[nodes - 1] += ds / 2.0;
  }
  return w;
}

}  // namespace

cd cauchy_transform(const HalfLineFunction& h, cd z) {
  const GridSpec& spec = h.spec;
  const int half = spec.half_points();
  if (h.samples.size() != half)
    throw std::invalid_argument("cauchy_transform: size mismatch");
  const double ds = spec.dsig();
  for (int k = 0; k < half; ++k) {
    const double s = spec.sigma(half + k);
    if (std::abs(z - cd(s, 0.0)) < 2.0 * ds)
      throw std::invalid_argument("cauchy_transform: z too close to a support node");
  }
  const VecR w = simpson_weights(half, ds);
  cd acc = 0.0;
  for (int k = 0; k < half; ++k) {
    const double s = spec.sigma(half + k);
    acc += w[k] * h.samples[k] / (cd(s, 0.0) - z);
  }
  return acc / (cd(0.0, 2.0 * M_PI));
}

CauchySplit boundary_split(const HalfLineFunction& h) {
  const GridFunction f = embed_half(h);
  GridFunction plus = riesz_project(f, +1);
  GridFunction minus = riesz_project(f, -1);
  minus.samples = -minus.samples;
  return CauchySplit{std::move(plus), std::move(minus)};
}

HalfLineFunction reconstruct(const CauchySplit& split, double support_tol) {
  if (!(split.plus.spec == split.minus.spec))
    throw std::invalid_argument("reconstruct: grid mismatch");
  GridFunction diff{split.plus.spec, split.plus.samples - split.minus.samples};
  return restrict_half(diff, RestrictMode::strict, support_tol);
}

std::vector<NormFlowRow> norm_flow_curves(const HalfLineFunction& psi,
                                          const std::vector<double>& times) {
  const GridFunction hardy0 = riesz_project(embed_half(psi), +1);
  std::vector<NormFlowRow> rows;
  rows.reserve(times.size());
  for (const double t : times) {
    const GridFunction evolved = embed_half(evolve_half(psi, t));
    NormFlowRow row;
    row.t = t;
    const double np = norm(riesz_project(evolved, +1));
    const double nm = norm(riesz_project(evolved, -1));
    const double nt = norm(toeplitz_evolve(hardy0, t, +1));
    row.n_plus = np * np;
    row.n_minus = nm * nm;
    row.n_plus_toeplitz = nt * nt;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tobs
