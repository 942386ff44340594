#include <doctest.h>

#include "helpers.hpp"
#include "tobs/hardy.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

using namespace tobs;
using tobs::testutil::x_mu;

namespace {

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  double dev = 0.0;
  for (int k = 0; k < a.spec.n_points; ++k)
    dev = std::max(dev, std::abs(a.samples[k] - b.samples[k]));
  return dev;
}

// Direct-sum evaluation of the frequency profile g(tau) = dsig * sum_k
// f(sigma_k) e^{-i sigma_k tau} at arbitrary real tau.  Independent of the
// FFT layout and of the bin-shift evolution path.
cd slow_profile(const GridFunction& f, double tau) {
  cd acc(0.0, 0.0);
  const GridSpec& g = f.spec;
  for (int k = 0; k < g.n_points; ++k)
    acc += f.samples[k] * std::exp(cd(0.0, -g.sigma(k) * tau));
  return acc * g.dsig();
}

// Oracle for ||P_+ u(t) f||^2: shift the frequency profile by t, keep the
// tau >= 0 half, and integrate |g|^2 with the flat dtau weight and the
// 1/(2 pi) Plancherel constant.
double slow_forward_energy(const GridFunction& f, double t) {
  const GridSpec& g = f.spec;
  double acc = 0.0;
  for (int m = 0; m < g.half_points(); ++m) {
    const double tau = g.tau(m);
    acc += std::norm(slow_profile(f, tau + t));
  }
  return acc * g.dtau() / (2.0 * M_PI);
}

}  // namespace

TEST_CASE("riesz projections are complementary orthogonal projectors") {
  const GridSpec g = make_grid(256, 10.0);
  const GridFunction f = testutil::random_state(g, 5);
  const double nf = norm(f);

  const GridFunction plus = riesz_project(f, +1);
  const GridFunction minus = riesz_project(f, -1);

  CHECK(max_abs_diff(riesz_project(plus, +1), plus) <= 1e-12 * nf);
  CHECK(max_abs_diff(riesz_project(minus, -1), minus) <= 1e-12 * nf);

  GridFunction sum = plus;
  for (int k = 0; k < g.n_points; ++k) sum.samples[k] += minus.samples[k];
  CHECK(max_abs_diff(sum, f) <= 1e-12 * nf);

  CHECK(std::abs(inner(plus, minus)) <= 1e-12 * nf * nf);

  const double e_plus = norm(plus) * norm(plus);
  const double e_minus = norm(minus) * norm(minus);
  CHECK(std::abs(e_plus + e_minus - nf * nf) <= 1e-12 * nf * nf);

  CHECK_THROWS_AS(riesz_project(f, 0), std::invalid_argument);
  CHECK_THROWS_AS(riesz_project(f, 2), std::invalid_argument);
}

TEST_CASE("riesz matrix reproduces the functional projection") {
  const GridSpec g = make_grid(64, 5.0);
  const GridFunction f = testutil::random_state(g, 9);
  const MatC p = riesz_matrix(g, +1);

  const VecC via_matrix = p * f.samples;
  const GridFunction via_fft = riesz_project(f, +1);
  double dev = 0.0;
  for (int k = 0; k < g.n_points; ++k)
    dev = std::max(dev, std::abs(via_matrix[k] - via_fft.samples[k]));
  CHECK(dev <= 1e-12 * norm(f));

  // Projector algebra on the matrix itself.
  CHECK((p * p - p).norm() <= 1e-12 * static_cast<double>(g.n_points));
  CHECK((p - p.adjoint()).norm() <= 1e-12 * static_cast<double>(g.n_points));
}

TEST_CASE("kernel states sit on one hardy component") {
  const GridSpec g = make_grid(4096, 200.0);
  const GridFunction lower = x_mu(g, cd(0.0, -1.0));   // pole below, plus side
  const GridFunction upper = x_mu(g, cd(0.0, +1.0));   // pole above, minus side

  // Energy on the wrong component stays below 1e-3 of the total.
  CHECK(hardy_fraction(lower, +1) >= 0.999);
  const GridFunction kept = riesz_project(lower, +1);
  GridFunction diff = kept;
  for (int k = 0; k < g.n_points; ++k) diff.samples[k] -= lower.samples[k];
  const double total = norm(lower) * norm(lower);
  CHECK(norm(diff) * norm(diff) <= 1e-3 * total);

  // Mirror state: the tau = 0 bin belongs to the plus component by the bin
  // convention and carries a pi/(2L) energy share of the boundary value, so
  // it is discounted before the same 1e-3 energy bound.
  const GridFunction wrong_side = riesz_project(upper, +1);
  FrequencySpectrum s = fourier(wrong_side);
  s.coeffs[g.half_points()] = cd(0.0, 0.0);
  double leak = 0.0;
  for (const cd& c : s.coeffs) leak += std::norm(c);
  CHECK(leak <= 1e-3 * total);
  CHECK(hardy_fraction(upper, -1) >= 0.999 - M_PI / (2.0 * g.halfwidth));
}

TEST_CASE("multiplication evolution is a pointwise unitary group") {
  const GridSpec g = make_grid(128, 10.0);
  const GridFunction f = testutil::random_state(g, 17);

  CHECK(max_abs_diff(unitary_evolve(f, 0.0), f) == 0.0);
  CHECK(std::abs(norm(unitary_evolve(f, 2.7)) - norm(f)) <= 1e-12 * norm(f));

  const GridFunction ab = unitary_evolve(unitary_evolve(f, 1.3), -0.4);
  const GridFunction direct = unitary_evolve(f, 0.9);
  CHECK(max_abs_diff(ab, direct) <= 1e-12 * norm(f));

  // Pointwise phase law at one node.
  const int k = 37;
  const cd expected = f.samples[k] * std::exp(cd(0.0, -g.sigma(k) * 0.9));
  CHECK(std::abs(direct.samples[k] - expected) <= 1e-14);
}

TEST_CASE("forward compression at t = 0 is the plus projection") {
  const GridSpec g = make_grid(256, 20.0);
  const GridFunction f = testutil::random_state(g, 23);
  CHECK(max_abs_diff(toeplitz_evolve(f, 0.0, +1), riesz_project(f, +1)) <=
        1e-12 * norm(f));
  CHECK_THROWS_AS(toeplitz_evolve(f, 1.0, 0), std::invalid_argument);
}

TEST_CASE("decayed forward energy matches its closed form") {
  const GridSpec g = make_grid(4096, 200.0);
  const GridFunction x = x_mu(g, cd(0.0, -1.0));

  // Oracle first: direct-sum frequency profile, shifted by t = 1, summed over
  // the kept half.  The continuum value is pi * e^{-2}.
  const double target = M_PI * std::exp(-2.0);
  const double oracle = slow_forward_energy(x, 1.0);
  CHECK(std::abs(oracle - target) <= 0.02 * target);

  const GridFunction evolved = toeplitz_evolve(x, 1.0, +1);
  const double impl = norm(evolved) * norm(evolved);
  CHECK(std::abs(impl - target) <= 0.02 * target);
  CHECK(std::abs(impl - oracle) <= 0.005 * target);
}

TEST_CASE("forward energy decreases along smooth states") {
  const GridSpec g = make_grid(512, 25.0);
  const GridFunction f = testutil::random_smooth_state(g, 31);
  const std::vector<double> times = {0.0, 0.13, 0.4, 0.9, 1.7, 3.0, 5.0};
  double prev = norm(toeplitz_evolve(f, times[0], +1));
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double cur = norm(toeplitz_evolve(f, times[i], +1));
    CHECK(cur <= prev + 1e-10 * norm(f));
    prev = cur;
  }
}

TEST_CASE("semigroup law is exact at bin-aligned times") {
  const GridSpec g = make_grid(512, 25.0);
  const GridFunction f = riesz_project(testutil::random_smooth_state(g, 37), +1);
  const double t1 = 5 * g.dtau();
  const double t2 = 9 * g.dtau();

  const GridFunction joint = toeplitz_evolve(f, t1 + t2, +1);
  const GridFunction staged = toeplitz_evolve(toeplitz_evolve(f, t2, +1), t1, +1);
  CHECK(max_abs_diff(joint, staged) <= 1e-10 * norm(f));
}

TEST_CASE("semigroup residual at generic times shrinks under refinement") {
  const double t1 = 0.37, t2 = 0.81;
  auto residual = [&](int n, double halfwidth) {
    const GridSpec g = make_grid(n, halfwidth);
    const GridFunction f =
        riesz_project(testutil::normalized(testutil::gaussian_state(g, 20.0, 4.0)), +1);
    const GridFunction joint = toeplitz_evolve(f, t1 + t2, +1);
    const GridFunction staged = toeplitz_evolve(toeplitz_evolve(f, t2, +1), t1, +1);
    GridFunction diff = joint;
    for (int k = 0; k < g.n_points; ++k) diff.samples[k] -= staged.samples[k];
    return norm(diff) / norm(f);
  };
  const double coarse = residual(1024, 100.0);
  const double fine = residual(4096, 200.0);
  CHECK(fine < coarse);
}

TEST_CASE("forward evolution empties the plus component before the horizon") {
  const GridSpec g = make_grid(4096, 100.0);
  REQUIRE(wrap_horizon(g) > 50.0);
  const GridFunction f =
      testutil::normalized(riesz_project(testutil::gaussian_state(g, 0.0, 4.0), +1));
  const GridFunction late = toeplitz_evolve(f, 50.0, +1);
  CHECK(norm(late) / norm(f) <= 0.05);
}

TEST_CASE("wrap horizon formula") {
  const GridSpec g = make_grid(1024, 100.0);
  CHECK(wrap_horizon(g) == doctest::Approx(512.0 * M_PI / 100.0).epsilon(1e-15));
}
