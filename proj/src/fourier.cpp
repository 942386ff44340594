#include "tobs/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace tobs {

namespace {

// One reusable in-place plan pair per transform size.  FFTW planning and the
// shared buffers are not thread safe, so every transform holds the mutex.
struct PlanPair {
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

PlanPair& plan_for(int n) {
  static std::map<int, PlanPair> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    PlanPair p;
    p.buf = fftw_alloc_complex(n);
    p.fwd = fftw_plan_dft_1d(n, p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_1d(n, p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    it = cache.emplace(n, p).first;
  }
  return it->second;
}

VecC run_plan(const VecC& v, bool forward, double scale) {
  const int n = static_cast<int>(v.size());
  std::lock_guard<std::mutex> lock(plan_mutex());
  PlanPair& p = plan_for(n);
  for (int k = 0; k < n; ++k) {
    p.buf[k][0] = v[k].real();
    p.buf[k][1] = v[k].imag();
  }
  fftw_execute(forward ? p.fwd : p.bwd);
  VecC out(n);
  for (int k = 0; k < n; ++k) out[k] = scale * cd(p.buf[k][0], p.buf[k][1]);
  return out;
}

}  // namespace

VecC fft_bins(const VecC& f) {
  return run_plan(f, true, 1.0 / static_cast<double>(f.size()));
}

VecC ifft_bins(const VecC& d) { return run_plan(d, false, 1.0); }

FrequencySpectrum fourier(const GridFunction& f) {
  const int n = f.spec.n_points;
  if (f.samples.size() != n) throw std::invalid_argument("fourier: size mismatch");
  const VecC d = fft_bins(f.samples);
  const double root = std::sqrt(2.0 * f.spec.halfwidth);
  VecC c(n);
  const int h = n / 2;
  for (int i = 0; i < n; ++i) {
    const int m = i - h;
    const double parity = (m % 2 == 0) ? 1.0 : -1.0;
    c[i] = parity * root * d[(m + n) % n];
  }
  return FrequencySpectrum{f.spec, std::move(c)};
}

GridFunction inverse_fourier(const FrequencySpectrum& s) {
  const int n = s.spec.n_points;
  if (s.coeffs.size() != n)
    throw std::invalid_argument("inverse_fourier: size mismatch");
  const double root = std::sqrt(2.0 * s.spec.halfwidth);
  VecC d(n);
  const int h = n / 2;
  for (int i = 0; i < n; ++i) {
    const int m = i - h;
    const double parity = (m % 2 == 0) ? 1.0 : -1.0;
    d[(m + n) % n] = parity * s.coeffs[i] / root;
  }
  return GridFunction{s.spec, ifft_bins(d)};
}

}  // namespace tobs
