#pragma once

#include "tobs/grid.hpp"

namespace tobs {

// Expansion f(sigma_k) = sum_m c_m e^{i sigma_k tau_m}, m = -N/2 .. N/2-1.
// coeffs[i] = c_{i - N/2} with the unitary normalization
//   sum |c_m|^2 = dsig * sum |f(sigma_k)|^2.
struct FrequencySpectrum {
  GridSpec spec;
  VecC coeffs;

  double tau_of(int i) const { return spec.tau(i - spec.half_points()); }
};

FrequencySpectrum fourier(const GridFunction& f);
GridFunction inverse_fourier(const FrequencySpectrum& s);

// Raw DFT bins d_j = (1/N) sum_k f_k e^{-2*pi*i*j*k/N} and the exact inverse
// f_k = sum_j d_j e^{+2*pi*i*j*k/N}.  Bin j < N/2 carries tau_j >= 0; bins
// j >= N/2 carry tau_{j-N} < 0 (j = N/2 is the Nyquist bin).
VecC fft_bins(const VecC& f);
VecC ifft_bins(const VecC& d);

}  // namespace tobs
