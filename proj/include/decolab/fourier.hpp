// fourier.hpp — Thin wrappers over Eigen's FFT. Forward is unscaled
// (sum of e^{-i 2 pi j k / n}), inverse carries the 1/n.

#pragma once

#include "decolab/types.hpp"

namespace decolab {

void fft_inplace(CVec& v);
void ifft_inplace(CVec& v);

// rho <- U rho U^dag with U = F^-1 diag(phase) F applied over both indices.
// `phase` is in DFT storage order.
void unitary_conjugate_fft(CMat& rho, const CVec& phase);

} // namespace decolab
