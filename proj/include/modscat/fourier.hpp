#pragma once

#include "modscat/grid.hpp"

// Unitary Fourier transform pair in the continuum normalization
//   (F u)(xi) = (2 pi)^{-dim/2} integral e^{-i x.xi} u(x) dx,
// discretized as the Riemann sum over the centered lattice. Both lattices are
// stored in natural (monotone coordinate) order; the shift bookkeeping against
// the raw DFT stays inside this module.
//
// Parseval holds to rounding: ||F u||_L2 = ||u||_L2 with the dx- resp.
// dxi-weighted sums, because dx * dxi * n = 2 pi per dimension.

namespace modscat {

/// physical -> frequency. Rejects fields not tagged physical.
ComplexField forward_fourier(const ComplexField& f);

/// frequency -> physical. Rejects fields not tagged frequency.
ComplexField inverse_fourier(const ComplexField& f);

/// Releases cached transform plans (optional; useful under leak checkers).
void clear_fourier_plans();

namespace detail {
/// Centered unnormalized DFT: S_k = sum_m s_m e^{sign i (2pi/n)(k-n/2).(m-n/2)}
/// per dimension. Building block for transforms and band-limited resampling.
std::vector<cplx> centered_dft(const std::vector<cplx>& v, int dim, int n,
                               int sign);
} // namespace detail

} // namespace modscat
