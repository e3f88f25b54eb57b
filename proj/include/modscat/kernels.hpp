#pragma once

#include <complex>
#include <cstddef>
#include <span>

// Data-parallel inner loops shared by the solver and diagnostics.
//
// Reductions are computed blockwise: fixed-size blocks are summed
// independently (possibly on different threads) and the per-block partials
// are combined serially in block order. The result is therefore bitwise
// identical for any thread count, which the experiment runner relies on.
//
// kernels::ref holds plain serial loops with the textbook summation order.
// They are the reference the parallel kernels are tested and benchmarked
// against; production code calls the blocked versions.

namespace modscat::kernels {

using cplx = std::complex<double>;

inline constexpr std::size_t reduce_block = 4096;

/// Thread cap honoring MODSCAT_THREADS (first call reads the environment).
int thread_cap();
void set_thread_cap(int n);

double sum_abs2(std::span<const cplx> v);
double sum_abs_pow(std::span<const cplx> v, double p);
double sum_weighted_abs2(std::span<const cplx> v, std::span<const double> w);
double max_abs2(std::span<const cplx> v);
cplx inner(std::span<const cplx> f, std::span<const cplx> g); // sum f conj(g)

void scale(std::span<cplx> io, cplx a);
void hadamard(std::span<cplx> io, std::span<const cplx> m);
/// io[i] *= exp(i * sign * theta[i])
void phase_rotate(std::span<cplx> io, std::span<const double> theta,
                  double sign);

namespace ref {
double sum_abs2(std::span<const cplx> v);
double sum_abs_pow(std::span<const cplx> v, double p);
double sum_weighted_abs2(std::span<const cplx> v, std::span<const double> w);
double max_abs2(std::span<const cplx> v);
cplx inner(std::span<const cplx> f, std::span<const cplx> g);
void scale(std::span<cplx> io, cplx a);
void hadamard(std::span<cplx> io, std::span<const cplx> m);
void phase_rotate(std::span<cplx> io, std::span<const double> theta,
                  double sign);
} // namespace ref

} // namespace modscat::kernels
