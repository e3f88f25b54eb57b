#include "modscat/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace modscat::kernels {

namespace {

std::atomic<int> g_cap{0};

int read_env_cap() {
#ifdef _OPENMP
  int cap = omp_get_max_threads();
#else
  int cap = 1;
#endif
  if (const char* env = std::getenv("MODSCAT_THREADS")) {
    int v = std::atoi(env);
    if (v > 0)
      cap = std::min(cap, v);
  }
  return cap;
}

// Distribute fixed-size blocks over threads; combine partials in block order
// so the result does not depend on the thread count.
template <class Partial, class BlockOp, class Combine>
Partial blocked_reduce(std::size_t n, Partial init, BlockOp block_op,
                       Combine combine) {
  if (n == 0)
    return init;
  const std::size_t nb = (n + reduce_block - 1) / reduce_block;
  std::vector<Partial> partial(nb, init);
  const int nt = thread_cap();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nt) \
    if (nb > 1 && nt > 1)
#endif
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * reduce_block;
    const std::size_t hi = std::min(lo + reduce_block, n);
    partial[static_cast<std::size_t>(b)] = block_op(lo, hi);
  }
  Partial total = init;
  for (const Partial& p : partial)
    total = combine(total, p);
  return total;
}

template <class F> void parallel_for(std::size_t n, F f) {
  const int nt = thread_cap();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nt) \
    if (n >= reduce_block && nt > 1)
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
    f(static_cast<std::size_t>(i));
}

} // namespace

int thread_cap() {
  int c = g_cap.load(std::memory_order_relaxed);
  if (c == 0) {
    c = read_env_cap();
    g_cap.store(c, std::memory_order_relaxed);
  }
  return c;
}

void set_thread_cap(int n) { g_cap.store(n > 0 ? n : 1); }

double sum_abs2(std::span<const cplx> v) {
  return blocked_reduce(
      v.size(), 0.0,
      [&](std::size_t lo, std::size_t hi) {
        double s = 0;
        for (std::size_t i = lo; i < hi; ++i)
          s += std::norm(v[i]);
        return s;
      },
      [](double a, double b) { return a + b; });
}

double sum_abs_pow(std::span<const cplx> v, double p) {
  return blocked_reduce(
      v.size(), 0.0,
      [&](std::size_t lo, std::size_t hi) {
        double s = 0;
        for (std::size_t i = lo; i < hi; ++i)
          s += std::pow(std::abs(v[i]), p);
        return s;
      },
      [](double a, double b) { return a + b; });
}

double sum_weighted_abs2(std::span<const cplx> v, std::span<const double> w) {
  return blocked_reduce(
      v.size(), 0.0,
      [&](std::size_t lo, std::size_t hi) {
        double s = 0;
        for (std::size_t i = lo; i < hi; ++i)
          s += w[i] * std::norm(v[i]);
        return s;
      },
      [](double a, double b) { return a + b; });
}

double max_abs2(std::span<const cplx> v) {
  return blocked_reduce(
      v.size(), 0.0,
      [&](std::size_t lo, std::size_t hi) {
        double m = 0;
        for (std::size_t i = lo; i < hi; ++i)
          m = std::max(m, std::norm(v[i]));
        return m;
      },
      [](double a, double b) { return std::max(a, b); });
}

cplx inner(std::span<const cplx> f, std::span<const cplx> g) {
  return blocked_reduce(
      f.size(), cplx(0, 0),
      [&](std::size_t lo, std::size_t hi) {
        cplx s(0, 0);
        for (std::size_t i = lo; i < hi; ++i)
          s += f[i] * std::conj(g[i]);
        return s;
      },
      [](cplx a, cplx b) { return a + b; });
}

void scale(std::span<cplx> io, cplx a) {
  parallel_for(io.size(), [&](std::size_t i) { io[i] *= a; });
}

void hadamard(std::span<cplx> io, std::span<const cplx> m) {
  parallel_for(io.size(), [&](std::size_t i) { io[i] *= m[i]; });
}

void phase_rotate(std::span<cplx> io, std::span<const double> theta,
                  double sign) {
  parallel_for(io.size(), [&](std::size_t i) {
    io[i] *= std::polar(1.0, sign * theta[i]);
  });
}

namespace ref {

double sum_abs2(std::span<const cplx> v) {
  double s = 0;
  for (const cplx& z : v)
    s += std::norm(z);
  return s;
}

double sum_abs_pow(std::span<const cplx> v, double p) {
  double s = 0;
  for (const cplx& z : v)
    s += std::pow(std::abs(z), p);
  return s;
}

double sum_weighted_abs2(std::span<const cplx> v, std::span<const double> w) {
  double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += w[i] * std::norm(v[i]);
  return s;
}

double max_abs2(std::span<const cplx> v) {
  double m = 0;
  for (const cplx& z : v)
    m = std::max(m, std::norm(z));
  return m;
}

cplx inner(std::span<const cplx> f, std::span<const cplx> g) {
  cplx s(0, 0);
  for (std::size_t i = 0; i < f.size(); ++i)
    s += f[i] * std::conj(g[i]);
  return s;
}

void scale(std::span<cplx> io, cplx a) {
  for (cplx& z : io)
    z *= a;
}

void hadamard(std::span<cplx> io, std::span<const cplx> m) {
  for (std::size_t i = 0; i < io.size(); ++i)
    io[i] *= m[i];
}

void phase_rotate(std::span<cplx> io, std::span<const double> theta,
                  double sign) {
  for (std::size_t i = 0; i < io.size(); ++i)
    io[i] *= std::polar(1.0, sign * theta[i]);
}

} // namespace ref

} // namespace modscat::kernels
