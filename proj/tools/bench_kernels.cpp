// Timing comparison of the blocked OpenMP kernels against the serial
// reference loops. Prints one row per (kernel, size) with both timings and
// the speedup. Sizes cover the lattice sizes the solver actually uses.

#include "modscat/kernels.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace k = modscat::kernels;
using cplx = k::cplx;

namespace {

double now() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <class F> double time_op(F&& f, int reps) {
  f(); // warm up
  double t0 = now();
  for (int r = 0; r < reps; ++r)
    f();
  return (now() - t0) / reps;
}

} // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d (cap %d)\n", omp_get_max_threads(),
              k::thread_cap());
#else
  std::printf("threads: 1 (no OpenMP)\n");
#endif
  std::printf("%-18s %10s %12s %12s %8s\n", "kernel", "n", "ref [us]",
              "omp [us]", "speedup");

  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  for (std::size_t n : {8192u, 65536u, 262144u, 1048576u}) {
    std::vector<cplx> v(n), m(n);
    std::vector<double> theta(n);
    for (auto& z : v)
      z = cplx(nd(rng), nd(rng));
    for (auto& z : m)
      z = cplx(nd(rng), nd(rng));
    for (auto& t : theta)
      t = nd(rng);
    int reps = n > 500000 ? 20 : 100;

    double t_ref = time_op([&] { volatile double s = k::ref::sum_abs2(v); (void)s; }, reps);
    double t_omp = time_op([&] { volatile double s = k::sum_abs2(v); (void)s; }, reps);
    std::printf("%-18s %10zu %12.2f %12.2f %8.2f\n", "sum_abs2", n,
                t_ref * 1e6, t_omp * 1e6, t_ref / t_omp);

    t_ref = time_op([&] { volatile double s = k::ref::sum_abs_pow(v, 3.0); (void)s; }, reps / 2 + 1);
    t_omp = time_op([&] { volatile double s = k::sum_abs_pow(v, 3.0); (void)s; }, reps / 2 + 1);
    std::printf("%-18s %10zu %12.2f %12.2f %8.2f\n", "sum_abs_pow", n,
                t_ref * 1e6, t_omp * 1e6, t_ref / t_omp);

    auto a = v;
    t_ref = time_op([&] { k::ref::hadamard(a, m); }, reps);
    t_omp = time_op([&] { k::hadamard(a, m); }, reps);
    std::printf("%-18s %10zu %12.2f %12.2f %8.2f\n", "hadamard", n,
                t_ref * 1e6, t_omp * 1e6, t_ref / t_omp);

    a = v;
    t_ref = time_op([&] { k::ref::phase_rotate(a, theta, -1.0); }, reps / 2 + 1);
    t_omp = time_op([&] { k::phase_rotate(a, theta, -1.0); }, reps / 2 + 1);
    std::printf("%-18s %10zu %12.2f %12.2f %8.2f\n", "phase_rotate", n,
                t_ref * 1e6, t_omp * 1e6, t_ref / t_omp);
  }
  return 0;
}
