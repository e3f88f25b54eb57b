#include "modscat/kernels.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

namespace k = modscat::kernels;
using cplx = k::cplx;

namespace {
std::vector<cplx> random_vec(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<cplx> v(n);
  for (auto& z : v)
    z = cplx(nd(rng), nd(rng));
  return v;
}
} // namespace

TEST_CASE("blocked reductions match serial reference") {
  auto v = random_vec(100000, 5);
  auto w = random_vec(100000, 6);
  std::vector<double> weights(v.size());
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ud(0, 2);
  for (auto& x : weights)
    x = ud(rng);

  CHECK(k::sum_abs2(v) == Catch::Approx(k::ref::sum_abs2(v)).epsilon(1e-13));
  CHECK(k::sum_abs_pow(v, 3.0) ==
        Catch::Approx(k::ref::sum_abs_pow(v, 3.0)).epsilon(1e-13));
  CHECK(k::sum_weighted_abs2(v, weights) ==
        Catch::Approx(k::ref::sum_weighted_abs2(v, weights)).epsilon(1e-13));
  CHECK(k::max_abs2(v) == k::ref::max_abs2(v)); // max is order independent
  cplx a = k::inner(v, w), b = k::ref::inner(v, w);
  CHECK(std::abs(a - b) <= 1e-13 * std::abs(b));
}

TEST_CASE("reductions are bitwise independent of the thread count") {
  auto v = random_vec(300001, 9);
  int save = k::thread_cap();
  k::set_thread_cap(1);
  double s1 = k::sum_abs2(v);
  double p1 = k::sum_abs_pow(v, 2.5);
  cplx i1 = k::inner(v, v);
  k::set_thread_cap(4);
  CHECK(k::sum_abs2(v) == s1);
  CHECK(k::sum_abs_pow(v, 2.5) == p1);
  CHECK(k::inner(v, v) == i1);
  k::set_thread_cap(3);
  CHECK(k::sum_abs2(v) == s1);
  k::set_thread_cap(save);
}

TEST_CASE("pointwise kernels match reference exactly") {
  auto v = random_vec(50000, 13);
  auto m = random_vec(50000, 14);
  std::vector<double> theta(v.size());
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> ud(-3.14, 3.14);
  for (auto& t : theta)
    t = ud(rng);

  auto a = v, b = v;
  k::hadamard(a, m);
  k::ref::hadamard(b, m);
  CHECK(a == b);

  a = v;
  b = v;
  k::phase_rotate(a, theta, -1.0);
  k::ref::phase_rotate(b, theta, -1.0);
  CHECK(a == b);

  a = v;
  b = v;
  k::scale(a, cplx(0.3, -0.7));
  k::ref::scale(b, cplx(0.3, -0.7));
  CHECK(a == b);
}
