#include "modscat/fourier.hpp"
#include "modscat/grid.hpp"
#include "modscat/norms.hpp"

#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace modscat;
using namespace modscat::testing;
using Catch::Approx;

TEST_CASE("make_grid dual-lattice identities") {
  Grid g = make_grid(1, 16, pi);
  CHECK(g.dx == Approx(2 * pi / 16).epsilon(1e-15));
  CHECK(g.dxi == Approx(1.0).epsilon(1e-15));
  CHECK(g.dx * g.dxi * g.n == Approx(2 * pi).epsilon(1e-15));

  Grid g2 = make_grid(2, 512, 64);
  CHECK(g2.size() == 512u * 512u);
  CHECK(g2.coord(0) == -64.0);
  CHECK(g2.coord(256) == 0.0);
  CHECK(g2.dx * g2.dxi * g2.n == Approx(2 * pi).epsilon(1e-15));
  // dual spacing reconstructed from dx
  CHECK(2 * pi / (g2.dx * g2.n) == Approx(g2.dxi).epsilon(1e-15));
}

TEST_CASE("make_grid rejects bad input") {
  CHECK_THROWS_AS(make_grid(1, 17, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 8, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(3, 64, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 64, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 64, -2), std::invalid_argument);
}

TEST_CASE("forward transform of the standard Gaussian") {
  Grid g = make_grid(1, 1024, 20);
  ComplexField f = gaussian(g);
  ComplexField fh = forward_fourier(f);

  SECTION("matches the closed form pointwise") {
    // e^{-x^2/2} is its own transform under the unitary convention
    double max_err = 0;
    for (int k = 0; k < g.n; ++k) {
      double xi = g.freq(k);
      max_err = std::max(max_err,
                         std::abs(fh.values[k] - cplx(std::exp(-xi * xi / 2))));
    }
    CHECK(max_err < 1e-10);
  }

  SECTION("matches direct quadrature of the defining integral") {
    // independent slow sum at a few lattice frequencies
    for (int k : {g.n / 2, g.n / 2 + 3, g.n / 2 - 8, g.n / 2 + 19, g.n / 4}) {
      double xi = g.freq(k);
      cplx slow(0, 0);
      for (int i = 0; i < g.n; ++i) {
        double x = g.coord(i);
        slow += std::exp(-x * x / 2) * std::polar(1.0, -x * xi);
      }
      slow *= g.dx / std::sqrt(2 * pi);
      CHECK(std::abs(fh.values[k] - slow) < 1e-12);
    }
  }
}

TEST_CASE("zero field transforms to zero") {
  Grid g = make_grid(1, 64, 5);
  ComplexField z = make_field(g);
  ComplexField zh = forward_fourier(z);
  CHECK(l2_norm(zh) == 0.0);
}

TEST_CASE("Parseval and round trip on random band-limited fields") {
  for (unsigned seed : {1u, 2u, 3u}) {
    Grid g = make_grid(1, 256, 16);
    ComplexField f = random_smooth(g, seed);
    double nf = l2_norm(f);
    ComplexField fh = forward_fourier(f);
    CHECK(std::abs(l2_norm(fh) - nf) <= 1e-12 * nf);
    ComplexField back = inverse_fourier(fh);
    CHECK(rel_l2_diff(back, f) <= 1e-12);
  }
  Grid g2 = make_grid(2, 64, 8);
  ComplexField f2 = random_smooth(g2, 7);
  double nf2 = l2_norm(f2);
  ComplexField f2h = forward_fourier(f2);
  CHECK(std::abs(l2_norm(f2h) - nf2) <= 1e-12 * nf2);
  CHECK(rel_l2_diff(inverse_fourier(f2h), f2) <= 1e-12);
}

TEST_CASE("transforms reject wrong space tags") {
  Grid g = make_grid(1, 64, 5);
  ComplexField f = make_field(g, Space::frequency);
  CHECK_THROWS_AS(forward_fourier(f), std::invalid_argument);
  ComplexField p = make_field(g, Space::physical);
  CHECK_THROWS_AS(inverse_fourier(p), std::invalid_argument);
}

TEST_CASE("norms of the standard Gaussian") {
  Grid g = make_grid(1, 1024, 20);
  NormReport r = norms(gaussian(g));
  // int e^{-x^2} = sqrt(pi)
  CHECK(r.l2 * r.l2 == Approx(std::sqrt(pi)).epsilon(1e-10));
  CHECK(r.l_inf == Approx(1.0).epsilon(1e-14));
  // ||d/dx e^{-x^2/2}||^2 = int x^2 e^{-x^2} = sqrt(pi)/2
  CHECK(r.grad_l2 * r.grad_l2 == Approx(std::sqrt(pi) / 2).epsilon(1e-10));
  // L^4: int e^{-2x^2} = sqrt(pi/2)
  CHECK(std::pow(r.lp, 4) == Approx(std::sqrt(pi / 2)).epsilon(1e-10));
}

TEST_CASE("norms of the zero field vanish") {
  Grid g = make_grid(1, 64, 5);
  NormReport r = norms(make_field(g));
  CHECK(r.l2 == 0.0);
  CHECK(r.l_inf == 0.0);
  CHECK(r.lp == 0.0);
  CHECK(r.grad_l2 == 0.0);
  CHECK(r.weighted == 0.0);
}

TEST_CASE("lp norm is positive definite") {
  Grid g = make_grid(1, 64, 5);
  for (unsigned seed : {11u, 12u}) {
    ComplexField f = random_smooth(g, seed);
    REQUIRE(l2_norm(f) > 0);
    CHECK(lp_norm(f, 3.5) > 0);
  }
}

TEST_CASE("weighted Sobolev norm") {
  Grid g = make_grid(1, 1024, 20);
  ComplexField f = gaussian(g);

  SECTION("zero field gives zero") {
    CHECK(weighted_sobolev_norm(make_field(g), 1, 1) == 0.0);
  }

  SECTION("(0,0) is two copies of the L2 norm") {
    CHECK(weighted_sobolev_norm(f, 0, 0) == Approx(2 * l2_norm(f)).epsilon(1e-12));
  }

  SECTION("(1,1) on the Gaussian matches the analytic value") {
    // ||<x> f||^2 = int (1+x^2) e^{-x^2} = (3/2) sqrt(pi), same on the xi side
    double part = std::sqrt(1.5 * std::sqrt(pi));
    CHECK(weighted_sobolev_norm(f, 1, 1) == Approx(2 * part).epsilon(1e-10));
  }

  SECTION("(1,1) matches quadrature at double resolution") {
    Grid g2 = make_grid(1, 2048, 20);
    double fine = weighted_sobolev_norm(gaussian(g2), 1, 1);
    CHECK(weighted_sobolev_norm(f, 1, 1) == Approx(fine).epsilon(1e-10));
  }

  SECTION("negative orders rejected") {
    CHECK_THROWS_AS(weighted_sobolev_norm(f, -1, 0), std::invalid_argument);
  }
}
