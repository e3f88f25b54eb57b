#include "modscat/solver.hpp"

#include "modscat/conservation.hpp"
#include "modscat/norms.hpp"
#include "modscat/operators.hpp"

#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace modscat;
using namespace modscat::testing;
using Catch::Approx;

namespace {

SolverState make_state(const ComplexField& f, Frame frame, Nonlinearity nl,
                       double dt) {
  SolverState s;
  s.field = f;
  s.frame = frame;
  s.nonlinearity = nl;
  s.dt = dt;
  s.time = 0;
  return s;
}

const Nonlinearity cubic{Nonlinearity::Kind::power, 1};

} // namespace

TEST_CASE("gauge substep") {
  Grid g = make_grid(1, 64, 8);

  SECTION("zero stays zero") {
    SolverState s = make_state(make_field(g), Frame::direct, cubic, 0.1);
    CHECK(l2_norm(nonlinear_substep(s, 0.1).field) == 0.0);
  }

  SECTION("plane wave phase rotates by dt |A|^{2/n}") {
    ComplexField f = make_field(g);
    cplx amp(0.6, 0.3);
    for (auto& z : f.values)
      z = amp;
    SolverState s = make_state(f, Frame::direct, cubic, 0.25);
    SolverState out = nonlinear_substep(s, 0.25);
    cplx expect = amp * std::polar(1.0, -0.25 * std::norm(amp));
    for (const auto& z : out.field.values)
      CHECK(std::abs(z - expect) < 1e-15);
    // modulus untouched
    for (const auto& z : out.field.values)
      CHECK(std::abs(z) == Approx(std::abs(amp)).margin(1e-15));
  }

  SECTION("tau-frame coefficient equals the integrated rate") {
    ComplexField f = make_field(g);
    for (auto& z : f.values)
      z = cplx(0.9, 0.0);
    SolverState s = make_state(f, Frame::pseudoconformal, cubic, 0.05);
    s.time = 0.3;
    SolverState out = nonlinear_substep(s, 0.05);
    // Simpson quadrature of int_tau^{tau+dt} (1-s)^{-1} ds
    double quad = 0;
    int m = 2000;
    double h = 0.05 / m;
    for (int i = 0; i < m; ++i) {
      double a = 0.3 + i * h;
      quad += h / 6.0 *
              (1 / (1 - a) + 4 / (1 - a - h / 2) + 1 / (1 - a - h));
    }
    double expect_phase = -quad * cubic.g(0.81);
    double got_phase = std::arg(out.field.values[0] / f.values[0]);
    CHECK(got_phase == Approx(expect_phase).epsilon(1e-10));
  }

  SECTION("stepping across tau = 1 is rejected") {
    ComplexField f = make_field(g);
    for (auto& z : f.values)
      z = cplx(1, 0);
    SolverState s = make_state(f, Frame::pseudoconformal, cubic, 0.2);
    s.time = 0.95;
    CHECK_THROWS_AS(nonlinear_substep(s, 0.2), std::invalid_argument);
  }
}

TEST_CASE("Strang step") {
  Grid g = make_grid(1, 512, 32);
  ComplexField u0 = gaussian(g);

  SECTION("zero data stays zero") {
    SolverState s = make_state(make_field(g), Frame::direct, cubic, 0.01);
    CHECK(l2_norm(strang_step(s, 0.01).field) == 0.0);
  }

  SECTION("mass is preserved per step to rounding") {
    SolverState s = make_state(u0, Frame::direct, cubic, 0.01);
    double m0 = mass(s.field);
    SolverState s1 = strang_step(s, 0.01);
    CHECK(std::abs(mass(s1.field) - m0) <= 1e-12 * m0);
    for (int i = 0; i < 100; ++i)
      s1 = strang_step(s1, 0.01);
    CHECK(std::abs(mass(s1.field) - m0) <= 1e-11 * m0);
  }

  SECTION("gauge covariance") {
    SolverState a = make_state(u0, Frame::direct, cubic, 0.02);
    ComplexField rotated = u0;
    cplx phase = std::polar(1.0, 0.7);
    for (auto& z : rotated.values)
      z *= phase;
    SolverState b = make_state(rotated, Frame::direct, cubic, 0.02);
    for (int i = 0; i < 25; ++i) {
      a = strang_step(a, 0.02);
      b = strang_step(b, 0.02);
    }
    ComplexField expect = a.field;
    for (auto& z : expect.values)
      z *= phase;
    CHECK(rel_l2_diff(b.field, expect) < 1e-10);
  }

  SECTION("self-convergence order is two") {
    auto run = [&](double dt) {
      SolverState s = make_state(u0, Frame::direct, cubic, dt);
      int steps = static_cast<int>(std::lround(1.0 / dt));
      for (int i = 0; i < steps; ++i)
        s = strang_step(s, dt);
      return s.field;
    };
    ComplexField ref = run(1.0 / 320);
    double e1 = rel_l2_diff(run(1.0 / 40), ref);
    double e2 = rel_l2_diff(run(1.0 / 80), ref);
    double order = std::log2(e1 / e2);
    CHECK(order > 1.8);
    CHECK(order < 2.2);
  }
}

TEST_CASE("evolve") {
  Grid g = make_grid(1, 512, 32);
  ComplexField u0 = gaussian(g);

  SECTION("no checkpoints returns only the final state") {
    SolverState s = make_state(u0, Frame::direct, cubic, 1e-2);
    Trajectory tr = evolve(s, 0.5, {});
    REQUIRE(tr.points.size() == 1);
    CHECK(tr.points[0].t == 0.5);
    CHECK(tr.final_state.time == 0.5);
  }

  SECTION("mass at every checkpoint within 1e-9 of the initial value") {
    SolverState s = make_state(u0, Frame::direct, cubic, 1e-3);
    Trajectory tr = evolve(s, 1.0, {0.25, 0.5, 0.75});
    double m0 = mass(u0);
    for (const auto& p : tr.points)
      CHECK(std::abs(p.mass - m0) <= 1e-9 * m0);
  }

  SECTION("energy at checkpoints within 1e-6 relative at small dt") {
    SolverState s = make_state(u0, Frame::direct, cubic, 5e-4);
    Trajectory tr = evolve(s, 1.0, {0.5});
    double e0 = energy(u0, cubic);
    for (const auto& p : tr.points)
      CHECK(std::abs(p.energy - e0) <= 1e-6 * e0);
  }

  SECTION("checkpoints snap to step boundaries within dt/2") {
    SolverState s = make_state(u0, Frame::direct, cubic, 0.01);
    Trajectory tr = evolve(s, 0.3, {0.1234});
    REQUIRE(tr.points.size() == 2);
    CHECK(tr.points[0].t == Approx(0.12).margin(1e-12));
  }

  SECTION("final partial step lands exactly on t_end") {
    SolverState s = make_state(u0, Frame::direct, cubic, 0.01);
    Trajectory tr = evolve(s, 0.105, {});
    CHECK(tr.final_state.time == 0.105);
    double m0 = mass(u0);
    CHECK(std::abs(mass(tr.final_state.field) - m0) <= 1e-10 * m0);
  }

  SECTION("boundary-mass violation aborts with the last good record") {
    // momentum-boosted data on a tiny box runs into the boundary quickly
    Grid small = make_grid(1, 64, 4);
    ComplexField fast = gaussian(small, 1.0, 0.8, 0.0, 3.0);
    SolverState s = make_state(fast, Frame::direct, cubic, 1e-2);
    MonitorOptions opts;
    opts.boundary_mass_tol = 1e-6;
    bool aborted = false;
    try {
      evolve(s, 2.0, {0.2, 0.4, 0.8, 1.2, 1.6}, {}, opts);
    } catch (const evolve_abort& e) {
      aborted = true;
      CHECK(e.invariant_name == "boundary mass");
      CHECK(e.last_good.t < e.time);
    }
    CHECK(aborted);
  }

  SECTION("observers see checkpoints in order") {
    SolverState s = make_state(u0, Frame::direct, cubic, 0.01);
    std::vector<double> seen;
    Observer ob = [&](const SolverState& st) { seen.push_back(st.time); };
    evolve(s, 0.2, {0.05, 0.1, 0.15, 0.2}, {ob});
    REQUIRE(seen.size() == 4);
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    CHECK(seen.back() == 0.2);
  }
}

TEST_CASE("pseudoconformal transform") {
  Grid g = make_grid(1, 2048, 32);
  ComplexField u0 = gaussian(g);

  SECTION("t = 0 is multiplication by the unit chirp") {
    auto [v0, tau] = pseudoconformal_map(u0, 0.0);
    CHECK(tau == 0.0);
    double max_err = 0;
    for (int i = 0; i < g.n; ++i) {
      double x = g.coord(i);
      cplx expect = u0.values[i] * std::polar(1.0, -x * x / 2);
      max_err = std::max(max_err, std::abs(v0.values[i] - expect));
    }
    CHECK(max_err < 1e-12);
  }

  SECTION("round trip is the identity") {
    ComplexField u = free_propagate(u0, 0.7);
    auto [v, tau] = pseudoconformal_map(u, 0.7);
    auto [back, t] = pseudoconformal_inverse(v, tau);
    CHECK(t == Approx(0.7).epsilon(1e-12));
    CHECK(rel_l2_diff(back, u) < 1e-8);
  }

  SECTION("norm relations of the transform") {
    // evolve a little so the state is not an exact Gaussian
    SolverState s = make_state(u0, Frame::direct, cubic, 1e-3);
    ComplexField u = evolve(s, 1.0, {}).final_state.field;
    double t = 1.0;
    auto [v, tau] = pseudoconformal_map(u, t);
    CHECK(tau == Approx(0.5).epsilon(1e-14));

    CHECK(l2_norm(v) == Approx(l2_norm(u)).epsilon(1e-6));

    double p = 4; // 2(n+1)/n with n = 1
    double lhs = std::pow(lp_norm(u, p), p);
    double rhs = std::pow(lp_norm(v, p), p) / (1.0 + t);
    CHECK(lhs == Approx(rhs).epsilon(1e-6));

    CHECK(grad_l2_norm(v) ==
          Approx(galilean_norm(u, 1.0 + t)).epsilon(1e-6));
  }
}

TEST_CASE("tau-frame evolution") {
  Grid g = make_grid(1, 2048, 32);
  ComplexField u0 = gaussian(g);

  SECTION("zero data stays zero; mass constant along tau") {
    Trajectory z = evolve_pseudoconformal(make_field(g), cubic, 0.5, 1e-3);
    CHECK(l2_norm(z.final_state.field) == 0.0);

    auto [v0, tau0] = pseudoconformal_map(u0, 0.0);
    Trajectory tr = evolve_pseudoconformal(v0, cubic, 0.5, 5e-4,
                                           {0.125, 0.25, 0.375});
    double m0 = mass(v0);
    for (const auto& p : tr.points)
      CHECK(std::abs(p.mass - m0) <= 1e-9 * m0);
  }

  SECTION("tau_end too close to 1 is rejected") {
    CHECK_THROWS_AS(evolve_pseudoconformal(u0, cubic, 0.9999, 1e-4),
                    std::invalid_argument);
  }

  SECTION("frame equivalence against the direct solve") {
    double t_end = 1.0;
    SolverState direct = make_state(u0, Frame::direct, cubic, 1e-3);
    ComplexField u_direct = evolve(direct, t_end, {}).final_state.field;

    auto [v0, tau0] = pseudoconformal_map(u0, 0.0);
    double tau_end = t_end / (1.0 + t_end);
    Trajectory tr = evolve_pseudoconformal(v0, cubic, tau_end, 5e-4);
    auto [u_back, t_back] =
        pseudoconformal_inverse(tr.final_state.field, tau_end);
    CHECK(t_back == Approx(t_end).epsilon(1e-12));
    CHECK(rel_l2_diff(u_back, u_direct) < 1e-4);
  }

  SECTION("tau-frame energy identity") {
    auto [v0, tau0] = pseudoconformal_map(u0, 0.0);
    VFrameEnergyLedger ledger(v0, cubic);
    Observer ob = [&](const SolverState& st) {
      ledger.update(st.field, st.time);
    };
    std::vector<double> cps;
    for (int i = 1; i <= 18; ++i)
      cps.push_back(0.05 * i / 2);
    evolve_pseudoconformal(v0, cubic, 0.45, 2.5e-4, cps, {ob});
    CHECK(ledger.residual() < 1e-3);
    CHECK(v_frame_energy_residual(v0, 0.0, 0.0, ledger.c_star(), cubic) ==
          0.0);
  }
}

TEST_CASE("snapshot files") {
  Grid g = make_grid(1, 64, 8);
  ComplexField f = random_smooth(g, 77);
  SolverState s = make_state(f, Frame::direct, cubic, 1e-3);
  s.time = 1.25;

  auto path = std::filesystem::temp_directory_path() / "modscat_snap_test.bin";
  write_snapshot(path.string(), s);

  SECTION("round trip is bitwise") {
    SolverState r = read_snapshot(path.string());
    CHECK(r.field.grid == g);
    CHECK(r.time == 1.25);
    CHECK(r.frame == Frame::direct);
    CHECK(r.nonlinearity.kind == Nonlinearity::Kind::power);
    CHECK(r.nonlinearity.n == 1);
    CHECK(r.field.values == f.values);
  }

  SECTION("layout matches the documented offsets") {
    std::ifstream is(path, std::ios::binary);
    REQUIRE(is.good());
    std::uint32_t dim, n;
    double L, t;
    is.read(reinterpret_cast<char*>(&dim), 4);
    is.read(reinterpret_cast<char*>(&n), 4);
    is.read(reinterpret_cast<char*>(&L), 8);
    is.read(reinterpret_cast<char*>(&t), 8);
    CHECK(dim == 1u);
    CHECK(n == 64u);
    CHECK(L == 8.0);
    CHECK(t == 1.25);
    is.seekg(40);
    double re, im;
    is.read(reinterpret_cast<char*>(&re), 8);
    is.read(reinterpret_cast<char*>(&im), 8);
    CHECK(re == f.values[0].real());
    CHECK(im == f.values[0].imag());
  }

  std::filesystem::remove(path);
}
