#include "modscat/solver.hpp"

#include "modscat/conservation.hpp"
#include "modscat/fourier.hpp"
#include "modscat/kernels.hpp"
#include "modscat/norms.hpp"
#include "modscat/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

static_assert(std::endian::native == std::endian::little,
              "snapshot files are little-endian; add byte swapping first");

namespace modscat {

namespace {

std::vector<cplx> kinetic_multiplier(const Grid& g, double h) {
  std::vector<double> xi2 = frequency_abs2(g);
  std::vector<cplx> m(g.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = std::polar(1.0, -0.5 * h * xi2[i]);
  return m;
}

void kinetic_step(ComplexField& f, const std::vector<cplx>& mult) {
  ComplexField fh = forward_fourier(f);
  kernels::hadamard(fh.values, mult);
  f = inverse_fourier(fh);
}

// phase rotation coefficient of the gauge substep over [t, t+dt]
double gauge_coefficient(Frame frame, double t, double dt) {
  if (frame == Frame::direct)
    return dt;
  if (t + dt >= 1.0)
    throw std::invalid_argument("gauge substep crosses tau = 1");
  // int_t^{t+dt} (1-s)^{-1} ds
  return std::log((1.0 - t) / (1.0 - t - dt));
}

void gauge_step(ComplexField& f, const Nonlinearity& nl, double coef) {
  if (nl.kind == Nonlinearity::Kind::none)
    return;
  const std::size_t n = f.values.size();
  const int nt = kernels::thread_cap();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nt) \
    if (n >= kernels::reduce_block && nt > 1)
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    cplx& z = f.values[i];
    z *= std::polar(1.0, -coef * nl.g(std::norm(z)));
  }
}

double boundary_mass_fraction(const ComplexField& f, double shell_fraction) {
  const Grid& g = f.grid;
  const int m = g.n / 2;
  const int cut =
      static_cast<int>(std::floor((1.0 - shell_fraction) * m));
  double shell = 0, total = 0;
  if (g.dim == 1) {
    for (int i = 0; i < g.n; ++i) {
      double w = std::norm(f.values[i]);
      total += w;
      if (std::abs(i - m) > cut)
        shell += w;
    }
  } else {
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b) {
        double w = std::norm(f.values[static_cast<std::size_t>(a) * g.n + b]);
        total += w;
        if (std::abs(a - m) > cut || std::abs(b - m) > cut)
          shell += w;
      }
  }
  return total > 0 ? shell / total : 0.0;
}

double spectral_tail_fraction(const ComplexField& f) {
  ComplexField fh = forward_fourier(f);
  const Grid& g = f.grid;
  const int m = g.n / 2;
  double hi = 0, total = 0;
  if (g.dim == 1) {
    for (int k = 0; k < g.n; ++k) {
      double w = std::norm(fh.values[k]);
      total += w;
      if (std::abs(k - m) > m / 2)
        hi += w;
    }
  } else {
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b) {
        double w = std::norm(fh.values[static_cast<std::size_t>(a) * g.n + b]);
        total += w;
        if (std::abs(a - m) > m / 2 || std::abs(b - m) > m / 2)
          hi += w;
      }
  }
  return total > 0 ? hi / total : 0.0;
}

} // namespace

SolverState nonlinear_substep(const SolverState& state, double dt) {
  if (!(dt > 0))
    throw std::invalid_argument("nonlinear_substep: dt > 0 required");
  state.nonlinearity.validate();
  SolverState out = state;
  gauge_step(out.field, out.nonlinearity,
             gauge_coefficient(state.frame, state.time, dt));
  out.time = state.time + dt;
  return out;
}

SolverState strang_step(const SolverState& state, double dt) {
  if (!(dt > 0))
    throw std::invalid_argument("strang_step: dt > 0 required");
  state.nonlinearity.validate();
  SolverState out = state;
  std::vector<cplx> half = kinetic_multiplier(state.field.grid, dt / 2);
  kinetic_step(out.field, half);
  gauge_step(out.field, out.nonlinearity,
             gauge_coefficient(state.frame, state.time, dt));
  kinetic_step(out.field, half);
  out.time = state.time + dt;
  return out;
}

Trajectory evolve(const SolverState& state, double t_end,
                  std::vector<double> checkpoint_times,
                  const std::vector<Observer>& observers,
                  const MonitorOptions& opts,
                  const std::vector<Observer>& step_observers) {
  if (!(t_end > state.time))
    throw std::invalid_argument("evolve: t_end must exceed the current time");
  state.nonlinearity.validate();
  if (!(state.dt > 0))
    throw std::invalid_argument("evolve: dt > 0 required");
  if (!std::is_sorted(checkpoint_times.begin(), checkpoint_times.end()))
    throw std::invalid_argument("evolve: checkpoint times must be sorted");

  const double t0 = state.time;
  const double dt = state.dt;
  const double span = t_end - t0;
  long total_steps = static_cast<long>(std::floor(span / dt + 1e-9));
  double remainder = span - total_steps * dt;
  if (remainder < 1e-9 * dt)
    remainder = 0;

  // snap checkpoints to step indices
  std::vector<long> cp_steps;
  for (double c : checkpoint_times) {
    if (c < t0 - 1e-12 || c > t_end + 1e-12)
      throw std::invalid_argument("evolve: checkpoint outside [t0, t_end]");
    long m = std::lround((c - t0) / dt);
    m = std::clamp(m, 0L, total_steps);
    if (cp_steps.empty() || cp_steps.back() != m)
      cp_steps.push_back(m);
  }

  SolverState cur = state;
  Trajectory traj;
  const double mass0 = mass(cur.field);

  auto checkpoint = [&](double t_now, bool is_final) {
    cur.time = t_now;
    TrajectoryPoint p;
    p.t = t_now;
    p.mass = mass(cur.field);
    p.energy = energy(cur.field, cur.nonlinearity);
    p.linf = linf_norm(cur.field);
    p.boundary_fraction =
        boundary_mass_fraction(cur.field, opts.boundary_shell_fraction);
    p.tail_fraction = spectral_tail_fraction(cur.field);
    p.under_resolved = p.tail_fraction > opts.spectral_tail_tol;

    auto fail = [&](const char* name, double value, double tol) {
      TrajectoryPoint last = traj.points.empty()
                                 ? TrajectoryPoint{t0, mass0, 0, 0, 0, 0, false}
                                 : traj.points.back();
      throw evolve_abort(invariant_error(name, t_now, value, tol), last);
    };
    if (!std::isfinite(p.mass) || !std::isfinite(p.linf))
      fail("finite samples", std::numeric_limits<double>::quiet_NaN(), 0);
    double drift = mass0 > 0 ? std::abs(p.mass - mass0) / mass0 : 0.0;
    if (!(drift <= opts.mass_drift_tol))
      fail("mass drift", drift, opts.mass_drift_tol);
    if (!(p.boundary_fraction <= opts.boundary_mass_tol))
      fail("boundary mass", p.boundary_fraction, opts.boundary_mass_tol);

    traj.points.push_back(p);
    for (const Observer& ob : observers)
      ob(cur);
    (void)is_final;
  };

  std::vector<cplx> half = kinetic_multiplier(cur.field.grid, dt / 2);
  std::size_t next_cp = 0;

  if (next_cp < cp_steps.size() && cp_steps[next_cp] == 0) {
    checkpoint(t0, false);
    ++next_cp;
  }

  for (long s = 1; s <= total_steps; ++s) {
    double t_before = t0 + (s - 1) * dt;
    kinetic_step(cur.field, half);
    gauge_step(cur.field, cur.nonlinearity,
               gauge_coefficient(cur.frame, t_before, dt));
    kinetic_step(cur.field, half);
    cur.time = t0 + s * dt;
    for (const Observer& ob : step_observers)
      ob(cur);
    if (next_cp < cp_steps.size() && cp_steps[next_cp] == s) {
      checkpoint(cur.time, false);
      ++next_cp;
    }
  }

  bool at_end_already = remainder == 0 && !traj.points.empty() &&
                        traj.points.back().t == t0 + total_steps * dt;
  if (remainder > 0) {
    std::vector<cplx> part = kinetic_multiplier(cur.field.grid, remainder / 2);
    double t_before = t0 + total_steps * dt;
    kinetic_step(cur.field, part);
    gauge_step(cur.field, cur.nonlinearity,
               gauge_coefficient(cur.frame, t_before, remainder));
    kinetic_step(cur.field, part);
    cur.time = t_end;
    for (const Observer& ob : step_observers)
      ob(cur);
  }
  if (!at_end_already)
    checkpoint(t_end, true);

  traj.final_state = std::move(cur);
  traj.final_state.time = t_end;
  return traj;
}

std::pair<ComplexField, double> pseudoconformal_map(const ComplexField& u,
                                                    double t,
                                                    double tail_tol) {
  require_space(u, Space::physical, "pseudoconformal_map");
  if (!(t >= 0))
    throw std::invalid_argument("pseudoconformal_map: t >= 0 required");
  double tau = t / (1.0 + t);
  ComplexField v = resample_scaled(u, 1.0 + t, tail_tol);
  kernels::scale(v.values, std::pow(1.0 + t, 0.5 * u.grid.dim));
  v = modulate(v, -1.0 / (1.0 + t));
  return {std::move(v), tau};
}

std::pair<ComplexField, double> pseudoconformal_inverse(const ComplexField& v,
                                                        double tau,
                                                        double tail_tol) {
  require_space(v, Space::physical, "pseudoconformal_inverse");
  if (!(tau >= 0) || tau >= 1)
    throw std::invalid_argument("pseudoconformal_inverse: tau in [0, 1)");
  double t = tau / (1.0 - tau);
  ComplexField u = resample_scaled(v, 1.0 / (1.0 + t), tail_tol);
  kernels::scale(u.values, std::pow(1.0 + t, -0.5 * v.grid.dim));
  u = modulate(u, 1.0 + t);
  return {std::move(u), t};
}

Trajectory evolve_pseudoconformal(const ComplexField& v0,
                                  const Nonlinearity& nl, double tau_end,
                                  double dt,
                                  std::vector<double> checkpoint_times,
                                  const std::vector<Observer>& observers,
                                  const MonitorOptions& opts, double eps_min,
                                  const std::vector<Observer>& step_observers) {
  if (!(tau_end <= 1.0 - eps_min))
    throw std::invalid_argument(
        "evolve_pseudoconformal: tau_end too close to 1");
  SolverState st;
  st.field = v0;
  st.time = 0;
  st.frame = Frame::pseudoconformal;
  st.nonlinearity = nl;
  st.dt = dt;
  return evolve(st, tau_end, std::move(checkpoint_times), observers, opts,
                step_observers);
}

namespace {

template <class T> void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T> T take(std::ifstream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

} // namespace

void write_snapshot(const std::string& path, const SolverState& state) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("write_snapshot: cannot open " + path);
  const Grid& g = state.field.grid;
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.dim));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n));
  put<double>(os, g.half_width);
  put<double>(os, state.time);
  put<std::uint32_t>(os, state.frame == Frame::direct ? 0u : 1u);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(state.nonlinearity.kind));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(state.nonlinearity.n));
  put<std::uint32_t>(os, 0u);
  for (const cplx& z : state.field.values) {
    put<double>(os, z.real());
    put<double>(os, z.imag());
  }
  if (!os)
    throw std::runtime_error("write_snapshot: write failed for " + path);
}

SolverState read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw std::runtime_error("read_snapshot: cannot open " + path);
  auto dim = take<std::uint32_t>(is);
  auto n = take<std::uint32_t>(is);
  auto L = take<double>(is);
  auto time = take<double>(is);
  auto frame = take<std::uint32_t>(is);
  auto kind = take<std::uint32_t>(is);
  auto nl_n = take<std::uint32_t>(is);
  take<std::uint32_t>(is); // reserved
  if (!is)
    throw std::runtime_error("read_snapshot: truncated header in " + path);
  SolverState st;
  st.field = make_field(make_grid(static_cast<int>(dim), static_cast<int>(n), L));
  st.time = time;
  st.frame = frame == 0 ? Frame::direct : Frame::pseudoconformal;
  st.nonlinearity.kind = static_cast<Nonlinearity::Kind>(kind);
  st.nonlinearity.n = static_cast<int>(nl_n);
  for (cplx& z : st.field.values) {
    double re = take<double>(is);
    double im = take<double>(is);
    z = cplx(re, im);
  }
  if (!is)
    throw std::runtime_error("read_snapshot: truncated samples in " + path);
  return st;
}

} // namespace modscat
