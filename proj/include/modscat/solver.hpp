#pragma once

#include "modscat/grid.hpp"
#include "modscat/nonlinearity.hpp"

#include <functional>
#include <vector>

// Strang split-step integration of
//   i u_t + (1/2) Laplacian u = u g(|u|^2)            (direct frame)
//   i v_tau + (1/2) Laplacian v = v g(|v|^2) / (1-tau) (pseudoconformal frame)
// The kinetic half-steps are exact frequency multipliers; the gauge substep
// rotates the phase by the exactly integrated coefficient, so |u| and the
// mass are preserved per substep up to rounding.

namespace modscat {

enum class Frame { direct, pseudoconformal };

struct SolverState {
  ComplexField field;
  double time = 0;
  Frame frame = Frame::direct;
  Nonlinearity nonlinearity;
  double dt = 1e-3;
};

/// Exact gauge substep over [state.time, state.time + dt]; the tau-frame
/// coefficient integrates to log((1-tau)/(1-tau-dt)).
SolverState nonlinear_substep(const SolverState& state, double dt);

/// Half kinetic, full gauge substep, half kinetic.
SolverState strang_step(const SolverState& state, double dt);

struct MonitorOptions {
  double mass_drift_tol = 1e-9;
  /// outermost sup-norm shell as a fraction of the half-width
  double boundary_shell_fraction = 1.0 / 16.0;
  double boundary_mass_tol = 1e-3;
  /// top-octave energy fraction above which a run is flagged under-resolved
  double spectral_tail_tol = 1e-6;
};

struct TrajectoryPoint {
  double t = 0;
  double mass = 0;
  double energy = 0;
  double linf = 0;
  double boundary_fraction = 0;
  double tail_fraction = 0;
  bool under_resolved = false;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  SolverState final_state;
};

/// Thrown when a monitored invariant breaks mid-run; carries the last good
/// checkpoint record.
class evolve_abort : public invariant_error {
public:
  evolve_abort(const invariant_error& e, TrajectoryPoint last)
      : invariant_error(e), last_good(last) {}
  TrajectoryPoint last_good;
};

using Observer = std::function<void(const SolverState&)>;

/// March from state.time to t_end with fixed step state.dt (final partial
/// step if needed). Checkpoints are snapped to the nearest step boundary
/// (within dt/2 by construction); observers fire at each checkpoint and at
/// t_end with the current immutable state. Mass drift and boundary mass are
/// hard aborts; the spectral tail only flags. step_observers fire after
/// every step (history integrals whose quadrature error must shrink with dt
/// hook in here).
Trajectory evolve(const SolverState& state, double t_end,
                  std::vector<double> checkpoint_times,
                  const std::vector<Observer>& observers = {},
                  const MonitorOptions& opts = {},
                  const std::vector<Observer>& step_observers = {});

/// Map a direct-frame snapshot u(t) to the compactified frame:
/// tau = t/(1+t), v(xi) = (1+t)^{dim/2} u(t, (1+t) xi) e^{-i xi^2 (1+t)/2}.
std::pair<ComplexField, double> pseudoconformal_map(const ComplexField& u,
                                                    double t,
                                                    double tail_tol = 1e-8);

/// Inverse map; t = tau/(1-tau).
std::pair<ComplexField, double> pseudoconformal_inverse(const ComplexField& v,
                                                        double tau,
                                                        double tail_tol = 1e-8);

/// tau-frame evolution of v0 up to tau_end (must stay eps_min away from the
/// blow-down time tau = 1).
Trajectory evolve_pseudoconformal(const ComplexField& v0,
                                  const Nonlinearity& nl, double tau_end,
                                  double dt,
                                  std::vector<double> checkpoint_times = {},
                                  const std::vector<Observer>& observers = {},
                                  const MonitorOptions& opts = {},
                                  double eps_min = 1e-3,
                                  const std::vector<Observer>& step_observers = {});

// ---- checkpoint snapshot files ----
// Flat little-endian layout, all integers unsigned 32-bit, floats IEEE f64:
//   [0]  u32 dim, u32 n, f64 half_width, f64 time,
//   [24] u32 frame (0 direct, 1 pseudoconformal),
//   [28] u32 nonlinearity kind (0 none, 1 power, 2 saturated),
//   [32] u32 nonlinearity n, u32 reserved (0),
//   [40] n^dim pairs of f64 (re, im), row-major (index = a*n + b in 2D).

void write_snapshot(const std::string& path, const SolverState& state);
SolverState read_snapshot(const std::string& path);

} // namespace modscat
