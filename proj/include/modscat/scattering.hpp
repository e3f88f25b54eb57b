#pragma once

#include "modscat/grid.hpp"
#include "modscat/nonlinearity.hpp"

#include <optional>
#include <vector>

// Diagnostics for the modified-scattering limit: the accumulated nonlinear
// phase on the fixed frequency lattice, the phase-corrected profile
//   v(t) = F^{-1} e^{i phi(t)} F M(t) U(-t) u(t),
// Cauchy gaps between checkpoint profiles, the dyadic weak norm, and the
// pair bound the gaps are tested against.
//
// The phase integrand lives on the fixed frequency lattice: with
// W(t) = F M(t) U(-t) u(t) one has |u(tau, tau y)| = tau^{-dim/2} |W(tau)(y)|,
// so the integrand of int_1^t |u(tau, tau y)|^{2/n} dtau is
// tau^{-1} |W(tau)(y)|^{2/n} for the critical power (and the saturated
// analogue below) and no interpolation is ever needed.

namespace modscat {

enum class PhaseSign { plus, minus, off };

PhaseSign parse_phase_sign(const std::string& s);
std::string phase_sign_name(PhaseSign s);

/// Trapezoid accumulator for the modified phase and for
/// H(t) = int_1^t tau^{-2} ||J(tau) u||^2 dtau. Node spacing is the
/// checkpoint spacing; the first update at tau = 1 primes the integrand.
/// Single writer.
class PhaseAccumulator {
public:
  PhaseAccumulator(const Grid& grid, const Nonlinearity& nl);

  /// Accumulate with the profile W(tau) sampled on the frequency lattice.
  void phase_update(const ComplexField& w_profile, double tau);

  /// Accumulate H with ||J(tau)u(tau)||^2 given directly.
  void h_update_value(double j_norm_sq, double tau);

  /// Accumulate H from the solution snapshot (computes the J norm).
  void h_update(const ComplexField& u, double tau);

  const std::vector<double>& phase() const { return phi_; }
  double h_running() const { return h_; }
  double last_phase_time() const { return tau_phase_; }
  double last_h_time() const { return tau_h_; }
  const Grid& grid() const { return grid_; }
  const Nonlinearity& nonlinearity() const { return nl_; }

private:
  Grid grid_;
  Nonlinearity nl_;
  std::vector<double> phi_;
  std::vector<double> prev_integrand_;
  bool phase_primed_ = false;
  double tau_phase_ = 0;
  double h_ = 0;
  double prev_h_integrand_ = 0;
  bool h_primed_ = false;
  double tau_h_ = 0;
};

/// v(t) = F^{-1} e^{s phi} F M(t) U(-t) u(t) with s in {+1, -1, 0}.
/// The accumulator must be current at t within time_tol.
ComplexField modified_profile(const ComplexField& u, double t,
                              const PhaseAccumulator& acc, PhaseSign sign,
                              double time_tol);

/// ||a - b||_L2 on a shared grid.
double cauchy_gap(const ComplexField& a, const ComplexField& b);

struct TailBound {
  double pair_bound = 0;  // for the gap between times s < t
  double limit_bound = 0; // for the gap to the limit, using H_limit
};

/// Right-hand side of the pair estimate
///   (1/s - 1/t)^{1/2} (H(t)-H(s))^{1/2} ||grad F phi||
///   + (H(t)-H(s))^{1/2} H(t)^{1/2} ||F phi||_inf
/// (up to its implicit constant; callers report observed/bound ratios).
/// limit_bound evaluates the same shape against H_limit at t.
TailBound tail_bound(double h_at_s, double h_at_t, double h_limit_est,
                     double s, double t, double grad_f_phi_norm,
                     double sup_f_phi);

/// Dyadic weak norm: max over the block |x| < 1 (weight 1) and the shells
/// 2^j <= |x| < 2^{j+1} (weight 2^{s_index j}) of the weighted L2 mass,
/// sharp cutoffs. For s_index <= 0 this never exceeds the L2 norm.
double besov_weak_norm(const ComplexField& f, double s_index);

/// (grad(v_t - u_plus) | grad test) in the L2 inner product (f|g) =
/// int f conj(g), spectral gradients.
cplx weak_h1_pairing(const ComplexField& v_t, const ComplexField& u_plus,
                     const ComplexField& test_field);

/// Profile snapshots at (dyadic) checkpoint times plus the running H values;
/// the post-run analysis queries pairwise gaps and extracts the final state.
class ConvergenceLedger {
public:
  void add(double t, ComplexField v, double h_at_t);

  std::size_t size() const { return entries_.size(); }
  double time(std::size_t i) const { return entries_[i].t; }
  const ComplexField& profile(std::size_t i) const { return entries_[i].v; }
  double h_at(std::size_t i) const { return entries_[i].h; }

  double l2_gap(std::size_t i, std::size_t j) const;
  double weak_gap(std::size_t i, std::size_t j, double s_index) const;

private:
  struct Entry {
    double t;
    ComplexField v;
    double h;
  };
  std::vector<Entry> entries_;
};

struct FinalState {
  ComplexField u_plus;   // profile at the last checkpoint
  double achieved_gap;   // sup over late checkpoints of ||v(t) - v(T)||
  bool gaps_nonincreasing; // dyadic-pair gap sequence monotone flag
  std::vector<double> dyadic_gaps; // consecutive-pair gaps in time order
};

/// Estimate the limit from the ledger (>= 3 checkpoints past t = 1).
/// "Late" checkpoints are those with t >= T_max / 4.
FinalState extract_final_state(const ConvergenceLedger& ledger);

} // namespace modscat
