#pragma once

#include "modscat/grid.hpp"
#include "modscat/nonlinearity.hpp"

#include <cstdint>
#include <span>
#include <utility>

namespace modscat {

/// m(u) = (1/2) int |u|^2 dx.
double mass(const ComplexField& u);

/// Conserved energy of the flow: E = (1/2) ||grad u||^2 + P(u) with
/// P = n/(n+1) int |u|^{2+2/n} for the critical power and P = int V(u) for
/// the saturated kind (zero for linear runs).
double energy(const ComplexField& u, const Nonlinearity& nl);

// ---- saturated-nonlinearity algebra (pointwise; any n >= 1 accepted) ----

/// f(z) = (<z>^{2/n} - 1) z, the saturated nonlinear term.
cplx saturated_term(cplx z, int n);

/// V(z) = n/(n+1) (<z>^{2(n+1)/n} - 1) - |z|^2, its potential density.
double saturated_potential(cplx z, int n);

/// W(z) = (n+2) V(z) - n Re(conj(z) f(z)), the virial correction density.
double saturated_virial(cplx z, int n);

/// Equivalent form W = V + n(<z>^{2/n} - 1) - |z|^2, kept as a cross-check.
double saturated_virial_alt(cplx z, int n);

struct InequalityReport {
  std::string name;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_margin = 0; // min over samples of (bound - value); >= 0 is good
  std::uint64_t seed = 0;
  std::vector<cplx> witnesses; // first few violating z, if any
};

/// Samples z with log-uniform modulus in [1e-6, 1e6] and uniform phase and
/// checks |f| <= 2|z|^{1+2/n}, 0 <= V <= 3|z|^{2+2/n}, W <= V and the
/// agreement of the two W forms. Slack 1e-12 (absolute on the inequalities,
/// relative on the W agreement). Deterministic for a given seed regardless
/// of thread count: fixed sample blocks with per-block generators.
InequalityReport check_fvw_inequalities(int n, std::size_t sample_count,
                                        std::uint64_t seed);

/// Hardy-type quadrature check on a uniform lattice over [s, t]:
/// lhs = int_s^t tau^{-2} (int_s^tau F)^2 dtau, rhs = 4 int_s^t F^2.
/// F must be sampled nonnegative; 0 < s < t.
std::pair<double, double> hardy_check(std::span<const double> F, double s,
                                      double t);

/// Relative variance of a 2D field across lattice points of equal radius
/// (exactly equal x^2+y^2). Zero for radially symmetric samples.
double angular_variance(const ComplexField& f);

struct GnCheck {
  double lhs = 0;
  double rhs = 0;
};

/// Sup-norm interpolation bounds. 1D: ||f||_inf <= p^{1/p}
/// ||f||_{L^{2p-2}}^{1-1/p} ||f'||_{L2}^{1/p}. 2D (radial fields only):
/// |f(x)|^p <= (p/|x|) ||f||_{L^{2p-2}}^{p-1} ||grad f||_{L2} at the lattice
/// point closest to the requested radius.
GnCheck gn_linf_bound_check(const ComplexField& f, double p,
                            double radius = 1.0);

/// Running pieces of the pseudoconformal energy identity
///   (1+t)^{-1} ||J(1+t)u||^2 + (2n/(n+1)) (1+t) ||u||_{L^{2+2/n}}^{2+2/n}
///   + int_0^t (1+s)^{-2} ||J(1+s)u(s)||^2 ds  =  C0,
/// with C0 evaluated at t = 0 and the history integral by trapezoid over the
/// update times. Single writer; update at (weakly) increasing times.
class PseudoconformalLedger {
public:
  PseudoconformalLedger(const ComplexField& u0, const Nonlinearity& nl);

  void update(const ComplexField& u, double t);

  double c0() const { return c0_; }
  double dissipation() const { return dissipation_; }
  double last_time() const { return t_prev_; }
  double kinetic_term() const { return kinetic_; }
  double potential_term() const { return potential_; }
  /// kinetic + potential (the nonincreasing combination)
  double monotone_combination() const { return kinetic_ + potential_; }
  /// |kinetic + potential + dissipation - C0| / C0
  double residual() const;
  double j_norm() const { return jnorm_; }

private:
  Nonlinearity nl_;
  double c0_ = 0;
  double dissipation_ = 0;
  double t_prev_ = 0;
  double prev_integrand_ = 0;
  double kinetic_ = 0;
  double potential_ = 0;
  double jnorm_ = 0;
};

/// Spec-shaped wrapper: residual at time t from a ledger updated through t.
double pseudoconformal_residual(const PseudoconformalLedger& ledger,
                                const ComplexField& u, double t);

/// tau-frame energy identity of the transformed equation:
///   (1-tau) ||grad v||^2 + (2n/(n+1)) ||v||_{L^{2+2/n}}^{2+2/n}
///   + int_0^tau ||grad v||^2 dsigma = C*.
class VFrameEnergyLedger {
public:
  VFrameEnergyLedger(const ComplexField& v0, const Nonlinearity& nl);
  void update(const ComplexField& v, double tau);
  double c_star() const { return c_star_; }
  double dissipation() const { return dissipation_; }
  double residual() const;
  double last_time() const { return tau_prev_; }

private:
  Nonlinearity nl_;
  double c_star_ = 0;
  double dissipation_ = 0;
  double tau_prev_ = 0;
  double prev_integrand_ = 0;
  double lhs_state_ = 0;
};

/// Relative deviation of the tau-frame identity given the state terms at tau
/// and an externally maintained dissipation integral.
double v_frame_energy_residual(const ComplexField& v, double tau,
                               double running_dissipation, double c_star,
                               const Nonlinearity& nl);

} // namespace modscat
