#include "modscat/conservation.hpp"

#include "modscat/kernels.hpp"
#include "modscat/norms.hpp"
#include "modscat/operators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace modscat {

double mass(const ComplexField& u) {
  double n2 = l2_norm(u);
  return 0.5 * n2 * n2;
}

double energy(const ComplexField& u, const Nonlinearity& nl) {
  double g = grad_l2_norm(u);
  double kin = 0.5 * g * g;
  switch (nl.kind) {
  case Nonlinearity::Kind::none:
    return kin;
  case Nonlinearity::Kind::power: {
    double p = 2.0 + 2.0 / nl.n;
    double lp = lp_norm(u, p);
    return kin + (static_cast<double>(nl.n) / (nl.n + 1)) * std::pow(lp, p);
  }
  case Nonlinearity::Kind::saturated: {
    double pot = 0;
    for (const cplx& z : u.values)
      pot += saturated_potential(z, nl.n);
    return kin + pot * volume_element(u.grid, u.space);
  }
  }
  return kin;
}

// (<z>^{2/n} - 1) computed as expm1(log1p(|z|^2)/n); exact to relative
// rounding even for |z| ~ 1e-6 where the naive form cancels.
static double bracket_pow_m1(double r2, double expnum, double expden) {
  return std::expm1(std::log1p(r2) * expnum / expden);
}

cplx saturated_term(cplx z, int n) {
  return bracket_pow_m1(std::norm(z), 1, n) * z;
}

double saturated_potential(cplx z, int n) {
  double r2 = std::norm(z);
  return (static_cast<double>(n) / (n + 1)) * bracket_pow_m1(r2, n + 1, n) -
         r2;
}

double saturated_virial(cplx z, int n) {
  double r2 = std::norm(z);
  // conj(z) f(z) = |z|^2 (<z>^{2/n} - 1), real
  return (n + 2) * saturated_potential(z, n) -
         n * r2 * bracket_pow_m1(r2, 1, n);
}

double saturated_virial_alt(cplx z, int n) {
  double r2 = std::norm(z);
  return saturated_potential(z, n) + n * bracket_pow_m1(r2, 1, n) - r2;
}

InequalityReport check_fvw_inequalities(int n, std::size_t sample_count,
                                        std::uint64_t seed) {
  if (n < 1)
    throw std::invalid_argument("check_fvw_inequalities: n >= 1");
  if (sample_count < 1)
    throw std::invalid_argument("check_fvw_inequalities: sample_count >= 1");

  constexpr double slack = 1e-12;
  constexpr std::size_t block = 8192;
  const std::size_t nb = (sample_count + block - 1) / block;

  struct BlockResult {
    std::size_t violations = 0;
    double worst = std::numeric_limits<double>::infinity();
    std::vector<cplx> witnesses;
  };
  std::vector<BlockResult> results(nb);

  const int nt = kernels::thread_cap();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nt) if (nt > 1)
#endif
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + b + 1);
    std::uniform_real_distribution<double> exp_dist(-6.0, 6.0);
    std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * pi);
    BlockResult& r = results[b];
    const std::size_t lo = static_cast<std::size_t>(b) * block;
    const std::size_t hi = std::min(lo + block, sample_count);
    for (std::size_t i = lo; i < hi; ++i) {
      cplx z = std::polar(std::pow(10.0, exp_dist(rng)), phase_dist(rng));
      double az = std::abs(z);
      double fa = std::abs(saturated_term(z, n));
      double v = saturated_potential(z, n);
      double w1 = saturated_virial(z, n);
      double w2 = saturated_virial_alt(z, n);

      double m1 = 2.0 * std::pow(az, 1.0 + 2.0 / n) - fa;
      double m2 = v; // V >= 0
      double m3 = 3.0 * std::pow(az, 2.0 + 2.0 / n) - v;
      double m4 = v - w1; // W <= V
      double wscale = std::max({1.0, std::abs(w1), std::abs(w2),
                                (n + 2) * std::abs(v)});
      double m5 = slack * wscale - std::abs(w1 - w2);
      double margin = std::min({m1, m2, m3, m4});
      r.worst = std::min(r.worst, margin);
      bool bad = margin < -slack || m5 < 0;
      if (bad) {
        ++r.violations;
        if (r.witnesses.size() < 8)
          r.witnesses.push_back(z);
      }
    }
  }

  InequalityReport rep;
  rep.name = "fvw";
  rep.samples = sample_count;
  rep.seed = seed;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (const BlockResult& r : results) {
    rep.violations += r.violations;
    rep.worst_margin = std::min(rep.worst_margin, r.worst);
    for (const cplx& w : r.witnesses)
      if (rep.witnesses.size() < 8)
        rep.witnesses.push_back(w);
  }
  return rep;
}

std::pair<double, double> hardy_check(std::span<const double> F, double s,
                                      double t) {
  if (!(s > 0) || !(t > s))
    throw std::invalid_argument("hardy_check: need 0 < s < t");
  if (F.size() < 2)
    throw std::invalid_argument("hardy_check: need at least two samples");
  for (double v : F)
    if (!(v >= 0))
      throw std::invalid_argument("hardy_check: F must be nonnegative");

  const std::size_t m = F.size();
  const double h = (t - s) / static_cast<double>(m - 1);

  // cumulative trapezoid G_i = int_s^{tau_i} F
  std::vector<double> G(m, 0.0);
  for (std::size_t i = 1; i < m; ++i)
    G[i] = G[i - 1] + 0.5 * h * (F[i - 1] + F[i]);

  double lhs = 0, rhs = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double tau = s + h * static_cast<double>(i);
    double wi = (i == 0 || i == m - 1) ? 0.5 : 1.0;
    lhs += wi * h * G[i] * G[i] / (tau * tau);
    rhs += wi * h * F[i] * F[i];
  }
  return {lhs, 4.0 * rhs};
}

double angular_variance(const ComplexField& f) {
  if (f.grid.dim != 2)
    throw std::invalid_argument("angular_variance: 2D fields only");
  const int n = f.grid.n, m = n / 2;
  // group lattice points by the integer squared radius (a^2 + b^2)
  std::map<long, std::pair<cplx, long>> bins; // sum, count
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      long ia = a - m, ib = b - m;
      long key = ia * ia + ib * ib;
      auto& [sum, cnt] = bins[key];
      sum += f.values[static_cast<std::size_t>(a) * n + b];
      ++cnt;
    }
  double var = 0, total = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      long ia = a - m, ib = b - m;
      const auto& [sum, cnt] = bins[ia * ia + ib * ib];
      cplx mean = sum / static_cast<double>(cnt);
      var += std::norm(f.values[static_cast<std::size_t>(a) * n + b] - mean);
      total += std::norm(f.values[static_cast<std::size_t>(a) * n + b]);
    }
  return total > 0 ? var / total : 0.0;
}

GnCheck gn_linf_bound_check(const ComplexField& f, double p, double radius) {
  require_space(f, Space::physical, "gn_linf_bound_check");
  if (p < 2)
    throw std::invalid_argument("gn_linf_bound_check: p >= 2");
  GnCheck out;
  double l2p2 = lp_norm(f, 2 * p - 2);
  if (f.grid.dim == 1) {
    double grad = grad_l2_norm(f);
    out.lhs = linf_norm(f);
    out.rhs = std::pow(p, 1.0 / p) * std::pow(l2p2, 1.0 - 1.0 / p) *
              std::pow(grad, 1.0 / p);
    return out;
  }
  if (angular_variance(f) >= 1e-8)
    throw std::invalid_argument(
        "gn_linf_bound_check: 2D field is not radially symmetric");
  if (!(radius > 0))
    throw std::invalid_argument("gn_linf_bound_check: radius > 0 required");
  const Grid& g = f.grid;
  int off = std::max(1, static_cast<int>(std::lround(radius / g.dx)));
  off = std::min(off, g.n / 2 - 1);
  double r = off * g.dx;
  cplx val = f.values[static_cast<std::size_t>(g.n / 2 + off) * g.n + g.n / 2];
  out.lhs = std::pow(std::abs(val), p);
  out.rhs = (p / r) * std::pow(l2p2, p - 1) * grad_l2_norm(f);
  return out;
}

PseudoconformalLedger::PseudoconformalLedger(const ComplexField& u0,
                                             const Nonlinearity& nl)
    : nl_(nl) {
  double j1 = galilean_norm(u0, 1.0);
  double pexp = 2.0 + 2.0 / nl.n;
  double pot = std::pow(lp_norm(u0, pexp), pexp);
  c0_ = j1 * j1 + (2.0 * nl.n / (nl.n + 1.0)) * pot;
  jnorm_ = j1;
  kinetic_ = j1 * j1;
  potential_ = (2.0 * nl.n / (nl.n + 1.0)) * pot;
  prev_integrand_ = j1 * j1; // (1+0)^{-2} ||J(1)u0||^2
  t_prev_ = 0;
}

void PseudoconformalLedger::update(const ComplexField& u, double t) {
  if (t < t_prev_)
    throw std::invalid_argument("PseudoconformalLedger: time went backwards");
  double jn = galilean_norm(u, 1.0 + t);
  double integrand = jn * jn / ((1.0 + t) * (1.0 + t));
  if (t > t_prev_)
    dissipation_ += 0.5 * (t - t_prev_) * (prev_integrand_ + integrand);
  prev_integrand_ = integrand;
  t_prev_ = t;
  jnorm_ = jn;
  kinetic_ = jn * jn / (1.0 + t);
  double pexp = 2.0 + 2.0 / nl_.n;
  potential_ = (2.0 * nl_.n / (nl_.n + 1.0)) * (1.0 + t) *
               std::pow(lp_norm(u, pexp), pexp);
}

double PseudoconformalLedger::residual() const {
  if (c0_ == 0)
    return 0.0;
  return std::abs(kinetic_ + potential_ + dissipation_ - c0_) / c0_;
}

double pseudoconformal_residual(const PseudoconformalLedger& ledger,
                                const ComplexField& u, double t) {
  (void)u;
  if (std::abs(ledger.last_time() - t) > 1e-9 * std::max(1.0, t))
    throw std::invalid_argument(
        "pseudoconformal_residual: ledger not updated through t");
  return ledger.residual();
}

VFrameEnergyLedger::VFrameEnergyLedger(const ComplexField& v0,
                                       const Nonlinearity& nl)
    : nl_(nl) {
  double g = grad_l2_norm(v0);
  double pexp = 2.0 + 2.0 / nl.n;
  c_star_ = g * g + (2.0 * nl.n / (nl.n + 1.0)) * std::pow(lp_norm(v0, pexp), pexp);
  prev_integrand_ = g * g;
  lhs_state_ = c_star_;
  tau_prev_ = 0;
}

void VFrameEnergyLedger::update(const ComplexField& v, double tau) {
  if (tau < tau_prev_)
    throw std::invalid_argument("VFrameEnergyLedger: time went backwards");
  double g = grad_l2_norm(v);
  double g2 = g * g;
  if (tau > tau_prev_)
    dissipation_ += 0.5 * (tau - tau_prev_) * (prev_integrand_ + g2);
  prev_integrand_ = g2;
  tau_prev_ = tau;
  double pexp = 2.0 + 2.0 / nl_.n;
  lhs_state_ = (1.0 - tau) * g2 +
               (2.0 * nl_.n / (nl_.n + 1.0)) * std::pow(lp_norm(v, pexp), pexp);
}

double VFrameEnergyLedger::residual() const {
  if (c_star_ == 0)
    return 0.0;
  return std::abs(lhs_state_ + dissipation_ - c_star_) / c_star_;
}

double v_frame_energy_residual(const ComplexField& v, double tau,
                               double running_dissipation, double c_star,
                               const Nonlinearity& nl) {
  if (!(tau >= 0) || tau >= 1)
    throw std::invalid_argument("v_frame_energy_residual: tau in [0, 1)");
  if (c_star == 0)
    return 0.0;
  double g = grad_l2_norm(v);
  double pexp = 2.0 + 2.0 / nl.n;
  double lhs = (1.0 - tau) * g * g +
               (2.0 * nl.n / (nl.n + 1.0)) * std::pow(lp_norm(v, pexp), pexp) +
               running_dissipation;
  return std::abs(lhs - c_star) / c_star;
}

} // namespace modscat
