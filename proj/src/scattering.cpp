#include "modscat/scattering.hpp"

#include "modscat/fourier.hpp"
#include "modscat/kernels.hpp"
#include "modscat/norms.hpp"
#include "modscat/operators.hpp"

#include <algorithm>
#include <cmath>

namespace modscat {

PhaseSign parse_phase_sign(const std::string& s) {
  if (s == "plus" || s == "+")
    return PhaseSign::plus;
  if (s == "minus" || s == "-")
    return PhaseSign::minus;
  if (s == "off")
    return PhaseSign::off;
  throw std::invalid_argument("unknown phase sign: " + s);
}

std::string phase_sign_name(PhaseSign s) {
  switch (s) {
  case PhaseSign::plus:
    return "plus";
  case PhaseSign::minus:
    return "minus";
  case PhaseSign::off:
    return "off";
  }
  return "?";
}

PhaseAccumulator::PhaseAccumulator(const Grid& grid, const Nonlinearity& nl)
    : grid_(grid), nl_(nl), phi_(grid.size(), 0.0),
      prev_integrand_(grid.size(), 0.0) {
  nl.validate();
}

void PhaseAccumulator::phase_update(const ComplexField& w_profile,
                                    double tau) {
  require_space(w_profile, Space::frequency, "phase_update");
  if (!(w_profile.grid == grid_))
    throw std::invalid_argument("phase_update: grid mismatch");
  if (!(tau >= 1))
    throw std::invalid_argument("phase_update: tau >= 1 required");
  if (phase_primed_ && tau < tau_phase_)
    throw std::invalid_argument("phase_update: tau went backwards");

  // integrand on the fixed lattice: tau^{-1} |W|^{2/n} for the critical
  // power, (1 + tau^{-n} |W|^2)^{1/n} - 1 for the saturated kind
  std::vector<double> cur(w_profile.values.size());
  const int n = nl_.n;
  if (nl_.kind == Nonlinearity::Kind::saturated) {
    double tpow = std::pow(tau, -static_cast<double>(n));
    for (std::size_t i = 0; i < cur.size(); ++i)
      cur[i] = std::expm1(std::log1p(tpow * std::norm(w_profile.values[i])) /
                          n);
  } else if (nl_.kind == Nonlinearity::Kind::power) {
    for (std::size_t i = 0; i < cur.size(); ++i) {
      double r2 = std::norm(w_profile.values[i]);
      cur[i] = (n == 1 ? r2 : std::sqrt(r2)) / tau;
    }
  } // kind none leaves the integrand zero

  if (phase_primed_ && tau > tau_phase_) {
    double half = 0.5 * (tau - tau_phase_);
    for (std::size_t i = 0; i < phi_.size(); ++i)
      phi_[i] += half * (prev_integrand_[i] + cur[i]);
  }
  prev_integrand_ = std::move(cur);
  tau_phase_ = tau;
  phase_primed_ = true;
}

void PhaseAccumulator::h_update_value(double j_norm_sq, double tau) {
  if (!(tau >= 1))
    throw std::invalid_argument("h_update: tau >= 1 required");
  if (h_primed_ && tau < tau_h_)
    throw std::invalid_argument("h_update: tau went backwards");
  double cur = j_norm_sq / (tau * tau);
  if (h_primed_ && tau > tau_h_)
    h_ += 0.5 * (tau - tau_h_) * (prev_h_integrand_ + cur);
  prev_h_integrand_ = cur;
  tau_h_ = tau;
  h_primed_ = true;
}

void PhaseAccumulator::h_update(const ComplexField& u, double tau) {
  double jn = galilean_norm(u, tau);
  h_update_value(jn * jn, tau);
}

ComplexField modified_profile(const ComplexField& u, double t,
                              const PhaseAccumulator& acc, PhaseSign sign,
                              double time_tol) {
  if (!(t >= 1))
    throw std::invalid_argument("modified_profile: t >= 1 required");
  if (sign != PhaseSign::off &&
      std::abs(acc.last_phase_time() - t) > time_tol)
    throw std::invalid_argument(
        "modified_profile: accumulator time mismatch beyond tolerance");
  ComplexField w = scattering_profile(u, t);
  if (sign == PhaseSign::plus)
    kernels::phase_rotate(w.values, acc.phase(), 1.0);
  else if (sign == PhaseSign::minus)
    kernels::phase_rotate(w.values, acc.phase(), -1.0);
  return inverse_fourier(w);
}

double cauchy_gap(const ComplexField& a, const ComplexField& b) {
  require_same_grid(a, b, "cauchy_gap");
  if (a.space != b.space)
    throw std::invalid_argument("cauchy_gap: space mismatch");
  ComplexField d = a;
  for (std::size_t i = 0; i < d.values.size(); ++i)
    d.values[i] -= b.values[i];
  return l2_norm(d);
}

TailBound tail_bound(double h_at_s, double h_at_t, double h_limit_est,
                     double s, double t, double grad_f_phi_norm,
                     double sup_f_phi) {
  if (t < s)
    throw std::invalid_argument("tail_bound: t >= s required");
  if (!(s >= 1))
    throw std::invalid_argument("tail_bound: s >= 1 required");
  TailBound b;
  double dh = std::max(h_at_t - h_at_s, 0.0);
  b.pair_bound = std::sqrt(std::max(1.0 / s - 1.0 / t, 0.0)) * std::sqrt(dh) *
                     grad_f_phi_norm +
                 std::sqrt(dh) * std::sqrt(std::max(h_at_t, 0.0)) * sup_f_phi;
  double dh_lim = std::max(h_limit_est - h_at_t, 0.0);
  b.limit_bound = std::sqrt(1.0 / t) * std::sqrt(dh_lim) * grad_f_phi_norm +
                  std::sqrt(dh_lim) * std::sqrt(std::max(h_at_t, 0.0)) *
                      sup_f_phi;
  return b;
}

double besov_weak_norm(const ComplexField& f, double s_index) {
  require_space(f, Space::physical, "besov_weak_norm");
  const Grid& g = f.grid;
  // shell index from the squared radius: j = floor(log2 |x|), block j < 0
  const int max_shells = 64;
  std::vector<double> shell_mass(max_shells, 0.0);
  double block_mass = 0;
  auto accumulate = [&](double r2, double w) {
    if (r2 < 1.0) {
      block_mass += w;
      return;
    }
    int e = std::ilogb(r2);
    int j = e >= 0 ? e / 2 : -((-e + 1) / 2);
    if (j < 0) {
      block_mass += w;
      return;
    }
    shell_mass[std::min(j, max_shells - 1)] += w;
  };
  if (g.dim == 1) {
    for (int i = 0; i < g.n; ++i) {
      double x = g.coord(i);
      accumulate(x * x, std::norm(f.values[i]));
    }
  } else {
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b) {
        double xa = g.coord(a), xb = g.coord(b);
        accumulate(xa * xa + xb * xb,
                   std::norm(f.values[static_cast<std::size_t>(a) * g.n + b]));
      }
  }
  double vol = volume_element(g, f.space);
  double best = std::sqrt(block_mass * vol);
  for (int j = 0; j < max_shells; ++j) {
    if (shell_mass[j] == 0)
      continue;
    double w = std::exp2(s_index * j);
    best = std::max(best, w * std::sqrt(shell_mass[j] * vol));
  }
  return best;
}

cplx weak_h1_pairing(const ComplexField& v_t, const ComplexField& u_plus,
                     const ComplexField& test_field) {
  require_same_grid(v_t, u_plus, "weak_h1_pairing");
  require_same_grid(v_t, test_field, "weak_h1_pairing");
  ComplexField diff = v_t;
  for (std::size_t i = 0; i < diff.values.size(); ++i)
    diff.values[i] -= u_plus.values[i];
  cplx total(0, 0);
  for (int axis = 0; axis < v_t.grid.dim; ++axis) {
    ComplexField gd = spectral_gradient(diff, axis);
    ComplexField gt = spectral_gradient(test_field, axis);
    total += kernels::inner(gd.values, gt.values);
  }
  return total * volume_element(v_t.grid, Space::physical);
}

void ConvergenceLedger::add(double t, ComplexField v, double h_at_t) {
  if (!entries_.empty()) {
    if (t <= entries_.back().t)
      throw std::invalid_argument("ConvergenceLedger: times must increase");
    if (!(v.grid == entries_.back().v.grid))
      throw std::invalid_argument("ConvergenceLedger: grid changed");
  }
  entries_.push_back({t, std::move(v), h_at_t});
}

double ConvergenceLedger::l2_gap(std::size_t i, std::size_t j) const {
  return cauchy_gap(entries_[i].v, entries_[j].v);
}

double ConvergenceLedger::weak_gap(std::size_t i, std::size_t j,
                                   double s_index) const {
  ComplexField d = entries_[i].v;
  for (std::size_t k = 0; k < d.values.size(); ++k)
    d.values[k] -= entries_[j].v.values[k];
  return besov_weak_norm(d, s_index);
}

FinalState extract_final_state(const ConvergenceLedger& ledger) {
  std::size_t past_one = 0;
  for (std::size_t i = 0; i < ledger.size(); ++i)
    if (ledger.time(i) > 1.0)
      ++past_one;
  if (past_one < 3)
    throw std::invalid_argument(
        "extract_final_state: need at least 3 checkpoints past t = 1");

  const std::size_t last = ledger.size() - 1;
  const double t_max = ledger.time(last);

  FinalState fs;
  fs.u_plus = ledger.profile(last);
  fs.achieved_gap = 0;
  for (std::size_t i = 0; i < last; ++i)
    if (ledger.time(i) >= t_max / 4)
      fs.achieved_gap = std::max(fs.achieved_gap, ledger.l2_gap(i, last));

  for (std::size_t i = 0; i + 1 < ledger.size(); ++i)
    fs.dyadic_gaps.push_back(ledger.l2_gap(i, i + 1));
  fs.gaps_nonincreasing = true;
  for (std::size_t i = 1; i < fs.dyadic_gaps.size(); ++i)
    if (fs.dyadic_gaps[i] > fs.dyadic_gaps[i - 1])
      fs.gaps_nonincreasing = false;
  return fs;
}

} // namespace modscat
