#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace modscat {

/// Gauge-invariant nonlinearity u * g(|u|^2). The critical power has
/// g(r2) = r2^{1/n} (n = 1, 2); the saturated variant used for n >= 3 has
/// g(r2) = (1 + r2)^{1/n} - 1. Kind none turns the nonlinear term off
/// (linear control runs).
struct Nonlinearity {
  enum class Kind { none, power, saturated };
  Kind kind = Kind::power;
  int n = 1;

  double g(double r2) const {
    switch (kind) {
    case Kind::none:
      return 0.0;
    case Kind::power:
      return n == 1 ? r2 : std::sqrt(r2);
    case Kind::saturated:
      // expm1/log1p keep the small-|z| branch accurate
      return std::expm1(std::log1p(r2) / n);
    }
    return 0.0;
  }

  void validate() const {
    if (kind == Kind::power && n != 1 && n != 2)
      throw std::invalid_argument("power nonlinearity admits n in {1, 2}");
    if (kind == Kind::saturated && n < 3)
      throw std::invalid_argument("saturated nonlinearity requires n >= 3");
    if (n < 1)
      throw std::invalid_argument("nonlinearity parameter n must be >= 1");
  }

  std::string kind_name() const {
    switch (kind) {
    case Kind::none:
      return "none";
    case Kind::power:
      return "power";
    case Kind::saturated:
      return "saturated";
    }
    return "?";
  }

  static Nonlinearity parse(const std::string& kind, int n) {
    Nonlinearity nl;
    nl.n = n;
    if (kind == "none")
      nl.kind = Kind::none;
    else if (kind == "power")
      nl.kind = Kind::power;
    else if (kind == "saturated")
      nl.kind = Kind::saturated;
    else
      throw std::invalid_argument("unknown nonlinearity kind: " + kind);
    nl.validate();
    return nl;
  }

  bool operator==(const Nonlinearity&) const = default;
};

} // namespace modscat
