#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace modscat {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Which variable a field is sampled in. Physical fields live on the x-lattice,
/// frequency fields on the dual xi-lattice.
enum class Space { physical, frequency };

/// Uniform periodic lattice over [-L, L)^dim together with its dual lattice.
/// Coordinates are centered, x_i = (i - n/2) * dx, so the lattice is exactly
/// symmetric under reflection (up to the single point at -L).
struct Grid {
  int dim = 1;           // 1 or 2
  int n = 0;             // points per dimension, power of two >= 16
  double half_width = 0; // L
  double dx = 0;         // 2L/n
  double dxi = 0;        // pi/L

  std::size_t size() const {
    return dim == 1 ? static_cast<std::size_t>(n)
                    : static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  }
  double coord(int i) const { return (i - n / 2) * dx; }
  double freq(int k) const { return (k - n / 2) * dxi; }
  double freq_max() const { return (n / 2) * dxi; }

  bool operator==(const Grid& o) const {
    return dim == o.dim && n == o.n && half_width == o.half_width;
  }
};

/// Complex samples of a function on a Grid, tagged by which space they live in.
struct ComplexField {
  Grid grid;
  Space space = Space::physical;
  std::vector<cplx> values;
};

Grid make_grid(int dim, int points_per_dim, double half_width);

ComplexField make_field(const Grid& grid, Space space = Space::physical);

/// Thrown when a runtime invariant of an evolution breaks (mass drift,
/// boundary mass, non-finite samples). Carries the name of the failed
/// invariant and the time of the last good state.
class invariant_error : public std::runtime_error {
public:
  invariant_error(std::string invariant, double time, double value,
                  double threshold)
      : std::runtime_error("invariant '" + invariant + "' violated at t=" +
                           std::to_string(time) + ": " + std::to_string(value) +
                           " exceeds " + std::to_string(threshold)),
        invariant_name(std::move(invariant)), time(time), value(value),
        threshold(threshold) {}
  std::string invariant_name;
  double time;
  double value;
  double threshold;
};

bool all_finite(const ComplexField& f);

/// Throws invariant_error if any sample is NaN/Inf.
void require_finite(const ComplexField& f, const char* where, double time = 0);

void require_same_grid(const ComplexField& a, const ComplexField& b,
                       const char* where);

void require_space(const ComplexField& f, Space expected, const char* where);

} // namespace modscat
