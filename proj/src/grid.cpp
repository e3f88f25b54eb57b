#include "modscat/grid.hpp"

#include <cmath>

namespace modscat {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
} // namespace

Grid make_grid(int dim, int points_per_dim, double half_width) {
  if (dim != 1 && dim != 2)
    throw std::invalid_argument("make_grid: dim must be 1 or 2");
  if (!is_power_of_two(points_per_dim) || points_per_dim < 16)
    throw std::invalid_argument(
        "make_grid: points_per_dim must be a power of two >= 16");
  if (!(half_width > 0) || !std::isfinite(half_width))
    throw std::invalid_argument("make_grid: half_width must be positive");
  Grid g;
  g.dim = dim;
  g.n = points_per_dim;
  g.half_width = half_width;
  g.dx = 2.0 * half_width / points_per_dim;
  g.dxi = pi / half_width;
  return g;
}

ComplexField make_field(const Grid& grid, Space space) {
  ComplexField f;
  f.grid = grid;
  f.space = space;
  f.values.assign(grid.size(), cplx(0, 0));
  return f;
}

bool all_finite(const ComplexField& f) {
  for (const cplx& z : f.values)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      return false;
  return true;
}

void require_finite(const ComplexField& f, const char* where, double time) {
  if (!all_finite(f))
    throw invariant_error(std::string(where) + ": finite samples", time,
                          std::numeric_limits<double>::quiet_NaN(), 0.0);
}

void require_same_grid(const ComplexField& a, const ComplexField& b,
                       const char* where) {
  if (!(a.grid == b.grid))
    throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

void require_space(const ComplexField& f, Space expected, const char* where) {
  if (f.space != expected)
    throw std::invalid_argument(std::string(where) + ": field tagged " +
                                (f.space == Space::physical ? "physical"
                                                            : "frequency") +
                                ", expected " +
                                (expected == Space::physical ? "physical"
                                                             : "frequency"));
}

} // namespace modscat
