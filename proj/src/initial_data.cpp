#include "modscat/initial_data.hpp"

#include "modscat/fourier.hpp"
#include "modscat/norms.hpp"

#include <cmath>
#include <random>

namespace modscat {

namespace {

ComplexField gaussian_data(const InitialDataSpec& spec, const Grid& g) {
  double a = spec.param("amplitude", 1.0);
  double w = spec.param("width", 1.0);
  double c = spec.param("center", 0.0);
  double k = spec.param("momentum", 0.0);
  if (!(w > 0))
    throw std::invalid_argument("initial_data: width must be positive");
  ComplexField f = make_field(g);
  if (g.dim == 1) {
    for (int i = 0; i < g.n; ++i) {
      double x = g.coord(i);
      f.values[i] = a * std::exp(-(x - c) * (x - c) / (2 * w * w)) *
                    std::polar(1.0, k * x);
    }
  } else {
    for (int ia = 0; ia < g.n; ++ia)
      for (int ib = 0; ib < g.n; ++ib) {
        double x = g.coord(ia), y = g.coord(ib);
        double r2 = (x - c) * (x - c) + (y - c) * (y - c);
        f.values[static_cast<std::size_t>(ia) * g.n + ib] =
            a * std::exp(-r2 / (2 * w * w)) * std::polar(1.0, k * (x + y));
      }
  }
  return f;
}

ComplexField radial_gaussian_2d(const InitialDataSpec& spec, const Grid& g) {
  if (g.dim != 2)
    throw std::invalid_argument("initial_data: radial_gaussian_2d needs a 2D grid");
  double a = spec.param("amplitude", 1.0);
  double w = spec.param("width", 1.0);
  ComplexField f = make_field(g);
  for (int ia = 0; ia < g.n; ++ia)
    for (int ib = 0; ib < g.n; ++ib) {
      double x = g.coord(ia), y = g.coord(ib);
      f.values[static_cast<std::size_t>(ia) * g.n + ib] =
          a * std::exp(-(x * x + y * y) / (2 * w * w));
    }
  return f;
}

ComplexField random_h11(const InitialDataSpec& spec, const Grid& g) {
  double a = spec.param("amplitude", 1.0);
  double corr = spec.param("correlation_length", 1.0);
  double env = spec.param("envelope_width", g.half_width / 6.0);
  if (!(corr > 0) || !(env > 0))
    throw std::invalid_argument("initial_data: random_h11 lengths must be positive");

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  ComplexField spec_field = make_field(g, Space::frequency);
  if (g.dim == 1) {
    for (int k = 0; k < g.n; ++k) {
      double xi = g.freq(k);
      spec_field.values[k] = cplx(nd(rng), nd(rng)) *
                             std::exp(-xi * xi * corr * corr / 2);
    }
  } else {
    for (int ka = 0; ka < g.n; ++ka)
      for (int kb = 0; kb < g.n; ++kb) {
        double r2 = g.freq(ka) * g.freq(ka) + g.freq(kb) * g.freq(kb);
        spec_field.values[static_cast<std::size_t>(ka) * g.n + kb] =
            cplx(nd(rng), nd(rng)) * std::exp(-r2 * corr * corr / 2);
      }
  }
  ComplexField f = inverse_fourier(spec_field);
  if (g.dim == 1) {
    for (int i = 0; i < g.n; ++i) {
      double x = g.coord(i);
      f.values[i] *= std::exp(-x * x / (2 * env * env));
    }
  } else {
    for (int ia = 0; ia < g.n; ++ia)
      for (int ib = 0; ib < g.n; ++ib) {
        double r2 = g.coord(ia) * g.coord(ia) + g.coord(ib) * g.coord(ib);
        f.values[static_cast<std::size_t>(ia) * g.n + ib] *=
            std::exp(-r2 / (2 * env * env));
      }
  }
  double peak = linf_norm(f);
  if (peak > 0) {
    double s = a / peak;
    for (auto& z : f.values)
      z *= s;
  }
  return f;
}

} // namespace

ComplexField initial_data(const InitialDataSpec& spec, const Grid& grid) {
  if (spec.name == "gaussian")
    return gaussian_data(spec, grid);
  if (spec.name == "radial_gaussian_2d")
    return radial_gaussian_2d(spec, grid);
  if (spec.name == "random_h11")
    return random_h11(spec, grid);
  throw std::invalid_argument("initial_data: unknown spec name " + spec.name);
}

} // namespace modscat
