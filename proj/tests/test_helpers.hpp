#pragma once

#include "modscat/fourier.hpp"
#include "modscat/grid.hpp"
#include "modscat/norms.hpp"

#include <cmath>
#include <random>

namespace modscat::testing {

/// a * exp(-(x-c)^2 / (2 w^2)) * exp(i k x), isotropic in 2D.
inline ComplexField gaussian(const Grid& g, double a = 1, double w = 1,
                             double c = 0, double k = 0) {
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

/// Smooth decaying random field: random low-frequency spectrum under a
/// Gaussian envelope in frequency, then a Gaussian envelope in space.
inline ComplexField random_smooth(const Grid& g, unsigned seed,
                                  double freq_width = 2.0,
                                  double space_width = 0) {
  if (space_width <= 0)
    space_width = g.half_width / 6;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  ComplexField spec = make_field(g, Space::frequency);
  if (g.dim == 1) {
    for (int k = 0; k < g.n; ++k) {
      double xi = g.freq(k);
      spec.values[k] = cplx(nd(rng), nd(rng)) *
                       std::exp(-xi * xi / (2 * freq_width * freq_width));
    }
  } else {
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b) {
        double r2 = g.freq(a) * g.freq(a) + g.freq(b) * g.freq(b);
        spec.values[static_cast<std::size_t>(a) * g.n + b] =
            cplx(nd(rng), nd(rng)) *
            std::exp(-r2 / (2 * freq_width * freq_width));
      }
  }
  ComplexField f = inverse_fourier(spec);
  if (g.dim == 1) {
    for (int i = 0; i < g.n; ++i) {
      double x = g.coord(i);
      f.values[i] *= std::exp(-x * x / (2 * space_width * space_width));
    }
  } else {
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b) {
        double r2 = g.coord(a) * g.coord(a) + g.coord(b) * g.coord(b);
        f.values[static_cast<std::size_t>(a) * g.n + b] *=
            std::exp(-r2 / (2 * space_width * space_width));
      }
  }
  return f;
}

inline double rel_l2_diff(const ComplexField& a, const ComplexField& b) {
  ComplexField d = a;
  for (std::size_t i = 0; i < d.values.size(); ++i)
    d.values[i] -= b.values[i];
  double nb = l2_norm(b);
  return nb > 0 ? l2_norm(d) / nb : l2_norm(d);
}

} // namespace modscat::testing
