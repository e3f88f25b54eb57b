#include "modscat/norms.hpp"

#include "modscat/fourier.hpp"
#include "modscat/kernels.hpp"

#include <cmath>

namespace modscat {

double volume_element(const Grid& g, Space s) {
  double h = (s == Space::physical) ? g.dx : g.dxi;
  return std::pow(h, static_cast<double>(g.dim));
}

std::vector<double> frequency_abs2(const Grid& g) {
  std::vector<double> w(g.size());
  if (g.dim == 1) {
    for (int k = 0; k < g.n; ++k)
      w[k] = g.freq(k) * g.freq(k);
  } else {
    for (int a = 0; a < g.n; ++a) {
      double xa = g.freq(a);
      for (int b = 0; b < g.n; ++b) {
        double xb = g.freq(b);
        w[static_cast<std::size_t>(a) * g.n + b] = xa * xa + xb * xb;
      }
    }
  }
  return w;
}

std::vector<double> coordinate_abs2(const Grid& g) {
  std::vector<double> w(g.size());
  if (g.dim == 1) {
    for (int i = 0; i < g.n; ++i)
      w[i] = g.coord(i) * g.coord(i);
  } else {
    for (int a = 0; a < g.n; ++a) {
      double xa = g.coord(a);
      for (int b = 0; b < g.n; ++b) {
        double xb = g.coord(b);
        w[static_cast<std::size_t>(a) * g.n + b] = xa * xa + xb * xb;
      }
    }
  }
  return w;
}

double l2_norm(const ComplexField& f) {
  return std::sqrt(kernels::sum_abs2(f.values) *
                   volume_element(f.grid, f.space));
}

double linf_norm(const ComplexField& f) {
  return std::sqrt(kernels::max_abs2(f.values));
}

double lp_norm(const ComplexField& f, double p) {
  return std::pow(kernels::sum_abs_pow(f.values, p) *
                      volume_element(f.grid, f.space),
                  1.0 / p);
}

double grad_l2_norm(const ComplexField& f) {
  require_space(f, Space::physical, "grad_l2_norm");
  ComplexField fh = forward_fourier(f);
  std::vector<double> w = frequency_abs2(f.grid);
  double s = kernels::sum_weighted_abs2(fh.values, w);
  return std::sqrt(s * volume_element(f.grid, Space::frequency));
}

NormReport norms(const ComplexField& f, double p, double sigma) {
  require_space(f, Space::physical, "norms");
  require_finite(f, "norms");
  NormReport r;
  r.p = p;
  r.sigma = sigma;
  r.l2 = l2_norm(f);
  r.l_inf = linf_norm(f);
  r.lp = lp_norm(f, p);
  r.grad_l2 = grad_l2_norm(f);
  std::vector<double> x2 = coordinate_abs2(f.grid);
  for (double& v : x2)
    v = std::pow(1.0 + v, sigma); // <x>^{2 sigma}
  r.weighted = std::sqrt(kernels::sum_weighted_abs2(f.values, x2) *
                         volume_element(f.grid, Space::physical));
  return r;
}

double weighted_sobolev_norm(const ComplexField& f, double s, double sigma) {
  require_space(f, Space::physical, "weighted_sobolev_norm");
  if (s < 0 || sigma < 0)
    throw std::invalid_argument("weighted_sobolev_norm: s, sigma must be >= 0");
  ComplexField fh = forward_fourier(f);
  std::vector<double> wxi = frequency_abs2(f.grid);
  for (double& v : wxi)
    v = std::pow(1.0 + v, s);
  double sobolev = std::sqrt(kernels::sum_weighted_abs2(fh.values, wxi) *
                             volume_element(f.grid, Space::frequency));
  std::vector<double> wx = coordinate_abs2(f.grid);
  for (double& v : wx)
    v = std::pow(1.0 + v, sigma);
  double weighted = std::sqrt(kernels::sum_weighted_abs2(f.values, wx) *
                              volume_element(f.grid, Space::physical));
  return sobolev + weighted;
}

} // namespace modscat
