#pragma once

#include "modscat/grid.hpp"

namespace modscat {

/// Quadrature values of the norms used by the diagnostics. lp and weighted
/// are evaluated at the p and sigma passed to norms().
struct NormReport {
  double l2 = 0;
  double l_inf = 0;
  double lp = 0;       // L^p with the requested p
  double grad_l2 = 0;  // ||grad f||_L2, spectral multiplier |xi|
  double weighted = 0; // ||<x>^sigma f||_L2
  double p = 2;
  double sigma = 0;
};

NormReport norms(const ComplexField& f, double p = 4, double sigma = 1);

double l2_norm(const ComplexField& f);
double linf_norm(const ComplexField& f);
double lp_norm(const ComplexField& f, double p);
double grad_l2_norm(const ComplexField& f);

/// H^{s,sigma} norm as the sum ||<xi>^s F f||_L2 + ||<x>^sigma f||_L2.
/// With s = sigma = 0 this equals 2 ||f||_L2 (two copies of the L2 norm).
double weighted_sobolev_norm(const ComplexField& f, double s, double sigma);

/// |x|^2 per flat index on the physical lattice.
std::vector<double> coordinate_abs2(const Grid& g);
/// |xi|^2 per flat index on the frequency lattice.
std::vector<double> frequency_abs2(const Grid& g);

/// dx^dim or dxi^dim, matching the space a field is sampled in.
double volume_element(const Grid& g, Space s);

} // namespace modscat
