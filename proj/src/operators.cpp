#include "modscat/operators.hpp"

#include "modscat/fourier.hpp"
#include "modscat/kernels.hpp"
#include "modscat/norms.hpp"

#include <cmath>

namespace modscat {

void OperatorTag::validate() const {
  switch (kind) {
  case OperatorKind::modulation:
  case OperatorKind::dilation:
  case OperatorKind::profile:
    if (t == 0)
      throw std::invalid_argument("operator singular at t = 0");
    break;
  case OperatorKind::free_propagator:
  case OperatorKind::j_field:
    break;
  }
  if (!std::isfinite(t))
    throw std::invalid_argument("operator time must be finite");
}

namespace {

// Band-limited interpolation of centered lattice samples at the scaled
// lattice ratio * (j - n/2), in lattice units. Targets outside the
// fundamental domain [-n/2, n/2) give zero; *zeroed reports whether any did.
std::vector<cplx> resample_centered(const std::vector<cplx>& src, int dim,
                                    int n, double ratio, bool* zeroed) {
  const int m = n / 2;
  std::vector<cplx> coef = detail::centered_dft(src, dim, n, -1);

  // evaluation matrix E[j][k] = e^{i q_k y_j} / n, zero row when y_j is
  // outside the domain
  std::vector<cplx> e(static_cast<std::size_t>(n) * n, cplx(0, 0));
  bool any_zero = false;
  for (int j = 0; j < n; ++j) {
    double y = ratio * (j - m);
    if (y < -m || y >= m) {
      any_zero = true;
      continue;
    }
    for (int k = 0; k < n; ++k) {
      double q = 2.0 * pi * (k - m) / n;
      e[static_cast<std::size_t>(j) * n + k] = std::polar(1.0 / n, q * y);
    }
  }
  if (zeroed)
    *zeroed = any_zero;

  std::vector<cplx> out(src.size(), cplx(0, 0));
  if (dim == 1) {
    const int nt = kernels::thread_cap();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nt) if (nt > 1)
#endif
    for (int j = 0; j < n; ++j) {
      cplx s(0, 0);
      const cplx* row = e.data() + static_cast<std::size_t>(j) * n;
      for (int k = 0; k < n; ++k)
        s += row[k] * coef[k];
      out[j] = s;
    }
  } else {
    // separable: tmp[k1][j2] = sum_k2 coef[k1][k2] E[j2][k2], then
    // out[j1][j2] = sum_k1 E[j1][k1] tmp[k1][j2]
    std::vector<cplx> tmp(src.size(), cplx(0, 0));
    const int nt = kernels::thread_cap();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nt) if (nt > 1)
#endif
    for (int k1 = 0; k1 < n; ++k1) {
      const cplx* crow = coef.data() + static_cast<std::size_t>(k1) * n;
      cplx* trow = tmp.data() + static_cast<std::size_t>(k1) * n;
      for (int j2 = 0; j2 < n; ++j2) {
        cplx s(0, 0);
        const cplx* erow = e.data() + static_cast<std::size_t>(j2) * n;
        for (int k2 = 0; k2 < n; ++k2)
          s += erow[k2] * crow[k2];
        trow[j2] = s;
      }
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nt) if (nt > 1)
#endif
    for (int j1 = 0; j1 < n; ++j1) {
      const cplx* erow = e.data() + static_cast<std::size_t>(j1) * n;
      cplx* orow = out.data() + static_cast<std::size_t>(j1) * n;
      for (int k1 = 0; k1 < n; ++k1) {
        cplx w = erow[k1];
        if (w == cplx(0, 0))
          continue;
        const cplx* trow = tmp.data() + static_cast<std::size_t>(k1) * n;
        for (int j2 = 0; j2 < n; ++j2)
          orow[j2] += w * trow[j2];
      }
    }
  }
  return out;
}

// Relative L2 mass in the outermost 1/16 shell (sup-norm shell).
double outer_shell_fraction(const ComplexField& f) {
  const Grid& g = f.grid;
  const int m = g.n / 2;
  const int cut = m - m / 8; // |index - n/2| > (15/16)(n/2)
  double shell = 0, total = 0;
  if (g.dim == 1) {
    for (int i = 0; i < g.n; ++i) {
      double w = std::norm(f.values[i]);
      total += w;
      if (std::abs(i - m) > cut)
        shell += w;
    }
  } else {
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b) {
        double w = std::norm(f.values[static_cast<std::size_t>(a) * g.n + b]);
        total += w;
        if (std::abs(a - m) > cut || std::abs(b - m) > cut)
          shell += w;
      }
  }
  return total > 0 ? shell / total : 0.0;
}

void check_contained(const ComplexField& f, double tail_tol,
                     const char* where) {
  double frac = outer_shell_fraction(f);
  if (frac > tail_tol)
    throw std::domain_error(std::string(where) +
                            ": rescaled support exceeds the grid (outer shell "
                            "mass fraction " +
                            std::to_string(frac) + ")");
}

std::vector<double> quadratic_phase(const Grid& g, double coeff) {
  std::vector<double> th = coordinate_abs2(g);
  for (double& v : th)
    v *= coeff;
  return th;
}

} // namespace

ComplexField free_propagate(const ComplexField& f, double t) {
  require_space(f, Space::physical, "free_propagate");
  OperatorTag{OperatorKind::free_propagator, t}.validate();
  ComplexField fh = forward_fourier(f);
  std::vector<double> th = frequency_abs2(f.grid);
  for (double& v : th)
    v *= 0.5 * t;
  kernels::phase_rotate(fh.values, th, -1.0);
  return inverse_fourier(fh);
}

ComplexField modulate(const ComplexField& f, double t) {
  require_space(f, Space::physical, "modulate");
  OperatorTag{OperatorKind::modulation, t}.validate();
  ComplexField out = f;
  std::vector<double> th = quadratic_phase(f.grid, 1.0 / (2.0 * t));
  kernels::phase_rotate(out.values, th, 1.0);
  return out;
}

ComplexField resample_scaled(const ComplexField& f, double alpha,
                             double tail_tol) {
  if (alpha == 0 || !std::isfinite(alpha))
    throw std::invalid_argument("resample_scaled: bad scale");
  bool zeroed = false;
  ComplexField out = f;
  out.values = resample_centered(f.values, f.grid.dim, f.grid.n, alpha,
                                 &zeroed);
  if (zeroed)
    check_contained(f, tail_tol, "resample_scaled");
  return out;
}

ComplexField dilate(const ComplexField& f, double t, double tail_tol) {
  OperatorTag{OperatorKind::dilation, t}.validate();
  ComplexField out = resample_scaled(f, 1.0 / t, tail_tol);
  cplx pref = std::pow(cplx(0.0, t), -0.5 * f.grid.dim);
  kernels::scale(out.values, pref);
  return out;
}

ComplexField dilate_inverse(const ComplexField& f, double t, double tail_tol) {
  OperatorTag{OperatorKind::dilation, t}.validate();
  ComplexField out = resample_scaled(f, t, tail_tol);
  cplx pref = std::pow(cplx(0.0, t), 0.5 * f.grid.dim);
  kernels::scale(out.values, pref);
  return out;
}

double dollard_residual(const ComplexField& f, double t) {
  require_space(f, Space::physical, "dollard_residual");
  if (t < 1)
    throw std::invalid_argument("dollard_residual: t >= 1 required");
  double nf = l2_norm(f);
  if (nf == 0)
    return 0.0;

  ComplexField lhs = free_propagate(f, t);

  // M(t) D(t) F M(t) f; the dilation evaluates the frequency-space function
  // at x_j / t, i.e. at ratio dx / (t dxi) in its own lattice units.
  const Grid& g = f.grid;
  ComplexField fh = forward_fourier(modulate(f, t));
  double ratio = g.dx / (t * g.dxi);
  bool zeroed = false;
  ComplexField mid;
  mid.grid = g;
  mid.space = Space::physical;
  mid.values = resample_centered(fh.values, g.dim, g.n, ratio, &zeroed);
  if (zeroed)
    check_contained(fh, 1e-8, "dollard_residual");
  kernels::scale(mid.values, std::pow(cplx(0.0, t), -0.5 * g.dim));
  ComplexField rhs = modulate(mid, t);

  for (std::size_t i = 0; i < lhs.values.size(); ++i)
    lhs.values[i] -= rhs.values[i];
  return l2_norm(lhs) / nf;
}

ComplexField apply_galilean(const ComplexField& f, double t, int axis) {
  require_space(f, Space::physical, "apply_galilean");
  if (axis < 0 || axis >= f.grid.dim)
    throw std::invalid_argument("apply_galilean: bad axis");
  const Grid& g = f.grid;
  if (t == 0) {
    ComplexField out = f;
    if (g.dim == 1) {
      for (int i = 0; i < g.n; ++i)
        out.values[i] *= g.coord(i);
    } else {
      for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
          out.values[static_cast<std::size_t>(a) * g.n + b] *=
              g.coord(axis == 0 ? a : b);
    }
    return out;
  }
  // M(t) (i t d_axis) M(-t)
  ComplexField fh = forward_fourier(modulate(f, -t));
  if (g.dim == 1) {
    for (int k = 0; k < g.n; ++k)
      fh.values[k] *= -t * g.freq(k);
  } else {
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b)
        fh.values[static_cast<std::size_t>(a) * g.n + b] *=
            -t * g.freq(axis == 0 ? a : b);
  }
  return modulate(inverse_fourier(fh), t);
}

double galilean_norm(const ComplexField& f, double t) {
  require_space(f, Space::physical, "galilean_norm");
  ComplexField b = (t == 0) ? f : free_propagate(f, -t);
  std::vector<double> x2 = coordinate_abs2(f.grid);
  double s = kernels::sum_weighted_abs2(b.values, x2);
  return std::sqrt(s * volume_element(f.grid, Space::physical));
}

ComplexField scattering_profile(const ComplexField& u, double t) {
  require_space(u, Space::physical, "scattering_profile");
  if (t < 1)
    throw std::invalid_argument(
        "scattering_profile: diagnostics start at t = 1");
  return forward_fourier(modulate(free_propagate(u, -t), t));
}

ComplexField spectral_gradient(const ComplexField& f, int axis) {
  require_space(f, Space::physical, "spectral_gradient");
  if (axis < 0 || axis >= f.grid.dim)
    throw std::invalid_argument("spectral_gradient: bad axis");
  const Grid& g = f.grid;
  ComplexField fh = forward_fourier(f);
  if (g.dim == 1) {
    for (int k = 0; k < g.n; ++k)
      fh.values[k] *= cplx(0, g.freq(k));
  } else {
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b)
        fh.values[static_cast<std::size_t>(a) * g.n + b] *=
            cplx(0, g.freq(axis == 0 ? a : b));
  }
  return inverse_fourier(fh);
}

} // namespace modscat
