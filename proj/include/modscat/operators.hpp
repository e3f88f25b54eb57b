#pragma once

#include "modscat/grid.hpp"

// The operator family of the free Schroedinger flow: propagator U(t),
// quadratic modulation M(t), L2-scaling dilation D(t), the vector field
// J(t) = x + i t grad, and the frequency-space profile F M(t) U(-t) u(t).
//
// U, M and the profile are fixed-lattice operations (multipliers and
// transforms). D needs band-limited interpolation onto a rescaled lattice and
// exists for identity tests; the solver and diagnostics never call it.

namespace modscat {

enum class OperatorKind { free_propagator, modulation, dilation, j_field, profile };

/// Kind + time of one operator application.
/// M(t), D(t) and the profile are singular at t = 0; validate() rejects that.
struct OperatorTag {
  OperatorKind kind;
  double t = 0;
  void validate() const;
};

/// U(t) = exp(i t Laplacian / 2); frequency multiplier exp(-i t |xi|^2 / 2).
ComplexField free_propagate(const ComplexField& f, double t);

/// M(t) f = exp(i x^2 / (2t)) f. Unimodular; M(t)^{-1} = M(-t).
ComplexField modulate(const ComplexField& f, double t);

/// D(t) f (x) = (it)^{-dim/2} f(x/t), band-limited interpolation.
ComplexField dilate(const ComplexField& f, double t, double tail_tol = 1e-8);

/// D(t)^{-1} f (x) = (it)^{dim/2} f(x t).
ComplexField dilate_inverse(const ComplexField& f, double t,
                            double tail_tol = 1e-8);

/// || U(t)f - M(t) D(t) F M(t) f ||_L2 / ||f||_L2.
double dollard_residual(const ComplexField& f, double t);

/// J(t) f along one axis: x_a f for t = 0, else M(t) (i t d_a) M(-t) f.
ComplexField apply_galilean(const ComplexField& f, double t, int axis = 0);

/// || J(t) f ||_L2 over all axes, via the conjugation identity
/// J(t) = U(t) x U(-t), i.e. || x U(-t) f ||_L2.
double galilean_norm(const ComplexField& f, double t);

/// Frequency-space profile F M(t) U(-t) u of a solution snapshot at time t.
/// Its modulus tracks the rescaled solution: |profile(y)| = t^{dim/2} |u(t, t y)|.
/// Diagnostics start at t = 1; smaller times are rejected.
ComplexField scattering_profile(const ComplexField& u, double t);

/// Spectral partial derivative along one axis (physical -> physical).
ComplexField spectral_gradient(const ComplexField& f, int axis = 0);

/// Trig-interpolant evaluation of f at the scaled lattice alpha * x_j (same
/// grid and spacing conventions as f). Targets outside the fundamental domain
/// produce zero; in that case the source must hold at most tail_tol of its
/// L2 mass in the outermost 1/16 shell, else a std::domain_error is thrown.
ComplexField resample_scaled(const ComplexField& f, double alpha,
                             double tail_tol = 1e-8);

} // namespace modscat
