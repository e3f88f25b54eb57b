#pragma once

#include "modscat/config.hpp"
#include "modscat/grid.hpp"

namespace modscat {

/// Initial-data library. Known names:
///   gaussian(amplitude, width, center, momentum) — isotropic, center and
///     momentum applied along every axis;
///   radial_gaussian_2d(amplitude, width) — 2D grids only;
///   random_h11(seed, amplitude, correlation_length, envelope_width) —
///     band-limited complex noise under a Gaussian envelope, peak
///     normalized to the amplitude. Deterministic in the seed.
ComplexField initial_data(const InitialDataSpec& spec, const Grid& grid);

} // namespace modscat
