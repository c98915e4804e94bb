#pragma once

#include <cstdint>

#include "hallmhd/field.hpp"

namespace hallmhd {

/// Random real field with independent Gaussian coefficients on the modes with
/// |m_a| <= max_mode along every axis (max_mode < 0 selects the 2/3 band),
/// scaled to the requested L^2 norm. Deterministic in seed.
SpectralScalarField random_scalar_field(const GridSpec& grid, std::uint64_t seed, double l2 = 1.0,
                                        int max_mode = -1, bool mean_free = true);
SpectralVectorField random_vector_field(const GridSpec& grid, std::uint64_t seed, double l2 = 1.0,
                                        int max_mode = -1);
/// Leray-projected random vector field, rescaled to the requested L^2 norm.
SpectralVectorField random_solenoidal_field(const GridSpec& grid, std::uint64_t seed, double l2 = 1.0,
                                            int max_mode = -1);

}  // namespace hallmhd
