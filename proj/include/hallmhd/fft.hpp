#pragma once

#include <span>

#include "hallmhd/field.hpp"

namespace hallmhd {

// Discrete Fourier transform pair under the convention documented on
// SpectralScalarField: forward scales by 1/n^3, inverse is unscaled.
// Forward transforms symmetrise their output so the coefficients are exactly
// Hermitian; inverse transforms return the real part.

SpectralScalarField to_spectral(const PhysicalScalarField& field);
/// Throws ValidationError when samples.size() != grid.size().
SpectralScalarField to_spectral(const GridSpec& grid, std::span<const double> samples);
PhysicalScalarField to_physical(const SpectralScalarField& field);

SpectralVectorField to_spectral(const PhysicalVectorField& field);
PhysicalVectorField to_physical(const SpectralVectorField& field);

namespace fft_detail {

/// Inverse-transforms count real fields, two per complex FFT.
void inverse_real_batch(const GridSpec& grid, std::span<const Complex* const> in,
                        std::span<double* const> out);
/// Forward-transforms count real fields, two per complex FFT.
void forward_real_batch(const GridSpec& grid, std::span<const double* const> in,
                        std::span<Complex* const> out);

}  // namespace fft_detail

}  // namespace hallmhd
