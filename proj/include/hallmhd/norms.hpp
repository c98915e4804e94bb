#pragma once

#include "hallmhd/field.hpp"

namespace hallmhd {

// Norm conventions (all from the Parseval identity of SpectralScalarField):
//   ||f||_{H^s}^2 = L^3 * sum_k (1 + |k|^2)^s |c_k|^2
//   ||f^||_{L^1}  = sum_k |c_k|, the midpoint rule dk^3 * sum |f^(k)| for the
//                   continuum transform f^(k) = c_k / dk^3; for vectors |c_k|
//                   is the Euclidean modulus of the three coefficients.
//   ||f||_{L^inf} = largest sample on the physical grid.

/// Real L^2 inner product integral f.g dx.
double inner_product(const SpectralScalarField& a, const SpectralScalarField& b);
double inner_product(const SpectralVectorField& a, const SpectralVectorField& b);

double l2_norm(const SpectralScalarField& field);
double l2_norm(const SpectralVectorField& field);

/// Supported for s >= -1.
double sobolev_norm(const SpectralScalarField& field, double s);
double sobolev_norm(const SpectralVectorField& field, double s);

double spectral_l1(const SpectralScalarField& field);
double spectral_l1(const SpectralVectorField& field);

double linf_norm(const SpectralScalarField& field);
/// Largest Euclidean magnitude over the grid.
double linf_norm(const SpectralVectorField& field);
double linf_norm(const PhysicalVectorField& field);

/// Quadrature (L^3 / n^3) * sum_x |f(x)|^2 in physical space.
double physical_l2_squared(const PhysicalScalarField& field);

}  // namespace hallmhd
