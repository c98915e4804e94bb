#pragma once

#include <functional>

#include "hallmhd/field.hpp"

namespace hallmhd {

/// Spectral derivative along axis 0, 1 or 2 (x1, x2, x3). Coefficients at
/// the Nyquist index of that axis are zeroed.
SpectralScalarField derivative(const SpectralScalarField& field, int axis);
/// D^beta for a multi-index beta = (b1, b2, b3).
SpectralScalarField derivative(const SpectralScalarField& field, const std::array<int, 3>& beta);
SpectralVectorField derivative(const SpectralVectorField& field, const std::array<int, 3>& beta);

SpectralScalarField divergence(const SpectralVectorField& field);
SpectralVectorField curl(const SpectralVectorField& field);
SpectralVectorField gradient(const SpectralScalarField& field);
/// Multiplies by -|k|^2.
SpectralScalarField laplacian(const SpectralScalarField& field);
SpectralVectorField laplacian(const SpectralVectorField& field);

/// Lambda^gamma: multiplies the k coefficient by |k|^gamma. The k = 0
/// coefficient maps to 0 whenever gamma != 0 (Lambda^-1 of a mean is 0).
SpectralScalarField fractional_power(const SpectralScalarField& field, double gamma);
SpectralVectorField fractional_power(const SpectralVectorField& field, double gamma);

/// Multiplies every coefficient by symbol(|k|).
SpectralScalarField radial_multiplier(const SpectralScalarField& field,
                                      const std::function<double(double)>& symbol);
SpectralVectorField radial_multiplier(const SpectralVectorField& field,
                                      const std::function<double(double)>& symbol);

/// Orthogonal projection onto divergence-free fields, using the derivative
/// wavevector so that divergence(leray_project(w)) vanishes mode by mode.
SpectralVectorField leray_project(const SpectralVectorField& field);

/// Zeroes every mode with 3|m_a| > n on some axis.
void dealias(SpectralScalarField& field);
void dealias(SpectralVectorField& field);

/// Products formed in physical space, transformed back and dealiased.
SpectralScalarField pointwise_product(const SpectralScalarField& a, const SpectralScalarField& b);
SpectralVectorField pointwise_cross(const SpectralVectorField& a, const SpectralVectorField& b);
/// (u . grad) w.
SpectralVectorField advect(const SpectralVectorField& u, const SpectralVectorField& w);

namespace phys {

// Pointwise helpers on physical samples shared by the nonlinear terms.

/// out_i = sum_j u_j grad_w[i][j] where grad_w[i][j] = d_j w_i.
void advect(const PhysicalVectorField& u, const std::array<PhysicalVectorField, 3>& grad_w,
            PhysicalVectorField& out, double scale = 1.0, bool accumulate = false);
void cross(const PhysicalVectorField& a, const PhysicalVectorField& b, PhysicalVectorField& out,
           double scale = 1.0, bool accumulate = false);
/// grad_w[i][j] = d_j w_i, all nine transformed to physical space.
std::array<PhysicalVectorField, 3> gradient_tensor(const SpectralVectorField& w);
/// Curl from a physical gradient tensor.
PhysicalVectorField curl_from_gradient(const std::array<PhysicalVectorField, 3>& grad_w);
/// Forward transform followed by the 2/3 rule.
SpectralVectorField to_spectral_dealiased(const PhysicalVectorField& field);

}  // namespace phys

}  // namespace hallmhd
