#pragma once

#include <array>
#include <string>

#include "hallmhd/field.hpp"

namespace hallmhd {

/// Transition used for the annular bump between its plateau and its edges.
enum class TransitionProfile {
    /// s(x) = psi(x) / (psi(x) + psi(1 - x)) with psi(x) = exp(-1/x) for x > 0.
    ExpSmoothstep,
};

std::string to_string(TransitionProfile profile);
TransitionProfile parse_transition_profile(const std::string& name);

/// Large-data family with Fourier support in the annulus 1 - eps <= |k| <= 1 + eps.
struct DataRecipe {
    double epsilon = 0.2;
    /// eps^-1 (log log 1/eps)^(1/2)
    double amplitude = 0.0;
    TransitionProfile profile = TransitionProfile::ExpSmoothstep;
};

/// Admissible range 0 < eps < (2 - sqrt 2)/2.
DataRecipe make_recipe(double epsilon, TransitionProfile profile = TransitionProfile::ExpSmoothstep);
double max_admissible_epsilon();
double loglog_inverse(double epsilon);

/// C-infinity step: 0 for x <= 0, 1 for x >= 1.
double smoothstep(double x);
/// Radial profile a^0(r): 1 on [1 - eps/2, 1 + eps/2], 0 outside [1 - eps, 1 + eps].
double bump_profile(const DataRecipe& recipe, double r);

struct ResolutionPolicy {
    /// Largest dk / eps accepted; 1/4 puts at least eight lattice shells across the annulus.
    double max_dk_over_epsilon = 0.25;
    /// Also demand that the annulus survives the 2/3 rule and products have
    /// room above it, as needed by time integration.
    bool require_dealias_room = false;
};

/// Throws ValidationError naming the required dk when the grid cannot carry the recipe.
void check_resolution(const GridSpec& grid, const DataRecipe& recipe, const ResolutionPolicy& policy);

/// Coefficients c_k = a^0(|k|) dk^3, so a_0(x) = sum_k c_k e^{ik.x} is the
/// midpoint-rule image of integral cos(x.xi) a^0(xi) dxi. Real and even.
SpectralScalarField annular_bump(const DataRecipe& recipe, const GridSpec& grid,
                                 const ResolutionPolicy& policy = {});

/// V0 = amplitude * curl (a0, 0, 0) = amplitude * (0, d3 a0, -d2 a0).
SpectralVectorField build_V0(const DataRecipe& recipe, const GridSpec& grid,
                             const ResolutionPolicy& policy = {});

/// U0 = V0 + Lambda^-1 curl V0. Rejects inputs with a non-zero mean.
SpectralVectorField build_U0(const SpectralVectorField& V0);

/// Positive-helicity projector (I + Lambda^-1 curl) / 2.
SpectralVectorField positive_helicity_projection(const SpectralVectorField& field);

struct StructureResiduals {
    double div_res = 0.0;       ///< ||div U||_{L2} / ||U||_{L2}
    double beltrami_res = 0.0;  ///< ||curl U - Lambda U||_{L2} / ||U||_{L2}
};

StructureResiduals verify_structure(const SpectralVectorField& U0);

struct DataNormReport {
    double epsilon = 0.0;
    double l1_hat = 0.0;      ///< ||U0^||_{L1}
    double l2 = 0.0;          ///< ||U0||_{L2}
    double linf_first = 0.0;  ///< ||U0^1||_{Linf} on the grid
    double h3 = 0.0;          ///< ||U0||_{H3}
    double l1_ratio = 0.0;    ///< l1_hat / (log log 1/eps)^(1/2)
    double l2_ratio = 0.0;    ///< l2 / (eps^-1/2 (log log 1/eps)^(1/2))
    /// Location of the first-component maximum.
    std::array<double, 3> linf_first_at{0.0, 0.0, 0.0};
};

DataNormReport data_norms(const SpectralVectorField& U0, const DataRecipe& recipe);

struct ConditionReport {
    double lhs = 0.0;
    /// log(lhs); -inf for lhs = 0. Finite even when lhs overflows.
    double log_lhs = 0.0;
    double delta = 0.0;
    double constant_C = 0.0;
    bool pass = false;
    double v0_h3 = 0.0;
    double c0_h3 = 0.0;
    double l1_hat = 0.0;
    double l2 = 0.0;
    double epsilon = 0.0;
};

/// lhs = (|v0|_{H3}^2 + |c0|_{H3}^2 + eps |U0|_{L2} (1 + |U0^|_{L1}))
///       * exp(C (1 + |U0^|_{L1}) (|U0^|_{L1} + eps |U0|_{L2})), pass iff lhs <= delta.
ConditionReport check_condition(const DataNormReport& report, double v0_h3, double c0_h3,
                                const DataRecipe& recipe, double constant_C, double delta);

}  // namespace hallmhd
