#include "hallmhd/initial_data.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hallmhd/fft.hpp"
#include "hallmhd/kernels.hpp"
#include "hallmhd/norms.hpp"
#include "hallmhd/operators.hpp"

namespace hallmhd {

std::string to_string(TransitionProfile profile) {
    switch (profile) {
        case TransitionProfile::ExpSmoothstep:
            return "exp_smoothstep";
    }
    return "unknown";
}

TransitionProfile parse_transition_profile(const std::string& name) {
    if (name == "exp_smoothstep") return TransitionProfile::ExpSmoothstep;
    throw ValidationError("unknown transition profile '" + name + "'");
}

double max_admissible_epsilon() { return (2.0 - std::sqrt(2.0)) / 2.0; }

double loglog_inverse(double epsilon) { return std::log(std::log(1.0 / epsilon)); }

DataRecipe make_recipe(double epsilon, TransitionProfile profile) {
    if (!(epsilon > 0.0) || !(epsilon < max_admissible_epsilon())) {
        std::ostringstream msg;
        msg << "epsilon must lie in (0, " << max_admissible_epsilon() << "), got " << epsilon;
        throw ValidationError(msg.str());
    }
    DataRecipe r;
    r.epsilon = epsilon;
    r.amplitude = std::sqrt(loglog_inverse(epsilon)) / epsilon;
    r.profile = profile;
    return r;
}

double smoothstep(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

double bump_profile(const DataRecipe& recipe, double r) {
    const double eps = recipe.epsilon;
    const double half = 0.5 * eps;
    if (r <= 1.0 - eps || r >= 1.0 + eps) return 0.0;
    if (r < 1.0 - half) return smoothstep((r - (1.0 - eps)) / half);
    if (r > 1.0 + half) return smoothstep(((1.0 + eps) - r) / half);
    return 1.0;
}

void check_resolution(const GridSpec& grid, const DataRecipe& recipe, const ResolutionPolicy& policy) {
    const double eps = recipe.epsilon;
    const double dk = grid.dk();
    const double outer = 1.0 + eps;
    std::ostringstream msg;
    if (dk > policy.max_dk_over_epsilon * eps * (1.0 + 1e-12)) {
        const double need = policy.max_dk_over_epsilon * eps;
        msg << "grid too coarse for epsilon=" << eps << ": dk=" << dk << " but the annulus needs dk <= " << need
            << " (box_side >= " << 2.0 * kPi / need << ")";
        throw ValidationError(msg.str());
    }
    if (!(dk * (grid.n() / 2) > outer)) {
        msg << "grid does not contain |k| up to " << outer << ": dk*n/2=" << dk * (grid.n() / 2)
            << "; need n > " << 2.0 * outer / dk;
        throw ValidationError(msg.str());
    }
    if (policy.require_dealias_room) {
        const double top = dk * (grid.n() / 2);
        if (!(top > 1.5 * outer) || dk * grid.dealias_cutoff() < outer) {
            msg << "grid leaves no dealiasing room: need dk*n/2 > " << 1.5 * outer << " and dk*floor((n-1)/3) >= "
                << outer << ", have dk=" << dk << ", n=" << grid.n();
            throw ValidationError(msg.str());
        }
    }
}

SpectralScalarField annular_bump(const DataRecipe& recipe, const GridSpec& grid, const ResolutionPolicy& policy) {
    check_resolution(grid, recipe, policy);
    SpectralScalarField out(grid);
    const double weight = grid.dk() * grid.dk() * grid.dk();
    Complex* c = out.data().data();
    kernels::for_each_mode(kernels::default_exec(), grid.n(), [&](int i1, int i2, int i3, std::size_t idx) {
        c[idx] = bump_profile(recipe, std::sqrt(grid.k_squared(i1, i2, i3))) * weight;
    });
    return out;
}

SpectralVectorField build_V0(const DataRecipe& recipe, const GridSpec& grid, const ResolutionPolicy& policy) {
    const SpectralScalarField a0 = annular_bump(recipe, grid, policy);
    SpectralScalarField zero(grid);
    SpectralVectorField V0(zero, derivative(a0, 2), -derivative(a0, 1));
    V0 *= recipe.amplitude;
    return V0;
}

SpectralVectorField positive_helicity_projection(const SpectralVectorField& field) {
    SpectralVectorField out = field + fractional_power(curl(field), -1.0);
    out *= 0.5;
    return out;
}

SpectralVectorField build_U0(const SpectralVectorField& V0) {
    double scale = 0.0;
    double mean = 0.0;
    for (int a = 0; a < 3; ++a) {
        for (const Complex& z : V0[a].coeffs()) scale = std::max(scale, std::abs(z));
        mean = std::max(mean, std::abs(V0[a].at(0, 0, 0)));
    }
    if (mean > 1e-12 * scale) throw ValidationError("build_U0 needs a mean-free input field");
    return V0 + fractional_power(curl(V0), -1.0);
}

StructureResiduals verify_structure(const SpectralVectorField& U0) {
    const double norm = l2_norm(U0);
    if (norm == 0.0) return {};
    StructureResiduals r;
    r.div_res = l2_norm(divergence(U0)) / norm;
    r.beltrami_res = l2_norm(curl(U0) - fractional_power(U0, 1.0)) / norm;
    return r;
}

DataNormReport data_norms(const SpectralVectorField& U0, const DataRecipe& recipe) {
    DataNormReport r;
    r.epsilon = recipe.epsilon;
    r.l1_hat = spectral_l1(U0);
    r.l2 = l2_norm(U0);
    r.h3 = sobolev_norm(U0, 3.0);

    const PhysicalScalarField first = to_physical(U0[0]);
    const GridSpec& g = U0.grid();
    std::size_t best = 0;
    double best_value = -1.0;
    for (std::size_t p = 0; p < first.values.size(); ++p) {
        const double v = std::abs(first.values[p]);
        if (v > best_value) {
            best_value = v;
            best = p;
        }
    }
    r.linf_first = std::max(best_value, 0.0);
    const std::size_t n = static_cast<std::size_t>(g.n());
    r.linf_first_at = {static_cast<double>(best / (n * n)) * g.dx(), static_cast<double>((best / n) % n) * g.dx(),
                       static_cast<double>(best % n) * g.dx()};

    const double root = std::sqrt(loglog_inverse(recipe.epsilon));
    r.l1_ratio = r.l1_hat / root;
    r.l2_ratio = r.l2 / (root / std::sqrt(recipe.epsilon));
    return r;
}

ConditionReport check_condition(const DataNormReport& report, double v0_h3, double c0_h3,
                                const DataRecipe& recipe, double constant_C, double delta) {
    if (!(constant_C > 0.0)) throw ValidationError("constant_C must be positive");
    if (!(delta > 0.0)) throw ValidationError("delta must be positive");
    if (v0_h3 < 0.0 || c0_h3 < 0.0 || report.l1_hat < 0.0 || report.l2 < 0.0)
        throw ValidationError("norm inputs must be non-negative");

    const double eps = recipe.epsilon;
    const double l1 = report.l1_hat;
    const double l2 = report.l2;
    const double prefactor = v0_h3 * v0_h3 + c0_h3 * c0_h3 + eps * l2 * (1.0 + l1);
    const double exponent = constant_C * (1.0 + l1) * (l1 + eps * l2);

    ConditionReport c;
    c.delta = delta;
    c.constant_C = constant_C;
    c.v0_h3 = v0_h3;
    c.c0_h3 = c0_h3;
    c.l1_hat = l1;
    c.l2 = l2;
    c.epsilon = eps;
    if (prefactor == 0.0) {
        c.lhs = 0.0;
        c.log_lhs = -std::numeric_limits<double>::infinity();
    } else {
        c.log_lhs = std::log(prefactor) + exponent;
        c.lhs = prefactor * std::exp(exponent);
    }
    c.pass = c.lhs <= delta;
    return c;
}

}  // namespace hallmhd
