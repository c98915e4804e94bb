#include <cmath>
#include <functional>
#include <limits>

#include "doctest.h"
#include "hallmhd/fft.hpp"
#include "hallmhd/initial_data.hpp"
#include "hallmhd/norms.hpp"
#include "hallmhd/operators.hpp"
#include "hallmhd/random_fields.hpp"
#include "support.hpp"

using namespace hallmhd;
using namespace hallmhd::test;

namespace {

// composite Simpson on [a, b]
double simpson(const std::function<double(double)>& f, double a, double b, int intervals = 4000) {
    const double h = (b - a) / intervals;
    double s = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

GridSpec structural_grid(double eps) { return make_grid(64, 8.0 * kPi / eps); }

}  // namespace

TEST_CASE("recipe and profile") {
    CHECK(max_admissible_epsilon() == doctest::Approx((2.0 - std::sqrt(2.0)) / 2.0));
    const DataRecipe r = make_recipe(0.1);
    CHECK(r.amplitude == doctest::Approx(10.0 * std::sqrt(std::log(std::log(10.0)))).epsilon(1e-15));
    CHECK(loglog_inverse(0.1) == doctest::Approx(std::log(std::log(10.0))));
    CHECK_THROWS_AS(make_recipe(0.0), ValidationError);
    CHECK_THROWS_AS(make_recipe(0.3), ValidationError);
    CHECK_THROWS_AS(make_recipe(-0.1), ValidationError);
    CHECK(to_string(parse_transition_profile("exp_smoothstep")) == "exp_smoothstep");
    CHECK_THROWS_AS(parse_transition_profile("linear"), ValidationError);

    CHECK(smoothstep(-1.0) == 0.0);
    CHECK(smoothstep(0.0) == 0.0);
    CHECK(smoothstep(1.0) == 1.0);
    CHECK(smoothstep(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    double prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double x = 0.01 * i;
        CHECK(smoothstep(x) >= prev);
        CHECK(smoothstep(x) + smoothstep(1.0 - x) == doctest::Approx(1.0).epsilon(1e-14));
        prev = smoothstep(x);
    }

    const DataRecipe q = make_recipe(0.2);
    CHECK(bump_profile(q, 1.0) == 1.0);
    CHECK(bump_profile(q, 0.9) == 1.0);
    CHECK(bump_profile(q, 1.1) == 1.0);
    CHECK(bump_profile(q, 0.8) == 0.0);
    CHECK(bump_profile(q, 1.2) == 0.0);
    CHECK(bump_profile(q, 0.5) == 0.0);
    CHECK(bump_profile(q, 0.85) == doctest::Approx(0.5));
    CHECK(bump_profile(q, 0.83) == doctest::Approx(bump_profile(q, 1.17)).epsilon(1e-12));
}

TEST_CASE("resolution policy") {
    const DataRecipe r = make_recipe(0.2);
    CHECK_NOTHROW(check_resolution(structural_grid(0.2), r, {}));
    CHECK_THROWS_AS(check_resolution(make_grid(32, 16.0 * kPi), r, {}), ValidationError);
    CHECK_NOTHROW(check_resolution(make_grid(32, 16.0 * kPi), r, {0.625, false}));
    // the annulus must fit under the largest resolved wavenumber
    CHECK_THROWS_AS(check_resolution(make_grid(8, 80.0 * kPi), r, {1.0, false}), ValidationError);
    try {
        check_resolution(make_grid(32, 16.0 * kPi), r, {});
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("dk") != std::string::npos);
    }
}

TEST_CASE("annular bump and V0") {
    const DataRecipe r = make_recipe(0.2);
    const GridSpec g = structural_grid(0.2);
    const SpectralScalarField a = annular_bump(r, g);
    // real and even: purely real coefficients, symmetric under k -> -k
    double imag = 0.0;
    for (const Complex& z : a.coeffs()) imag = std::max(imag, std::abs(z.imag()));
    CHECK(imag == 0.0);
    CHECK(hermitian_defect(a) == 0.0);
    // support inside the annulus
    const int n = g.n();
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            for (int i3 = 0; i3 < n; ++i3)
                if (a.at(i1, i2, i3) != Complex(0.0, 0.0)) {
                    const double k = std::sqrt(g.k_squared(i1, i2, i3));
                    REQUIRE(std::abs(k - 1.0) <= 0.2);
                }
    // a0(0) = integral a^0 = 4 pi int r^2 a^0(r) dr
    const double mass = 4.0 * kPi * simpson([&](double s) { return s * s * bump_profile(r, s); }, 0.8, 1.2);
    CHECK(to_physical(a).values[0] == doctest::Approx(mass).epsilon(0.02));

    const SpectralVectorField V0 = build_V0(r, g);
    CHECK(l2_norm(V0[0]) == 0.0);
    CHECK(l2_norm(divergence(V0)) <= 1e-13 * l2_norm(V0));
    CHECK(rel_l2(V0[1], r.amplitude * derivative(a, 2)) < 1e-15);
    CHECK(rel_l2(V0[2], -r.amplitude * derivative(a, 1)) < 1e-15);
}

TEST_CASE("U0 structure") {
    const DataRecipe r = make_recipe(0.2);
    const GridSpec g = structural_grid(0.2);
    const SpectralVectorField V0 = build_V0(r, g);
    const SpectralVectorField U0 = build_U0(V0);
    const StructureResiduals s = verify_structure(U0);
    CHECK(s.div_res <= 1e-12);
    CHECK(s.beltrami_res <= 1e-12);
    CHECK(rel_l2(U0, 2.0 * positive_helicity_projection(V0)) < 1e-14);
    CHECK(rel_l2(positive_helicity_projection(U0), U0) < 1e-14);
    // V0 has no helicity preference, so U0 carries twice half its energy
    CHECK(l2_norm(U0) == doctest::Approx(std::sqrt(2.0) * l2_norm(V0)).epsilon(1e-10));

    SpectralVectorField with_mean = V0;
    with_mean[0].at(0, 0, 0) = 1.0;
    CHECK_THROWS_AS(build_U0(with_mean), ValidationError);

    // a generic solenoidal field is not Beltrami
    const SpectralVectorField w = random_solenoidal_field(make_grid(16, 2.0 * kPi), 1);
    CHECK(verify_structure(w).beltrami_res > 0.1);
}

TEST_CASE("data norms against continuum integrals") {
    const double eps = 0.2;
    const DataRecipe r = make_recipe(eps);
    const GridSpec g = structural_grid(eps);
    const SpectralVectorField U0 = build_U0(build_V0(r, g));
    const DataNormReport d = data_norms(U0, r);
    CHECK(d.epsilon == eps);
    CHECK(d.l2 == l2_norm(U0));
    CHECK(d.h3 == sobolev_norm(U0, 3.0));
    CHECK(d.l1_hat == spectral_l1(U0));
    CHECK(d.l1_ratio == doctest::Approx(d.l1_hat / std::sqrt(loglog_inverse(eps))));
    CHECK(d.l2_ratio == doctest::Approx(d.l2 / (std::sqrt(loglog_inverse(eps)) / std::sqrt(eps))));

    // |U0^(xi)| = sqrt(2) amp |xi_perp| a^0(|xi|), spherical mean of |xi_perp| = pi r / 4,
    // of |xi_perp|^2 = 2 r^2 / 3
    const double amp = r.amplitude;
    const double l1 = std::sqrt(2.0) * amp * kPi * kPi *
                      simpson([&](double s) { return s * s * s * bump_profile(r, s); }, 0.8, 1.2);
    CHECK(d.l1_hat == doctest::Approx(l1).epsilon(0.03));
    const double l2sq = std::pow(2.0 * kPi, 3) * 2.0 * amp * amp * (2.0 / 3.0) * 4.0 * kPi *
                        simpson([&](double s) { return std::pow(s, 4) * std::pow(bump_profile(r, s), 2); }, 0.8,
                                1.2);
    CHECK(d.l2 == doctest::Approx(std::sqrt(l2sq)).epsilon(0.03));

    // the reported maximum is attained at the reported point
    const PhysicalScalarField p = to_physical(U0[0]);
    double m = 0.0;
    for (double x : p.values) m = std::max(m, std::abs(x));
    CHECK(d.linf_first == doctest::Approx(m).epsilon(1e-14));
    const int i1 = static_cast<int>(std::lround(d.linf_first_at[0] / g.dx()));
    const int i2 = static_cast<int>(std::lround(d.linf_first_at[1] / g.dx()));
    const int i3 = static_cast<int>(std::lround(d.linf_first_at[2] / g.dx()));
    CHECK(std::abs(p.values[g.index(i1, i2, i3)]) == doctest::Approx(m).epsilon(1e-14));
}

TEST_CASE("smallness condition") {
    const DataRecipe r = make_recipe(0.2);
    DataNormReport d;
    d.epsilon = 0.2;
    d.l1_hat = 2.0;
    d.l2 = 3.0;
    const double pre = 0.01 + 0.04 + 0.2 * 3.0 * (1.0 + 2.0);
    const ConditionReport c1 = check_condition(d, 0.1, 0.2, r, 0.5, 10.0);
    CHECK(c1.log_lhs == doctest::Approx(std::log(pre) + 0.5 * 3.0 * (2.0 + 0.6)).epsilon(1e-14));
    CHECK(c1.lhs == doctest::Approx(std::exp(c1.log_lhs)).epsilon(1e-13));
    CHECK(c1.pass == (c1.lhs <= 10.0));
    CHECK_FALSE(check_condition(d, 0.1, 0.2, r, 0.5, 0.1 * c1.lhs).pass);
    CHECK(check_condition(d, 0.1, 0.2, r, 0.5, 2.0 * c1.lhs).pass);
    CHECK_THROWS_AS(check_condition(d, 0.1, 0.2, r, 0.0, 1.0), ValidationError);

    // overflow stays finite in log space and fails
    d.l1_hat = 1e4;
    const ConditionReport big = check_condition(d, 0.1, 0.2, r, 1.0, 1e300);
    CHECK(std::isfinite(big.log_lhs));
    CHECK_FALSE(big.pass);

    DataNormReport zero;
    zero.epsilon = 0.2;
    const ConditionReport z = check_condition(zero, 0.0, 0.0, r, 1.0, 1e-9);
    CHECK(z.lhs == 0.0);
    CHECK(z.log_lhs == -std::numeric_limits<double>::infinity());
    CHECK(z.pass);
}
