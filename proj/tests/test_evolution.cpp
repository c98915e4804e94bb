#include <cmath>

#include "doctest.h"
#include "hallmhd/evolution.hpp"
#include "hallmhd/fft.hpp"
#include "hallmhd/initial_data.hpp"
#include "hallmhd/norms.hpp"
#include "hallmhd/operators.hpp"
#include "hallmhd/random_fields.hpp"
#include "support.hpp"

using namespace hallmhd;
using hallmhd::test::max_abs;
using hallmhd::test::rel_l2;

namespace {

GridSpec grid16() { return make_grid(16, 2.0 * kPi); }

SpectralVectorField beltrami_background(const GridSpec& g, std::uint64_t seed, double amp = 0.5) {
    SpectralVectorField U0 = build_U0(random_solenoidal_field(g, seed, 1.0, 3));
    U0 *= amp / l2_norm(U0);
    return U0;
}

// (0, cos x1, -sin x1): curl equals the field, |k| = 1 on a 2 pi box.
SpectralVectorField helical_mode(const GridSpec& g, double amp = 1.0) {
    PhysicalVectorField p = make_physical_vector(g);
    const int n = g.n();
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            for (int i3 = 0; i3 < n; ++i3) {
                const std::size_t idx = g.index(i1, i2, i3);
                const double x = i1 * g.dx();
                p[1].values[idx] = amp * std::cos(x);
                p[2].values[idx] = -amp * std::sin(x);
            }
    return to_spectral(p);
}

}  // namespace

TEST_CASE("background is the exact exponential decay") {
    const GridSpec g = grid16();
    const SpectralVectorField U0 = beltrami_background(g, 1);
    PhysicalParams p{1.0, 0.5, 1.0};

    auto [U, B] = background(U0, 0.0, p);
    CHECK(rel_l2(U, U0) == 0.0);
    CHECK(rel_l2(B, U0) == 0.0);

    auto [Uh, Bh] = background(U0, std::log(2.0), p);
    CHECK(rel_l2(Uh, 0.5 * U0) < 1e-15);

    CHECK_THROWS_AS(background(U0, -1.0, p), ValidationError);

    for (double alpha : {0.0, 0.5, 1.0}) {
        p.alpha = alpha;
        for (double t : {0.0, 0.3, 2.0}) {
            auto [Ut, Bt] = background(U0, t, p);
            auto [F, G] = forcing_FG(Ut, Bt, p);
            // d/dt U = -mu U analytically
            const SpectralVectorField resU = (-p.mu) * Ut + p.mu * fractional_power(Ut, 2.0 * alpha) - F;
            const SpectralVectorField resB = (-p.nu) * Bt - p.nu * laplacian(Bt) - G;
            CHECK(l2_norm(resU) <= 1e-12 * l2_norm(Ut));
            CHECK(l2_norm(resB) <= 1e-12 * l2_norm(Bt));
        }
    }
}

TEST_CASE("forcing F and G") {
    const GridSpec g = grid16();
    const SpectralVectorField h = helical_mode(g);
    PhysicalParams p{2.0, 3.0, 1.0};
    auto [F, G] = forcing_FG(h, h, p);
    CHECK(max_abs(F) < 1e-14);
    CHECK(max_abs(G) < 1e-14);

    p.alpha = 0.0;
    const SpectralVectorField U0 = beltrami_background(g, 2);
    auto [F0, G0] = forcing_FG(U0, U0, p);
    CHECK(max_abs(F0) == 0.0);

    // annulus data with alpha = 1/2: the multiplier |k| - 1 is at most eps
    const DataRecipe r = make_recipe(0.2);
    const GridSpec ga = make_grid(32, 16.0 * kPi);
    const SpectralVectorField Ua = build_U0(build_V0(r, ga, {0.625, false}));
    p = {1.5, 1.0, 0.5};
    auto [Fa, Ga] = forcing_FG(Ua, Ua, p);
    CHECK(sobolev_norm(Fa, 3.0) <= 2.0 * p.mu * r.epsilon * sobolev_norm(Ua, 3.0));
}

TEST_CASE("forcing f and g") {
    const GridSpec g = grid16();
    const SpectralVectorField U0 = beltrami_background(g, 3);
    auto [f0, g0] = forcing_fg(U0, U0);
    CHECK(max_abs(f0) == 0.0);

    const SpectralVectorField h = helical_mode(g, 0.7);
    auto [fh, gh] = forcing_fg(h, h);
    CHECK(max_abs(gh) < 1e-14);

    // Lambda form against B.grad B - U.grad U - grad(|B|^2 - |U|^2)/2 after projection
    const PhysicalParams p{1.0, 0.3, 1.0};
    auto [U, B] = background(U0, 0.7, p);
    auto [f, gg] = forcing_fg(U, B);
    const SpectralVectorField defining = advect(B, B) - advect(U, U);
    const SpectralScalarField energy_gap = pointwise_product(B[0], B[0]) + pointwise_product(B[1], B[1]) +
                                           pointwise_product(B[2], B[2]) - pointwise_product(U[0], U[0]) -
                                           pointwise_product(U[1], U[1]) - pointwise_product(U[2], U[2]);
    const SpectralVectorField full_defining = defining - 0.5 * gradient(energy_gap);
    CHECK(rel_l2(leray_project(f), leray_project(full_defining)) < 1e-10);
    CHECK(rel_l2(f, full_defining) < 1e-10);
    CHECK(l2_norm(divergence(gg)) <= 1e-12 * l2_norm(gg));

    // cached form agrees with the direct one
    BackgroundCache cache(U0);
    auto [fc, gc] = forcing_fg(cache, 0.7, p);
    CHECK(rel_l2(fc, f) < 1e-12);
    CHECK(rel_l2(gc, gg) < 1e-12);
}

TEST_CASE("coupling terms") {
    const GridSpec g = grid16();
    const SpectralVectorField zero(g);
    const SpectralVectorField U0 = beltrami_background(g, 4);
    auto z = coupling_terms(zero, zero, U0, U0);
    CHECK(max_abs(z.f1) == 0.0);
    CHECK(max_abs(z.g1) == 0.0);
    CHECK(max_abs(z.g2) == 0.0);

    const SpectralVectorField w = random_solenoidal_field(g, 5, 0.1);
    auto same = coupling_terms(w, w, U0, U0);
    CHECK(max_abs(same.f1) < 1e-15);
    auto mixed = coupling_terms(w, random_solenoidal_field(g, 6, 0.1), U0, 0.5 * U0);
    CHECK(l2_norm(divergence(mixed.g2)) <= 1e-12 * l2_norm(mixed.g2));
}

TEST_CASE("advection summand against centred finite differences") {
    // error of the second-order stencil must drop by about 4 when n doubles
    auto error_at = [](int n) {
        const GridSpec g = make_grid(n, 2.0 * kPi);
        PhysicalVectorField pa = make_physical_vector(g);
        PhysicalVectorField pw = make_physical_vector(g);
        for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2)
                for (int i3 = 0; i3 < n; ++i3) {
                    const std::size_t p = g.index(i1, i2, i3);
                    const double x = i1 * g.dx(), y = i2 * g.dx(), z = i3 * g.dx();
                    pa[0].values[p] = std::sin(y) + std::cos(z);
                    pa[1].values[p] = std::sin(z);
                    pa[2].values[p] = std::cos(x);
                    pw[0].values[p] = std::sin(x + y);
                    pw[1].values[p] = std::cos(2 * z);
                    pw[2].values[p] = std::sin(x) * std::cos(y);
                }
        const PhysicalVectorField spectral = to_physical(advect(to_spectral(pa), to_spectral(pw)));
        const double h = g.dx();
        double err = 0.0;
        for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2)
                for (int i3 = 0; i3 < n; ++i3) {
                    const std::size_t p = g.index(i1, i2, i3);
                    const std::size_t plus[3] = {g.index((i1 + 1) % n, i2, i3), g.index(i1, (i2 + 1) % n, i3),
                                                 g.index(i1, i2, (i3 + 1) % n)};
                    const std::size_t minus[3] = {g.index((i1 + n - 1) % n, i2, i3),
                                                  g.index(i1, (i2 + n - 1) % n, i3),
                                                  g.index(i1, i2, (i3 + n - 1) % n)};
                    for (int i = 0; i < 3; ++i) {
                        double fd = 0.0;
                        for (int j = 0; j < 3; ++j)
                            fd += pa[j].values[p] * (pw[i].values[plus[j]] - pw[i].values[minus[j]]) / (2.0 * h);
                        err = std::max(err, std::abs(fd - spectral[i].values[p]));
                    }
                }
        return err;
    };
    const double e1 = error_at(32);
    const double e2 = error_at(64);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("Hall term") {
    const GridSpec g = grid16();
    SpectralVectorField constant(g);
    constant[0].at(0, 0, 0) = 1.0;
    constant[2].at(0, 0, 0) = -2.0;
    CHECK(max_abs(hall_term(constant)) == 0.0);
    CHECK(max_abs(hall_term(helical_mode(g, 2.0))) < 1e-13);

    for (std::uint64_t seed = 10; seed < 15; ++seed) {
        const SpectralVectorField b = random_solenoidal_field(g, seed);
        const SpectralVectorField h = hall_term(b);
        CHECK(std::abs(inner_product(h, b)) <= 1e-11 * l2_norm(h) * l2_norm(b));
        CHECK(l2_norm(divergence(h)) <= 1e-12 * l2_norm(h));
    }
}

TEST_CASE("full right-hand side") {
    const GridSpec g = grid16();
    const PhysicalParams p{0.7, 0.4, 0.75};
    const SpectralVectorField zero(g);
    const Rhs r0 = rhs_full(zero, zero, p);
    CHECK(max_abs(r0.first) == 0.0);
    CHECK(max_abs(r0.second) == 0.0);

    const SpectralVectorField u = random_solenoidal_field(g, 20);
    const Rhs aligned = nonlinear_full(u, u, {true, false, true, true});
    CHECK(max_abs(aligned.first) < 1e-15);

    for (std::uint64_t seed = 21; seed < 25; ++seed) {
        const SpectralVectorField a = random_solenoidal_field(g, seed);
        const SpectralVectorField b = random_solenoidal_field(g, seed + 100, 0.8);
        const Rhs r = rhs_full(a, b, p);
        const double rate = inner_product(r.first, a) + inner_product(r.second, b);
        const double lam = sobolev_norm(fractional_power(a, p.alpha), 0.0);
        double grad_b = 0.0;
        for (int j = 0; j < 3; ++j) {
            const double gj = l2_norm(derivative(b, std::array<int, 3>{j == 0, j == 1, j == 2}));
            grad_b += gj * gj;
        }
        const double expected = -p.mu * lam * lam - p.nu * grad_b;
        CHECK(std::abs(rate - expected) <= 1e-10 * std::abs(expected));
    }
}

TEST_CASE("perturbation right-hand side") {
    const GridSpec g = grid16();
    const PhysicalParams p{0.9, 0.6, 0.5};
    const SpectralVectorField U0 = beltrami_background(g, 30);
    const BackgroundCache cache(U0);
    const SpectralVectorField zero(g);
    const double t = 0.4;

    auto [U, B] = background(U0, t, p);
    auto [F, G] = forcing_FG(U, B, p);
    auto [f, gg] = forcing_fg(U, B);
    const Rhs r0 = rhs_perturbation(zero, zero, t, cache, p);
    CHECK(rel_l2(r0.first, leray_project(f - F)) < 1e-12);
    CHECK(rel_l2(r0.second, gg - G) < 1e-12);

    for (std::uint64_t seed = 31; seed < 36; ++seed) {
        const SpectralVectorField v = random_solenoidal_field(g, seed, 0.3);
        const SpectralVectorField c = random_solenoidal_field(g, seed + 50, 0.2);
        const Rhs full = rhs_full(v + U, c + B, p);
        const Rhs pert = rhs_perturbation(v, c, t, cache, p);
        CHECK(rel_l2(full.first, pert.first + (-p.mu) * U) < 1e-10);
        CHECK(rel_l2(full.second, pert.second + (-p.nu) * B) < 1e-10);
    }

    // with only the dissipation left, dc is the heat operator
    const SpectralVectorField c = random_solenoidal_field(g, 40);
    const Rhs heat = rhs_perturbation(random_solenoidal_field(g, 41), c, t, cache, p, {false, false, false, false});
    CHECK(rel_l2(heat.second, p.nu * laplacian(c)) < 1e-14);
}

TEST_CASE("CFL step") {
    SchemeParams s;
    s.dt_cap = 0.05;
    const GridSpec g16 = make_grid(16, 2.0 * kPi);
    const GridSpec g32 = make_grid(32, 2.0 * kPi);
    CHECK(cfl_dt(SpectralVectorField(g16), SpectralVectorField(g16), s) == 0.05);

    // u = (cos x2, 0, 0) peaks at a grid point on both grids
    auto mode = [](const GridSpec& g, double amp) {
        SpectralVectorField f(g);
        f[0].at(0, 1, 0) = 0.5 * amp;
        f[0].at(0, g.n() - 1, 0) = 0.5 * amp;
        return f;
    };
    s.dt_cap = 1e9;
    const double a16 = cfl_dt(mode(g16, 3.0), SpectralVectorField(g16), s);
    const double a32 = cfl_dt(mode(g32, 3.0), SpectralVectorField(g32), s);
    CHECK(a16 / a32 == doctest::Approx(2.0));
    const double h16 = cfl_dt(SpectralVectorField(g16), mode(g16, 3.0), s);
    const double h32 = cfl_dt(SpectralVectorField(g32), mode(g32, 3.0), s);
    CHECK(h16 / h32 == doctest::Approx(4.0));
    CHECK(h16 == doctest::Approx(s.cfl_hall * g16.dx() * g16.dx() / 3.0));

    SpectralVectorField bad = mode(g16, 1.0);
    bad[1].at(0, 0, 1) = Complex(std::nan(""), 0.0);
    CHECK_THROWS_AS(cfl_dt(bad, SpectralVectorField(g16), s), ValidationError);
}

TEST_CASE("CFL step is stable where eight times it blows up") {
    const GridSpec g = make_grid(16, 2.0 * kPi);
    const PhysicalParams p{1e-4, 1e-4, 1.0};
    SpectralVectorField u = random_solenoidal_field(g, 60, 1e-3);
    SpectralVectorField b = random_solenoidal_field(g, 61, 1e-3);
    b[2].at(0, 0, 0) = 1.0;  // mean field along x3
    SchemeParams s;
    s.dt_cap = 1.0;
    const double dt = cfl_dt(u, b, s);

    const State s0{SystemKind::Full, 0.0, u, b};
    s.dt = dt;
    s.T = 400 * dt;
    s.sample_stride = 1000000;
    const Trajectory stable = integrate(s0, p, s);
    CHECK(state_h3(stable.final()) < 2.0 * state_h3(s0));

    s.dt = 8.0 * dt;
    s.T = 50 * s.dt;
    CHECK_THROWS_AS(integrate(s0, p, s), BlowUpError);
}

TEST_CASE("integrating factor is exact on the linear part") {
    const GridSpec g = grid16();
    const PhysicalParams p{0.8, 0.3, 0.6};
    const SpectralVectorField u0 = random_solenoidal_field(g, 70);
    const SpectralVectorField b0 = random_solenoidal_field(g, 71);
    SchemeParams s;
    s.T = 2.0;
    s.terms = {false, false, false, false};
    for (double dt : {0.7, 0.05}) {
        s.dt = dt;
        const Trajectory traj = integrate({SystemKind::Full, 0.0, u0, b0}, p, s);
        CHECK(traj.final().t == 2.0);
        const SpectralVectorField eu =
            radial_multiplier(u0, [&](double k) { return std::exp(-p.mu * std::pow(k * k, p.alpha) * 2.0); });
        const SpectralVectorField eb = radial_multiplier(b0, [&](double k) { return std::exp(-p.nu * k * k * 2.0); });
        CHECK(rel_l2(traj.final().first, eu) < 1e-13);
        CHECK(rel_l2(traj.final().second, eb) < 1e-13);
    }

    // background system: e^{-mu t} U0 and e^{-nu t} U0 for any step
    const SpectralVectorField U0 = beltrami_background(g, 72);
    for (double dt : {0.3, 2.0, 1e-2}) {
        s.dt = dt;
        const Trajectory traj = integrate({SystemKind::Background, 0.0, U0, U0}, p, s);
        auto [U, B] = background(U0, 2.0, p);
        CHECK(rel_l2(traj.final().first, U) < 1e-12);
        CHECK(rel_l2(traj.final().second, B) < 1e-12);
    }
}

TEST_CASE("trajectory bookkeeping and solenoidality") {
    const GridSpec g = grid16();
    const PhysicalParams p{0.5, 0.5, 1.0};
    const State s0{SystemKind::Full, 0.0, random_solenoidal_field(g, 80, 0.5), random_solenoidal_field(g, 81, 0.5)};
    SchemeParams s;
    s.dt = 0.01;
    s.T = 0.095;
    s.sample_stride = 3;
    std::size_t calls = 0;
    double worst_div = 0.0;
    const Trajectory traj = integrate(s0, p, s, nullptr, [&](const State& st, std::size_t) {
        ++calls;
        worst_div = std::max(worst_div, l2_norm(divergence(st.first)) / l2_norm(st.first));
        worst_div = std::max(worst_div, l2_norm(divergence(st.second)) / l2_norm(st.second));
    });
    CHECK(traj.steps == 10);
    CHECK(calls == 11);
    CHECK(traj.samples.front().t == 0.0);
    CHECK(traj.final().t == doctest::Approx(0.095).epsilon(1e-15));
    CHECK(traj.samples.size() == 5);  // 0, 3, 6, 9, final
    CHECK(worst_div <= 1e-10);

    s.T = 0.0;
    CHECK(integrate(s0, p, s).samples.size() == 1);
}

TEST_CASE("perturbation run with a vanishing background matches the full run") {
    const GridSpec g = grid16();
    const PhysicalParams p{0.5, 0.5, 1.0};
    const SpectralVectorField v0 = random_solenoidal_field(g, 90, 0.05);
    const SpectralVectorField c0 = random_solenoidal_field(g, 91, 0.05);
    const BackgroundCache cache{SpectralVectorField(g)};
    SchemeParams s;
    s.dt = 0.02;
    s.T = 1.0;
    const Trajectory full = integrate({SystemKind::Full, 0.0, v0, c0}, p, s);
    const Trajectory pert = integrate({SystemKind::Perturbation, 0.0, v0, c0}, p, s, &cache);
    const double dev = sobolev_norm(full.final().first - pert.final().first, 3.0) +
                       sobolev_norm(full.final().second - pert.final().second, 3.0);
    CHECK(dev <= 1e-8);
}

TEST_CASE("blow-up on non-finite values") {
    const GridSpec g = grid16();
    SpectralVectorField u = random_solenoidal_field(g, 95);
    u[0].at(1, 0, 0) = Complex(std::numeric_limits<double>::infinity(), 0.0);
    SchemeParams s;
    s.dt = 0.01;
    s.T = 0.05;
    CHECK_THROWS_AS(integrate({SystemKind::Full, 0.0, u, SpectralVectorField(g)}, PhysicalParams{}, s), BlowUpError);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(validate(PhysicalParams{0.0, 1.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(validate(PhysicalParams{1.0, -1.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(validate(PhysicalParams{1.0, 1.0, 1.5}), ValidationError);
    SchemeParams s;
    s.cfl_hall = 1.5;
    CHECK_THROWS_AS(validate(s), ValidationError);
    s = {};
    s.sample_stride = 0;
    CHECK_THROWS_AS(validate(s), ValidationError);
}

TEST_CASE("pressure recovery") {
    const GridSpec g = make_grid(8, 2.0 * kPi);
    const SpectralVectorField u = random_solenoidal_field(g, 100);
    CHECK(max_abs(recover_pressure(u, u)) < 1e-14);

    // Taylor-Green: p = (cos 2x1 + cos 2x2) / 4
    PhysicalVectorField tg = make_physical_vector(g);
    PhysicalScalarField expected = make_physical(g);
    for (int i1 = 0; i1 < 8; ++i1)
        for (int i2 = 0; i2 < 8; ++i2)
            for (int i3 = 0; i3 < 8; ++i3) {
                const std::size_t idx = g.index(i1, i2, i3);
                const double x = i1 * g.dx(), y = i2 * g.dx();
                tg[0].values[idx] = std::sin(x) * std::cos(y);
                tg[1].values[idx] = -std::cos(x) * std::sin(y);
                expected.values[idx] = 0.25 * (std::cos(2 * x) + std::cos(2 * y));
            }
    const SpectralScalarField pres = recover_pressure(to_spectral(tg), SpectralVectorField(g));
    CHECK(rel_l2(pres, to_spectral(expected)) < 1e-13);

    // grad p + P[N] rebuilds the unprojected nonlinearity
    const GridSpec g16 = grid16();
    const SpectralVectorField a = random_solenoidal_field(g16, 101);
    const SpectralVectorField b = random_solenoidal_field(g16, 102);
    const SpectralVectorField N = advect(b, b) - advect(a, a);
    const SpectralVectorField rebuilt = gradient(recover_pressure(a, b)) + leray_project(N);
    CHECK(rel_l2(rebuilt, N) < 1e-10);
}
