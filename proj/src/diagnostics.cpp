#include "hallmhd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <fstream>

#include "hallmhd/fft.hpp"
#include "hallmhd/kernels.hpp"
#include "hallmhd/norms.hpp"
#include "hallmhd/operators.hpp"

namespace hallmhd {

namespace {

using kernels::default_exec;

double ratio_or_zero(double num, double den) {
    if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return num / den;
}

// integral a . b dx by physical quadrature.
double quad_dot(const PhysicalVectorField& a, const PhysicalVectorField& b) {
    const GridSpec& g = a.grid();
    const double *a1 = a[0].values.data(), *a2 = a[1].values.data(), *a3 = a[2].values.data();
    const double *b1 = b[0].values.data(), *b2 = b[1].values.data(), *b3 = b[2].values.data();
    const double s = kernels::sum_modes(default_exec(), g.n(), [=](int, int, int, std::size_t p) {
        return a1[p] * b1[p] + a2[p] * b2[p] + a3[p] * b3[p];
    });
    return s * g.volume() / static_cast<double>(g.size());
}

// (|int (X x c) . X|, int |X|^2 |c|).
std::pair<double, double> triple_terms(const PhysicalVectorField& X, const PhysicalVectorField& c) {
    const GridSpec& g = X.grid();
    const double *x1 = X[0].values.data(), *x2 = X[1].values.data(), *x3 = X[2].values.data();
    const double *c1 = c[0].values.data(), *c2 = c[1].values.data(), *c3 = c[2].values.data();
    const double num = kernels::sum_modes(default_exec(), g.n(), [=](int, int, int, std::size_t p) {
        const double y1 = x2[p] * c3[p] - x3[p] * c2[p];
        const double y2 = x3[p] * c1[p] - x1[p] * c3[p];
        const double y3 = x1[p] * c2[p] - x2[p] * c1[p];
        return y1 * x1[p] + y2 * x2[p] + y3 * x3[p];
    });
    const double den = kernels::sum_modes(default_exec(), g.n(), [=](int, int, int, std::size_t p) {
        const double xx = x1[p] * x1[p] + x2[p] * x2[p] + x3[p] * x3[p];
        return xx * std::sqrt(c1[p] * c1[p] + c2[p] * c2[p] + c3[p] * c3[p]);
    });
    const double w = g.volume() / static_cast<double>(g.size());
    return {std::abs(num) * w, den * w};
}

PhysicalVectorField scaled(const PhysicalVectorField& f, double s) {
    PhysicalVectorField out = f;
    for (int a = 0; a < 3; ++a)
        for (double& x : out[a].values) x *= s;
    return out;
}

std::array<PhysicalVectorField, 3> scaled(const std::array<PhysicalVectorField, 3>& g, double s) {
    return {scaled(g[0], s), scaled(g[1], s), scaled(g[2], s)};
}

PhysicalVectorField adv(const PhysicalVectorField& a, const std::array<PhysicalVectorField, 3>& grad_w) {
    PhysicalVectorField out = make_physical_vector(a.grid());
    phys::advect(a, grad_w, out);
    return out;
}

PhysicalVectorField crs(const PhysicalVectorField& a, const PhysicalVectorField& b) {
    PhysicalVectorField out = make_physical_vector(a.grid());
    phys::cross(a, b, out);
    return out;
}

// L^3 sum_k W(k) symbol(|k|^2) |f_k|^2.
double weighted_symbol_sum(const SpectralVectorField& f, const std::function<double(double)>& symbol) {
    const GridSpec& g = f.grid();
    double total = 0.0;
    for (int a = 0; a < 3; ++a) {
        const Complex* c = f[a].data().data();
        total += kernels::sum_modes(default_exec(), g.n(), [&](int i1, int i2, int i3, std::size_t idx) {
            const double w = multi_index_weight(g.k_deriv(i1), g.k_deriv(i2), g.k_deriv(i3));
            return w * symbol(g.k_squared(i1, i2, i3)) * std::norm(c[idx]);
        });
    }
    return g.volume() * total;
}

// ||grad c||_{H^s} with the (1 + |k|^2)^s convention.
double gradient_sobolev(const SpectralVectorField& c, double s) {
    const GridSpec& g = c.grid();
    double total = 0.0;
    for (int a = 0; a < 3; ++a) {
        const Complex* p = c[a].data().data();
        total += kernels::sum_modes(default_exec(), g.n(), [&](int i1, int i2, int i3, std::size_t idx) {
            const double kd = g.k_deriv(i1) * g.k_deriv(i1) + g.k_deriv(i2) * g.k_deriv(i2) +
                              g.k_deriv(i3) * g.k_deriv(i3);
            return std::pow(1.0 + g.k_squared(i1, i2, i3), s) * kd * std::norm(p[idx]);
        });
    }
    return std::sqrt(g.volume() * total);
}

}  // namespace

std::vector<std::array<int, 3>> multi_indices(int lo, int hi) {
    std::vector<std::array<int, 3>> out;
    for (int order = lo; order <= hi; ++order)
        for (int b1 = order; b1 >= 0; --b1)
            for (int b2 = order - b1; b2 >= 0; --b2) out.push_back({b1, b2, order - b1 - b2});
    return out;
}

double multi_index_weight(double k1, double k2, double k3, bool include_zero) {
    const double a = k1 * k1, b = k2 * k2, c = k3 * k3;
    // sum over |beta| <= 3 of a^b1 b^b2 c^b3, grouped by order
    const double o1 = a + b + c;
    const double o2 = a * a + b * b + c * c + a * b + a * c + b * c;
    const double o3 = a * a * a + b * b * b + c * c * c + a * a * b + a * a * c + b * b * a + b * b * c +
                      c * c * a + c * c * b + a * b * c;
    return (include_zero ? 1.0 : 0.0) + o1 + o2 + o3;
}

double weighted_inner(const SpectralVectorField& a, const SpectralVectorField& b, bool include_zero) {
    require_same_grid(a.grid(), b.grid(), "weighted_inner");
    const GridSpec& g = a.grid();
    double total = 0.0;
    for (int comp = 0; comp < 3; ++comp) {
        const Complex* x = a[comp].data().data();
        const Complex* y = b[comp].data().data();
        total += kernels::sum_modes(default_exec(), g.n(), [&](int i1, int i2, int i3, std::size_t idx) {
            const double w = multi_index_weight(g.k_deriv(i1), g.k_deriv(i2), g.k_deriv(i3), include_zero);
            return w * (x[idx].real() * y[idx].real() + x[idx].imag() * y[idx].imag());
        });
    }
    return g.volume() * total;
}

double weighted_h3_squared(const SpectralVectorField& f) { return weighted_inner(f, f, true); }

double background_system_residual(const SpectralVectorField& U0, double t, const PhysicalParams& params) {
    validate(params);
    auto [U, B] = background(U0, t, params);
    auto [F, G] = forcing_FG(U, B, params);
    const SpectralVectorField resU = (-params.mu) * U + params.mu * fractional_power(U, 2.0 * params.alpha) - F;
    const SpectralVectorField resB = (-params.nu) * B - params.nu * laplacian(B) - G;
    return std::max(ratio_or_zero(l2_norm(resU), l2_norm(U)), ratio_or_zero(l2_norm(resB), l2_norm(B)));
}

Lemma31Report lemma31_check(const SpectralVectorField& U0, double epsilon, const PhysicalParams& params,
                            const std::vector<double>& t_samples, double tolerance) {
    validate(params);
    if (!(epsilon > 0.0)) throw ValidationError("lemma31_check needs epsilon > 0");
    if (t_samples.empty()) throw ValidationError("lemma31_check needs at least one time sample");
    const GridSpec& g = U0.grid();

    double cmax = 0.0;
    for (int a = 0; a < 3; ++a)
        for (const Complex& z : U0[a].coeffs()) cmax = std::max(cmax, std::abs(z));
    if (cmax == 0.0) throw ValidationError("lemma31_check: U0 is zero");
    bool annular = true;
    kernels::serial::for_each_mode(g.n(), [&](int i1, int i2, int i3, std::size_t idx) {
        const double m = std::sqrt(std::norm(U0[0].data()[idx]) + std::norm(U0[1].data()[idx]) +
                                   std::norm(U0[2].data()[idx]));
        if (m <= 1e-13 * cmax) return;
        const double k = std::sqrt(g.k_squared(i1, i2, i3));
        if (std::abs(k - 1.0) > epsilon * (1.0 + 1e-12)) annular = false;
    });
    if (!annular) throw ValidationError("lemma31_check: U0 has Fourier content outside the annulus");

    const double L2 = l2_norm(U0);
    const double L1 = spectral_l1(U0);
    const double mu = params.mu, nu = params.nu;
    const double rate = std::min(mu, nu);
    const SpectralVectorField LU0 = fractional_power(U0, 1.0) - U0;
    const double K_f = linf_norm(U0) * sobolev_norm(LU0, 3.0) + sobolev_norm(U0, 3.0) * linf_norm(LU0);

    Lemma31Report report;
    report.epsilon = epsilon;
    for (double t : t_samples) {
        auto [U, B] = background(U0, t, params);
        auto [F, G] = forcing_FG(U, B, params);
        auto [f, gg] = forcing_fg(U, B);
        Lemma31Row row;
        row.t = t;
        row.norms = {sobolev_norm(F, 3.0), sobolev_norm(G, 3.0), sobolev_norm(f, 3.0), sobolev_norm(gg, 3.0)};
        const double decay = std::exp(-rate * t);
        row.stated_shape = {std::max(mu, nu) * decay * epsilon * L2, std::max(mu, nu) * decay * epsilon * L2,
                            decay * epsilon * L2 * L1, decay * epsilon * L2 * L1};
        const SpectralVectorField LB = fractional_power(B, 1.0) - B;
        const double K_g = linf_norm(B) * sobolev_norm(LB, 4.0) + sobolev_norm(B, 4.0) * linf_norm(LB);
        row.term_shape = {mu * std::exp(-mu * t) * epsilon * L2, nu * std::exp(-nu * t) * epsilon * L2,
                          std::abs(std::exp(-2.0 * nu * t) - std::exp(-2.0 * mu * t)) * K_f, K_g};
        for (int i = 0; i < 4; ++i) {
            row.stated_ratio[i] = ratio_or_zero(row.norms[i], row.stated_shape[i]);
            row.term_ratio[i] = ratio_or_zero(row.norms[i], row.term_shape[i]);
        }
        report.rows.push_back(row);
    }

    bool ok = true;
    for (int i = 0; i < 4; ++i) {
        // reference: first sample with a nonzero shape (f vanishes at t = 0)
        double r0 = 0.0;
        for (const Lemma31Row& row : report.rows)
            if (row.term_shape[i] != 0.0) {
                r0 = row.term_ratio[i];
                break;
            }
        double spread = 0.0;
        bool nonincreasing = true;
        for (std::size_t j = 0; j < report.rows.size(); ++j) {
            const Lemma31Row& row = report.rows[j];
            if (row.term_shape[i] == 0.0) {
                if (row.norms[i] != 0.0) spread = std::numeric_limits<double>::infinity();
                continue;
            }
            const double r = row.term_ratio[i];
            spread = std::max(spread, r0 != 0.0 ? std::abs(r - r0) / std::abs(r0) : std::abs(r));
            if (j > 0) {
                const double prev = report.rows[j - 1].stated_ratio[i];
                if (report.rows[j].stated_ratio[i] > prev * (1.0 + tolerance) + 1e-300) nonincreasing = false;
            }
        }
        report.term_spread[i] = spread;
        report.stated_nonincreasing[i] = nonincreasing;
        if (!(spread <= tolerance)) ok = false;
    }

    if (params.alpha == 1.0) {
        auto [F0, G0] = forcing_FG(U0, U0, params);
        report.F_multiplier_ratio = sobolev_norm(F0, 3.0) / (mu * sobolev_norm(U0, 3.0));
        report.F_multiplier_bound = 2.0 * epsilon * (1.0 + epsilon);
        if (!(report.F_multiplier_ratio <= report.F_multiplier_bound)) ok = false;
    }
    report.pass = ok;
    return report;
}

CommutatorResult commutator_check(const SpectralScalarField& g, const SpectralScalarField& f, int m) {
    if (m < 1 || m > 3) throw ValidationError("commutator_check supports m in {1, 2, 3}");
    require_same_grid(g.grid(), f.grid(), "commutator_check");
    const GridSpec& grid = g.grid();
    const int n = grid.n();
    bool banded = true;
    kernels::serial::for_each_mode(n, [&](int i1, int i2, int i3, std::size_t idx) {
        const int top = std::max({std::abs(grid.mode(i1)), std::abs(grid.mode(i2)), std::abs(grid.mode(i3))});
        if (4 * top >= n && (g.data()[idx] != Complex(0.0, 0.0) || f.data()[idx] != Complex(0.0, 0.0)))
            banded = false;
    });
    if (!banded) throw ValidationError("commutator_check: fields must vanish for |m| >= n/4");

    const PhysicalScalarField pg = to_physical(g);
    const PhysicalScalarField pf = to_physical(f);
    auto product = [&](const PhysicalScalarField& a, const PhysicalScalarField& b) {
        PhysicalScalarField out = make_physical(grid);
        for (std::size_t p = 0; p < out.values.size(); ++p) out.values[p] = a.values[p] * b.values[p];
        return to_spectral(out);
    };
    const SpectralScalarField gf = product(pg, pf);

    CommutatorResult r;
    for (const auto& beta : multi_indices(0, m)) {
        const SpectralScalarField Df = derivative(f, beta);
        const SpectralScalarField gDf = product(pg, to_physical(Df));
        r.lhs += l2_norm(derivative(gf, beta) - gDf);
    }
    const SpectralVectorField grad_g = gradient(g);
    r.rhs_core = sobolev_norm(f, m - 1.0) * linf_norm(grad_g) + linf_norm(f) * sobolev_norm(g, m);
    r.ratio = ratio_or_zero(r.lhs, r.rhs_core);
    return r;
}

CancellationResiduals cancellation_residuals(const SpectralVectorField& c, const SpectralVectorField& U,
                                             const SpectralVectorField& B) {
    require_same_grid(c.grid(), U.grid(), "cancellation_residuals");
    require_same_grid(c.grid(), B.grid(), "cancellation_residuals");
    CancellationResiduals r;
    const PhysicalVectorField pc = to_physical(c);
    const SpectralVectorField X = curl(c);
    {
        auto [num, den] = triple_terms(to_physical(X), pc);
        r.triple = ratio_or_zero(num, den);
    }
    for (const auto& beta : multi_indices(0, 3)) {
        auto [num, den] = triple_terms(to_physical(derivative(X, beta)), pc);
        r.dbeta.push_back(ratio_or_zero(num, den));
        r.dbeta_max = std::max(r.dbeta_max, r.dbeta.back());
    }
    const SpectralVectorField bu = advect(B, U);
    const SpectralVectorField ub = advect(U, B);
    r.bU = ratio_or_zero(l2_norm(bu - ub), l2_norm(bu) + l2_norm(ub));
    return r;
}

double hall_energy_residual(const SpectralVectorField& b) {
    const SpectralVectorField h = hall_term(b);
    return ratio_or_zero(std::abs(inner_product(h, b)), l2_norm(h) * l2_norm(b));
}

EnergyRateReport energy_rate_decomposition(const SpectralVectorField& v, const SpectralVectorField& c, double t,
                                           const BackgroundCache& cache, const PhysicalParams& params) {
    require_same_grid(v.grid(), c.grid(), "energy_rate_decomposition");
    require_same_grid(v.grid(), cache.U0().grid(), "energy_rate_decomposition");
    validate(params);
    const double eU = std::exp(-params.mu * t);
    const double eB = std::exp(-params.nu * t);

    const PhysicalVectorField pV = to_physical(v);
    const PhysicalVectorField pC = to_physical(c);
    const auto grad_v = phys::gradient_tensor(v);
    const auto grad_c = phys::gradient_tensor(c);
    const PhysicalVectorField pX = phys::curl_from_gradient(grad_c);
    const PhysicalVectorField pU = scaled(cache.U0_phys(), eU);
    const PhysicalVectorField pB = scaled(cache.U0_phys(), eB);
    const auto grad_U = scaled(cache.grad_U0(), eU);
    const auto grad_B = scaled(cache.grad_U0(), eB);
    const PhysicalVectorField curl_B = scaled(cache.curl_U0_phys(), eB);
    const SpectralVectorField X = curl(c);

    auto S = [](const PhysicalVectorField& p) { return phys::to_spectral_dealiased(p); };
    auto wi = [](const SpectralVectorField& a, const SpectralVectorField& b, bool zero) {
        return weighted_inner(a, b, zero);
    };

    const double R_vv = wi(S(adv(pV, grad_v)), v, false);
    const double R_vc = wi(S(adv(pV, grad_c)), c, false);
    const double R_cc = wi(S(adv(pC, grad_c)), v, false);
    const double R_cv = wi(S(adv(pC, grad_v)), c, false);
    const SpectralVectorField H = S(crs(pX, pC));

    EnergyRateReport r;
    r.I[2] = -wi(H, X, false);
    r.I[3] = -wi(S(adv(pU, grad_v)), v, false) - wi(S(adv(pU, grad_c)), c, false);
    r.I[4] = wi(S(adv(pB, grad_c)), v, false) + wi(S(adv(pB, grad_v)), c, false);
    r.I[5] = wi(S(adv(pC, grad_B)), v, true) - wi(S(adv(pV, grad_B)), c, true);
    r.I[6] = wi(S(adv(pC, grad_U)), c, true) - wi(S(adv(pV, grad_U)), v, true);
    r.I[7] = -wi(S(crs(pX, pB)), X, false);
    r.I[8] = -wi(S(crs(curl_B, pC)), X, true);
    {
        auto [U, B] = background(cache.U0(), t, params);
        auto [F, G] = forcing_FG(U, B, params);
        auto [f, g] = forcing_fg(cache, t, params);
        r.I[9] = wi(f - F, v, true) + wi(g - G, c, true);
    }

    // Transport parts of the commutators, which integrate to zero, and the
    // commutator form of the Hall term, both beta by beta.
    double S_vv = 0.0, S_vc = 0.0, S_cc = 0.0, S_cv = 0.0, I3_comm = 0.0;
    const SpectralVectorField cX = S(crs(pC, pX));
    {
        auto [num, den] = triple_terms(pX, pC);
        r.hall_cancel = ratio_or_zero(num, den);
    }
    for (const auto& beta : multi_indices(1, 3)) {
        const SpectralVectorField Vb = derivative(v, beta);
        const SpectralVectorField Cb = derivative(c, beta);
        const PhysicalVectorField pVb = to_physical(Vb);
        const PhysicalVectorField pCb = to_physical(Cb);
        const auto grad_Vb = phys::gradient_tensor(Vb);
        const auto grad_Cb = phys::gradient_tensor(Cb);
        S_vv += quad_dot(adv(pV, grad_Vb), pVb);
        S_vc += quad_dot(adv(pV, grad_Cb), pCb);
        S_cc += quad_dot(adv(pC, grad_Cb), pVb);
        S_cv += quad_dot(adv(pC, grad_Vb), pCb);

        const PhysicalVectorField pXb = phys::curl_from_gradient(grad_Cb);
        PhysicalVectorField comm = to_physical(derivative(cX, beta));
        phys::cross(pC, pXb, comm, -1.0, true);
        I3_comm += quad_dot(comm, pXb);

        auto [num, den] = triple_terms(pXb, pC);
        r.hall_cancel = std::max(r.hall_cancel, ratio_or_zero(num, den));
    }
    r.I[0] = -(R_vv - S_vv) - (R_vc - S_vc);
    r.I[1] = (R_cc - S_cc) + (R_cv - S_cv);
    r.I3_commutator = I3_comm;
    r.I3_gap = std::abs(I3_comm - r.I[2]);

    const Rhs rhs = rhs_perturbation(v, c, t, cache, params);
    r.lhs_rate = wi(rhs.first, v, true) + wi(rhs.second, c, true);
    const double alpha = params.alpha;
    r.v_dissipation = params.mu * weighted_symbol_sum(v, [alpha](double k2) {
                          if (alpha == 0.0) return 1.0;
                          return k2 > 0.0 ? std::pow(k2, alpha) : 0.0;
                      });
    r.c_dissipation = params.nu * weighted_symbol_sum(c, [](double k2) { return k2; });

    double sum = 0.0;
    for (double x : r.I) {
        sum += x;
        r.scale = std::max(r.scale, std::abs(x));
    }
    r.residual = std::abs(r.lhs_rate + r.v_dissipation + r.c_dissipation - sum);
    r.relative_residual = r.scale > 0.0 ? r.residual / r.scale : r.residual;
    return r;
}

BootstrapReport bootstrap_monitor(const std::vector<double>& times, const std::vector<double>& energies,
                                  double eta) {
    if (times.empty()) throw ValidationError("bootstrap_monitor: empty series");
    if (times.size() != energies.size()) throw ValidationError("bootstrap_monitor: size mismatch");
    if (!(eta > 0.0)) throw ValidationError("bootstrap_monitor: eta must be positive");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw ValidationError("bootstrap_monitor: times must increase");
    BootstrapReport r;
    r.eta = eta;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        r.max_energy = std::max(r.max_energy, energies[i]);
        if (r.held && energies[i] > eta) {
            r.held = false;
            r.gamma_index = static_cast<long>(i);
            r.gamma_estimate = times[i];
        }
    }
    return r;
}

ReformulationReport reformulation_check(const Trajectory& full, const Trajectory& pert,
                                        const SpectralVectorField& U0, const PhysicalParams& params) {
    if (full.samples.size() != pert.samples.size())
        throw ValidationError("reformulation_check: trajectories have different sample counts");
    ReformulationReport r;
    for (std::size_t i = 0; i < full.samples.size(); ++i) {
        const State& a = full.samples[i];
        const State& b = pert.samples[i];
        if (a.system != SystemKind::Full || b.system != SystemKind::Perturbation)
            throw ValidationError("reformulation_check: expected a full and a perturbation trajectory");
        if (std::abs(a.t - b.t) > 1e-12 * std::max(1.0, std::abs(a.t)))
            throw ValidationError("reformulation_check: mismatched sampling");
        auto [U, B] = background(U0, a.t, params);
        const double d = sobolev_norm(a.first - (b.first + U), 3.0) + sobolev_norm(a.second - (b.second + B), 3.0);
        r.times.push_back(a.t);
        r.deviation.push_back(d);
        r.max_deviation = std::max(r.max_deviation, d);
    }
    return r;
}

TimeSeriesRecord make_record(const SpectralVectorField& v, const SpectralVectorField& c, double t,
                             const BackgroundCache& cache, const PhysicalParams& params, double condition_lhs) {
    TimeSeriesRecord rec;
    rec.t = t;
    rec.v_h3 = sobolev_norm(v, 3.0);
    rec.c_h3 = sobolev_norm(c, 3.0);
    rec.v_diss = sobolev_norm(fractional_power(v, params.alpha), 3.0);
    rec.c_diss = gradient_sobolev(c, 3.0);
    auto [U, B] = background(cache.U0(), t, params);
    rec.u_h3 = sobolev_norm(v + U, 3.0);
    rec.b_h3 = sobolev_norm(c + B, 3.0);
    const EnergyRateReport e = energy_rate_decomposition(v, c, t, cache, params);
    rec.energy_residual = e.relative_residual;
    rec.hall_cancel = e.hall_cancel;
    rec.I = e.I;
    rec.lhs_rate = e.lhs_rate;
    const SpectralVectorField bu = advect(B, U);
    const SpectralVectorField ub = advect(U, B);
    rec.bU_cancel = ratio_or_zero(l2_norm(bu - ub), l2_norm(bu) + l2_norm(ub));
    rec.weighted_energy = weighted_h3_squared(v) + weighted_h3_squared(c);
    rec.condition_lhs = condition_lhs;
    return rec;
}

TimeSeriesRecord make_record(const State& state, const BackgroundCache& cache, const PhysicalParams& params,
                             double condition_lhs) {
    switch (state.system) {
        case SystemKind::Perturbation:
            return make_record(state.first, state.second, state.t, cache, params, condition_lhs);
        case SystemKind::Full: {
            auto [U, B] = background(cache.U0(), state.t, params);
            return make_record(state.first - U, state.second - B, state.t, cache, params, condition_lhs);
        }
        case SystemKind::Background:
            break;
    }
    throw ValidationError("make_record: background states carry no perturbation");
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_timeseries_csv(const std::filesystem::path& path, const std::vector<TimeSeriesRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "t,v_h3,c_h3,u_h3,b_h3,v_diss,c_diss,energy_residual,hall_cancel,bU_cancel";
    for (int i = 1; i <= 10; ++i) out << ",I_" << i;
    out << '\n';
    for (const auto& r : records) {
        out << format_double(r.t) << ',' << format_double(r.v_h3) << ',' << format_double(r.c_h3) << ','
            << format_double(r.u_h3) << ',' << format_double(r.b_h3) << ',' << format_double(r.v_diss) << ','
            << format_double(r.c_diss) << ',' << format_double(r.energy_residual) << ','
            << format_double(r.hall_cancel) << ',' << format_double(r.bU_cancel);
        for (double x : r.I) out << ',' << format_double(x);
        out << '\n';
    }
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace hallmhd
