#include "hallmhd/evolution.hpp"

#include <cmath>
#include <sstream>

#include "hallmhd/fft.hpp"
#include "hallmhd/kernels.hpp"
#include "hallmhd/norms.hpp"
#include "hallmhd/operators.hpp"

namespace hallmhd {

namespace {

using kernels::default_exec;

bool finite(double x) { return std::isfinite(x); }

// Symbol of Lambda^{2 alpha} at |k|^2 = k2, matching fractional_power.
double lambda_2alpha(double k2, double alpha) {
    if (alpha == 0.0) return 1.0;
    return k2 > 0.0 ? std::pow(k2, alpha) : 0.0;
}

// Physical samples of several spectral vector fields in one batch.
std::vector<PhysicalVectorField> physical_batch(std::initializer_list<const SpectralVectorField*> fields) {
    std::vector<PhysicalVectorField> out;
    std::vector<const Complex*> in;
    std::vector<double*> dst;
    out.reserve(fields.size());
    for (const SpectralVectorField* f : fields) {
        out.push_back(make_physical_vector(f->grid()));
        for (int a = 0; a < 3; ++a) {
            in.push_back((*f)[a].data().data());
            dst.push_back(out.back()[a].values.data());
        }
    }
    if (!out.empty()) fft_detail::inverse_real_batch(out.front().grid(), in, dst);
    return out;
}

std::vector<SpectralVectorField> spectral_batch(std::initializer_list<const PhysicalVectorField*> fields) {
    std::vector<SpectralVectorField> out;
    std::vector<const double*> in;
    std::vector<Complex*> dst;
    out.reserve(fields.size());
    for (const PhysicalVectorField* f : fields) {
        out.emplace_back(f->grid());
        for (int a = 0; a < 3; ++a) {
            in.push_back((*f)[a].values.data());
            dst.push_back(out.back()[a].data().data());
        }
    }
    if (!out.empty()) fft_detail::forward_real_batch(out.front().grid(), in, dst);
    for (auto& f : out) dealias(f);
    return out;
}

// Linear dissipation applied to a right-hand side: first -= mu Lambda^{2a} u, second -= nu |k|^2 b.
void add_dissipation(Rhs& rhs, const SpectralVectorField& u, const SpectralVectorField& b,
                     const PhysicalParams& params) {
    const GridSpec& g = u.grid();
    for (int a = 0; a < 3; ++a) {
        Complex* du = rhs.first[a].data().data();
        Complex* db = rhs.second[a].data().data();
        const Complex* pu = u[a].data().data();
        const Complex* pb = b[a].data().data();
        kernels::for_each_mode(default_exec(), g.n(), [&](int i1, int i2, int i3, std::size_t idx) {
            const double k2 = g.k_squared(i1, i2, i3);
            du[idx] -= params.mu * lambda_2alpha(k2, params.alpha) * pu[idx];
            db[idx] -= params.nu * k2 * pb[idx];
        });
    }
}

}  // namespace

void validate(const PhysicalParams& params) {
    if (!(params.mu > 0.0) || !finite(params.mu)) throw ValidationError("mu must be positive");
    if (!(params.nu > 0.0) || !finite(params.nu)) throw ValidationError("nu must be positive");
    if (!(params.alpha >= 0.0 && params.alpha <= 1.0)) throw ValidationError("alpha must lie in [0, 1]");
}

void validate(const SchemeParams& scheme) {
    if (!(scheme.dt >= 0.0) || !finite(scheme.dt)) throw ValidationError("dt must be non-negative (0 = CFL)");
    if (!(scheme.T >= 0.0) || !finite(scheme.T)) throw ValidationError("T must be non-negative");
    if (!(scheme.cfl_advect > 0.0 && scheme.cfl_advect <= 1.0))
        throw ValidationError("cfl_advect must lie in (0, 1]");
    if (!(scheme.cfl_hall > 0.0 && scheme.cfl_hall <= 1.0)) throw ValidationError("cfl_hall must lie in (0, 1]");
    if (!(scheme.dt_cap > 0.0)) throw ValidationError("dt_cap must be positive");
    if (!(scheme.blowup_factor > 1.0)) throw ValidationError("blowup_factor must exceed 1");
    if (scheme.sample_stride < 1) throw ValidationError("sample_stride must be at least 1");
}

const char* to_string(SystemKind kind) {
    switch (kind) {
        case SystemKind::Full:
            return "full";
        case SystemKind::Perturbation:
            return "perturbation";
        case SystemKind::Background:
            return "background";
    }
    return "unknown";
}

std::pair<SpectralVectorField, SpectralVectorField> background(const SpectralVectorField& U0, double t,
                                                               const PhysicalParams& params) {
    if (!(t >= 0.0)) throw ValidationError("background needs t >= 0");
    return {std::exp(-params.mu * t) * U0, std::exp(-params.nu * t) * U0};
}

std::pair<SpectralVectorField, SpectralVectorField> forcing_FG(const SpectralVectorField& U,
                                                               const SpectralVectorField& B,
                                                               const PhysicalParams& params) {
    const double alpha = params.alpha;
    SpectralVectorField F =
        radial_multiplier(U, [&](double k) { return params.mu * (lambda_2alpha(k * k, alpha) - 1.0); });
    SpectralVectorField G = radial_multiplier(B, [&](double k) { return params.nu * (k * k - 1.0); });
    return {std::move(F), std::move(G)};
}

std::pair<SpectralVectorField, SpectralVectorField> forcing_fg(const SpectralVectorField& U,
                                                               const SpectralVectorField& B) {
    require_same_grid(U.grid(), B.grid(), "forcing_fg");
    const SpectralVectorField LB = fractional_power(B, 1.0) - B;
    const SpectralVectorField LU = fractional_power(U, 1.0) - U;
    const SpectralVectorField WB = pointwise_cross(LB, B);
    SpectralVectorField f = WB - pointwise_cross(LU, U);
    SpectralVectorField g = -curl(WB);
    return {std::move(f), std::move(g)};
}

CouplingTerms coupling_terms(const SpectralVectorField& v, const SpectralVectorField& c,
                             const SpectralVectorField& U, const SpectralVectorField& B) {
    require_same_grid(v.grid(), c.grid(), "coupling_terms");
    require_same_grid(v.grid(), U.grid(), "coupling_terms");
    require_same_grid(v.grid(), B.grid(), "coupling_terms");
    CouplingTerms out;
    out.f1 = advect(B, c) + advect(c, B) - advect(U, v) - advect(v, U);
    out.g1 = advect(B, v) + advect(c, U) - advect(U, c) - advect(v, B);
    out.g2 = -curl(pointwise_cross(curl(c), B)) - curl(pointwise_cross(curl(B), c));
    return out;
}

SpectralVectorField hall_term(const SpectralVectorField& b) { return curl(pointwise_cross(curl(b), b)); }

BackgroundCache::BackgroundCache(SpectralVectorField U0) : U0_(std::move(U0)) {
    U0_phys_ = to_physical(U0_);
    grad_U0_ = phys::gradient_tensor(U0_);
    curl_U0_phys_ = phys::curl_from_gradient(grad_U0_);
    lambda_cross_ = pointwise_cross(fractional_power(U0_, 1.0) - U0_, U0_);
    curl_lambda_cross_ = curl(lambda_cross_);
    h3_ = sobolev_norm(U0_, 3.0);
}

std::pair<SpectralVectorField, SpectralVectorField> forcing_fg(const BackgroundCache& cache, double t,
                                                               const PhysicalParams& params) {
    const double eB2 = std::exp(-2.0 * params.nu * t);
    const double eU2 = std::exp(-2.0 * params.mu * t);
    return {(eB2 - eU2) * cache.lambda_cross(), (-eB2) * cache.curl_lambda_cross()};
}

Rhs nonlinear_full(const SpectralVectorField& u, const SpectralVectorField& b, const TermSwitches& terms) {
    require_same_grid(u.grid(), b.grid(), "nonlinear_full");
    const GridSpec& g = u.grid();
    Rhs out{SpectralVectorField(g), SpectralVectorField(g)};
    if (!terms.advection && !terms.hall) return out;

    auto pv = physical_batch({&u, &b});
    const PhysicalVectorField& pu = pv[0];
    const PhysicalVectorField& pb = pv[1];
    const auto grad_b = phys::gradient_tensor(b);

    PhysicalVectorField du = make_physical_vector(g);
    PhysicalVectorField db = make_physical_vector(g);
    PhysicalVectorField X = make_physical_vector(g);
    if (terms.advection) {
        const auto grad_u = phys::gradient_tensor(u);
        phys::advect(pu, grad_u, du, -1.0);
        phys::advect(pb, grad_b, du, 1.0, true);
        phys::advect(pu, grad_b, db, -1.0);
        phys::advect(pb, grad_u, db, 1.0, true);
    }
    if (terms.hall) phys::cross(phys::curl_from_gradient(grad_b), pb, X);

    auto sp = spectral_batch({&du, &db, &X});
    out.first = leray_project(sp[0]);
    out.second = sp[1] - curl(sp[2]);
    return out;
}

Rhs nonlinear_perturbation(const SpectralVectorField& v, const SpectralVectorField& c, double t,
                           const BackgroundCache& cache, const PhysicalParams& params,
                           const TermSwitches& terms) {
    require_same_grid(v.grid(), c.grid(), "nonlinear_perturbation");
    require_same_grid(v.grid(), cache.U0().grid(), "nonlinear_perturbation");
    const GridSpec& g = v.grid();
    const double eU = std::exp(-params.mu * t);
    const double eB = std::exp(-params.nu * t);

    PhysicalVectorField dv = make_physical_vector(g);
    PhysicalVectorField dc = make_physical_vector(g);
    PhysicalVectorField X = make_physical_vector(g);

    const bool products = terms.advection || terms.hall || terms.coupling;
    if (products) {
        auto pv = physical_batch({&v, &c});
        const PhysicalVectorField& pV = pv[0];
        const PhysicalVectorField& pC = pv[1];
        const auto grad_v = phys::gradient_tensor(v);
        const auto grad_c = phys::gradient_tensor(c);
        const PhysicalVectorField curl_c = phys::curl_from_gradient(grad_c);
        const PhysicalVectorField& P0 = cache.U0_phys();
        const auto& G0 = cache.grad_U0();

        if (terms.advection) {
            phys::advect(pV, grad_v, dv, -1.0, true);
            phys::advect(pC, grad_c, dv, 1.0, true);
            phys::advect(pV, grad_c, dc, -1.0, true);
            phys::advect(pC, grad_v, dc, 1.0, true);
        }
        if (terms.hall) phys::cross(curl_c, pC, X, 1.0, true);
        if (terms.coupling) {
            // f1 = B.grad c + c.grad B - U.grad v - v.grad U
            phys::advect(P0, grad_c, dv, eB, true);
            phys::advect(pC, G0, dv, eB, true);
            phys::advect(P0, grad_v, dv, -eU, true);
            phys::advect(pV, G0, dv, -eU, true);
            // g1 = B.grad v + c.grad U - U.grad c - v.grad B
            phys::advect(P0, grad_v, dc, eB, true);
            phys::advect(pC, G0, dc, eU, true);
            phys::advect(P0, grad_c, dc, -eU, true);
            phys::advect(pV, G0, dc, -eB, true);
            // g2 = -curl(X) with X += (curl c) x B + (curl B) x c
            phys::cross(curl_c, P0, X, eB, true);
            phys::cross(cache.curl_U0_phys(), pC, X, eB, true);
        }
    }

    Rhs out{SpectralVectorField(g), SpectralVectorField(g)};
    if (products) {
        auto sp = spectral_batch({&dv, &dc, &X});
        out.first = std::move(sp[0]);
        out.second = sp[1] - curl(sp[2]);
    }
    if (terms.forcing) {
        auto [U, B] = background(cache.U0(), t, params);
        auto [F, G] = forcing_FG(U, B, params);
        auto [f, gg] = forcing_fg(cache, t, params);
        out.first += f;
        out.first -= F;
        out.second += gg;
        out.second -= G;
    }
    out.first = leray_project(out.first);
    return out;
}

Rhs rhs_full(const SpectralVectorField& u, const SpectralVectorField& b, const PhysicalParams& params,
             const TermSwitches& terms) {
    Rhs out = nonlinear_full(u, b, terms);
    add_dissipation(out, u, b, params);
    return out;
}

Rhs rhs_perturbation(const SpectralVectorField& v, const SpectralVectorField& c, double t,
                     const BackgroundCache& cache, const PhysicalParams& params, const TermSwitches& terms) {
    Rhs out = nonlinear_perturbation(v, c, t, cache, params, terms);
    add_dissipation(out, v, c, params);
    return out;
}

Rhs rhs_background(const SpectralVectorField& U, const SpectralVectorField& B, const PhysicalParams& params) {
    return {(-params.mu) * U, (-params.nu) * B};
}

double cfl_dt(const SpectralVectorField& u, const SpectralVectorField& b, const SchemeParams& scheme) {
    const GridSpec& g = u.grid();
    if (!finite(l2_norm(u)) || !finite(l2_norm(b))) throw ValidationError("cfl_dt: state is not finite");
    auto pv = physical_batch({&u, &b});
    const double umax = linf_norm(pv[0]);
    const double bmax = linf_norm(pv[1]);
    if (!finite(umax) || !finite(bmax)) throw ValidationError("cfl_dt: state is not finite");
    const double dx = g.dx();
    double dt = scheme.dt_cap;
    if (umax > 0.0) dt = std::min(dt, scheme.cfl_advect * dx / umax);
    if (bmax > 0.0) dt = std::min(dt, scheme.cfl_hall * dx * dx / bmax);
    return dt;
}

double cfl_dt(const State& state, const SchemeParams& scheme, const BackgroundCache* cache,
              const PhysicalParams& params) {
    if (state.system != SystemKind::Perturbation) return cfl_dt(state.first, state.second, scheme);
    if (cache == nullptr) throw ValidationError("perturbation state needs a background cache");
    auto [U, B] = background(cache->U0(), state.t, params);
    return cfl_dt(state.first + U, state.second + B, scheme);
}

Stepper::Stepper(PhysicalParams params, TermSwitches terms, const BackgroundCache* cache)
    : params_(params), terms_(terms), cache_(cache) {
    validate(params_);
}

const Stepper::Factors& Stepper::factors(const GridSpec& grid, SystemKind system, double dt) {
    const auto key = std::make_tuple(grid.n(), grid.box_side(), static_cast<int>(system), dt);
    auto it = factor_cache_.find(key);
    if (it != factor_cache_.end()) return it->second;
    Factors f;
    const std::size_t count = grid.size();
    f.first_half.resize(count);
    f.first_full.resize(count);
    f.second_half.resize(count);
    f.second_full.resize(count);
    kernels::for_each_mode(default_exec(), grid.n(), [&](int i1, int i2, int i3, std::size_t idx) {
        double l1, l2;
        if (system == SystemKind::Background) {
            l1 = -params_.mu;
            l2 = -params_.nu;
        } else {
            const double k2 = grid.k_squared(i1, i2, i3);
            l1 = -params_.mu * lambda_2alpha(k2, params_.alpha);
            l2 = -params_.nu * k2;
        }
        f.first_half[idx] = std::exp(0.5 * dt * l1);
        f.first_full[idx] = std::exp(dt * l1);
        f.second_half[idx] = std::exp(0.5 * dt * l2);
        f.second_full[idx] = std::exp(dt * l2);
    });
    return factor_cache_.emplace(key, std::move(f)).first->second;
}

Rhs Stepper::nonlinear(const State& state, double t, const SpectralVectorField& first,
                       const SpectralVectorField& second) const {
    switch (state.system) {
        case SystemKind::Full:
            return nonlinear_full(first, second, terms_);
        case SystemKind::Perturbation:
            if (cache_ == nullptr) throw ValidationError("perturbation stepping needs a background cache");
            return nonlinear_perturbation(first, second, t, *cache_, params_, terms_);
        case SystemKind::Background:
            break;
    }
    const GridSpec& g = first.grid();
    return {SpectralVectorField(g), SpectralVectorField(g)};
}

namespace {

// out = E * (x + s * y) when y != nullptr, else E * x.
void combine(SpectralVectorField& out, const std::vector<double>& E, const SpectralVectorField& x,
             const SpectralVectorField* y, double s) {
    const std::size_t count = x.grid().size();
    for (int a = 0; a < 3; ++a) {
        Complex* o = out[a].data().data();
        const Complex* px = x[a].data().data();
        const double* e = E.data();
        if (y != nullptr) {
            const Complex* py = (*y)[a].data().data();
            kernels::for_each_point(default_exec(), count,
                                    [=](std::size_t p) { o[p] = e[p] * (px[p] + s * py[p]); });
        } else {
            kernels::for_each_point(default_exec(), count, [=](std::size_t p) { o[p] = e[p] * px[p]; });
        }
    }
}

}  // namespace

State Stepper::step(const State& state, double dt) {
    if (!(dt > 0.0)) throw ValidationError("step needs dt > 0");
    const GridSpec& g = state.first.grid();
    const Factors& E = factors(g, state.system, dt);
    const std::size_t count = g.size();
    const double t = state.t;
    const double h = dt;

    State next;
    next.system = state.system;
    next.t = t + dt;
    next.first = SpectralVectorField(g);
    next.second = SpectralVectorField(g);

    if (state.system == SystemKind::Background) {
        combine(next.first, E.first_full, state.first, nullptr, 0.0);
        combine(next.second, E.second_full, state.second, nullptr, 0.0);
        return next;
    }

    SpectralVectorField x1(g), x2(g);
    const Rhs a = nonlinear(state, t, state.first, state.second);
    combine(x1, E.first_half, state.first, &a.first, 0.5 * h);
    combine(x2, E.second_half, state.second, &a.second, 0.5 * h);
    const Rhs b = nonlinear(state, t + 0.5 * h, x1, x2);

    // u2 = E(h/2) u_n + h/2 b
    for (int comp = 0; comp < 2; ++comp) {
        SpectralVectorField& x = comp == 0 ? x1 : x2;
        const SpectralVectorField& un = comp == 0 ? state.first : state.second;
        const SpectralVectorField& kb = comp == 0 ? b.first : b.second;
        const std::vector<double>& Eh = comp == 0 ? E.first_half : E.second_half;
        for (int ax = 0; ax < 3; ++ax) {
            Complex* o = x[ax].data().data();
            const Complex* pu = un[ax].data().data();
            const Complex* pk = kb[ax].data().data();
            const double* e = Eh.data();
            kernels::for_each_point(default_exec(), count,
                                    [=](std::size_t p) { o[p] = e[p] * pu[p] + 0.5 * h * pk[p]; });
        }
    }
    const Rhs c = nonlinear(state, t + 0.5 * h, x1, x2);

    // u3 = E(h) u_n + h E(h/2) c
    for (int comp = 0; comp < 2; ++comp) {
        SpectralVectorField& x = comp == 0 ? x1 : x2;
        const SpectralVectorField& un = comp == 0 ? state.first : state.second;
        const SpectralVectorField& kc = comp == 0 ? c.first : c.second;
        const std::vector<double>& Eh = comp == 0 ? E.first_half : E.second_half;
        const std::vector<double>& Ef = comp == 0 ? E.first_full : E.second_full;
        for (int ax = 0; ax < 3; ++ax) {
            Complex* o = x[ax].data().data();
            const Complex* pu = un[ax].data().data();
            const Complex* pk = kc[ax].data().data();
            const double* eh = Eh.data();
            const double* ef = Ef.data();
            kernels::for_each_point(default_exec(), count,
                                    [=](std::size_t p) { o[p] = ef[p] * pu[p] + h * eh[p] * pk[p]; });
        }
    }
    const Rhs d = nonlinear(state, t + h, x1, x2);

    // u_{n+1} = E(h) u_n + h/6 (E(h) a + 2 E(h/2) (b + c) + d)
    for (int comp = 0; comp < 2; ++comp) {
        SpectralVectorField& out = comp == 0 ? next.first : next.second;
        const SpectralVectorField& un = comp == 0 ? state.first : state.second;
        const Rhs* stages[4] = {&a, &b, &c, &d};
        const std::vector<double>& Eh = comp == 0 ? E.first_half : E.second_half;
        const std::vector<double>& Ef = comp == 0 ? E.first_full : E.second_full;
        for (int ax = 0; ax < 3; ++ax) {
            const Complex* k[4];
            for (int s = 0; s < 4; ++s)
                k[s] = (comp == 0 ? stages[s]->first : stages[s]->second)[ax].data().data();
            Complex* o = out[ax].data().data();
            const Complex* pu = un[ax].data().data();
            const double* eh = Eh.data();
            const double* ef = Ef.data();
            const Complex *ka = k[0], *kb = k[1], *kc = k[2], *kd = k[3];
            kernels::for_each_point(default_exec(), count, [=](std::size_t p) {
                o[p] = ef[p] * pu[p] + (h / 6.0) * (ef[p] * ka[p] + 2.0 * eh[p] * (kb[p] + kc[p]) + kd[p]);
            });
        }
    }
    next.first = leray_project(next.first);
    next.second = leray_project(next.second);
    dealias(next.first);
    dealias(next.second);
    return next;
}

double state_h3(const State& state) {
    const double a = sobolev_norm(state.first, 3.0);
    const double b = sobolev_norm(state.second, 3.0);
    return std::sqrt(a * a + b * b);
}

Trajectory integrate(const State& state0, const PhysicalParams& params, const SchemeParams& scheme,
                     const BackgroundCache* cache, const Observer& observer) {
    validate(params);
    validate(scheme);
    require_same_grid(state0.first.grid(), state0.second.grid(), "integrate");
    if (state0.system == SystemKind::Perturbation && cache == nullptr)
        throw ValidationError("perturbation runs need a background cache");

    Stepper stepper(params, scheme.terms, cache);
    Trajectory traj;
    State s = state0;
    traj.samples.push_back(s);
    if (observer) observer(s, 0);

    double reference = state_h3(s);
    if (state0.system == SystemKind::Perturbation) reference = std::max(reference, std::sqrt(2.0) * cache->h3());
    const double ceiling = scheme.blowup_factor * reference;

    const double t0 = s.t;
    const double T = scheme.T;
    const double tol = 1e-12 * std::max(1.0, std::abs(T));
    std::size_t steps = 0;
    bool last_kept = true;
    while (T - s.t > tol) {
        double dt;
        double t_next;
        if (scheme.dt > 0.0) {
            const double remaining = (T - t0) / scheme.dt - static_cast<double>(steps);
            if (remaining <= 1.0 + 1e-9) {
                t_next = T;
            } else {
                t_next = t0 + static_cast<double>(steps + 1) * scheme.dt;
            }
        } else {
            dt = cfl_dt(s, scheme, cache, params);
            t_next = s.t + dt >= T - tol ? T : s.t + dt;
        }
        dt = t_next - s.t;
        s = stepper.step(s, dt);
        s.t = t_next;
        ++steps;

        const double h3 = state_h3(s);
        if (!std::isfinite(h3)) {
            std::ostringstream msg;
            msg << "non-finite state at t=" << s.t << " after " << steps << " steps";
            throw BlowUpError(msg.str(), s.t, h3);
        }
        if (reference > 0.0 && h3 > ceiling) {
            std::ostringstream msg;
            msg << "H3 norm " << h3 << " exceeded the ceiling " << ceiling << " at t=" << s.t;
            throw BlowUpError(msg.str(), s.t, h3);
        }
        if (observer) observer(s, steps);
        last_kept = steps % static_cast<std::size_t>(scheme.sample_stride) == 0;
        if (last_kept) traj.samples.push_back(s);
    }
    if (!last_kept) traj.samples.push_back(s);
    traj.steps = steps;
    return traj;
}

SpectralScalarField recover_pressure(const SpectralVectorField& u, const SpectralVectorField& b) {
    require_same_grid(u.grid(), b.grid(), "recover_pressure");
    const GridSpec& g = u.grid();
    if (!finite(l2_norm(u)) || !finite(l2_norm(b))) throw ValidationError("recover_pressure: state is not finite");
    auto pv = physical_batch({&u, &b});
    const auto grad_u = phys::gradient_tensor(u);
    const auto grad_b = phys::gradient_tensor(b);
    PhysicalVectorField N = make_physical_vector(g);
    phys::advect(pv[1], grad_b, N, 1.0);
    phys::advect(pv[0], grad_u, N, -1.0, true);
    const SpectralVectorField Nh = phys::to_spectral_dealiased(N);

    SpectralScalarField p(g);
    Complex* dst = p.data().data();
    const Complex* n1 = Nh[0].data().data();
    const Complex* n2 = Nh[1].data().data();
    const Complex* n3 = Nh[2].data().data();
    const Complex I(0.0, 1.0);
    kernels::for_each_mode(default_exec(), g.n(), [&](int i1, int i2, int i3, std::size_t idx) {
        const double k1 = g.k_deriv(i1), k2 = g.k_deriv(i2), k3 = g.k_deriv(i3);
        const double kk = k1 * k1 + k2 * k2 + k3 * k3;
        if (kk == 0.0) return;
        dst[idx] = -I * (k1 * n1[idx] + k2 * n2[idx] + k3 * n3[idx]) / kk;
    });
    return p;
}

}  // namespace hallmhd
