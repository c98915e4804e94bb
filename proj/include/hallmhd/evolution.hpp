#pragma once

#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "hallmhd/field.hpp"

namespace hallmhd {

struct PhysicalParams {
    double mu = 1.0;
    double nu = 1.0;
    /// Dissipation exponent: the velocity is damped by mu (-Delta)^alpha.
    double alpha = 1.0;
};

/// mu, nu > 0 and 0 <= alpha <= 1.
void validate(const PhysicalParams& params);

/// Full: (u, b). Perturbation: (v, c) = (u - U, b - B). Background: (U, B).
enum class SystemKind { Full, Perturbation, Background };

const char* to_string(SystemKind kind);

struct State {
    SystemKind system = SystemKind::Full;
    double t = 0.0;
    SpectralVectorField first;   ///< u, v or U
    SpectralVectorField second;  ///< b, c or B
};

/// Groups of right-hand-side terms that can be switched off for isolation tests.
struct TermSwitches {
    bool advection = true;  ///< quadratic transport terms between the unknowns
    bool hall = true;       ///< the unknown's own Hall term
    bool coupling = true;   ///< f1, g1, g2 (perturbation system only)
    bool forcing = true;    ///< f, g, F, G (perturbation system only)
};

struct SchemeParams {
    /// Fixed step; 0 selects the CFL step every step.
    double dt = 0.0;
    double T = 1.0;
    double cfl_advect = 0.4;
    double cfl_hall = 0.1;
    double dt_cap = 1e-2;
    /// Abort once the H3 norm of the state exceeds this factor times the
    /// larger of its initial value and the background's initial value.
    double blowup_factor = 1e6;
    /// Keep every stride-th accepted state in the trajectory (initial and final always kept).
    int sample_stride = 1;
    TermSwitches terms{};
};

void validate(const SchemeParams& scheme);

struct Rhs {
    SpectralVectorField first;
    SpectralVectorField second;
};

/// Thrown on non-finite values or when the H3 ceiling is crossed.
class BlowUpError : public std::runtime_error {
  public:
    BlowUpError(const std::string& what, double t, double h3) : std::runtime_error(what), t_(t), h3_(h3) {}
    double time() const { return t_; }
    double h3() const { return h3_; }

  private:
    double t_;
    double h3_;
};

/// U = e^{-mu t} U0, B = e^{-nu t} U0.
std::pair<SpectralVectorField, SpectralVectorField> background(const SpectralVectorField& U0, double t,
                                                               const PhysicalParams& params);

/// F = mu (Lambda^{2 alpha} - I) U, G = nu (-Delta - I) B.
std::pair<SpectralVectorField, SpectralVectorField> forcing_FG(const SpectralVectorField& U,
                                                               const SpectralVectorField& B,
                                                               const PhysicalParams& params);

/// f = (Lambda B - B) x B - (Lambda U - U) x U, g = -curl((Lambda B - B) x B).
std::pair<SpectralVectorField, SpectralVectorField> forcing_fg(const SpectralVectorField& U,
                                                               const SpectralVectorField& B);

struct CouplingTerms {
    SpectralVectorField f1;  ///< B.grad c + c.grad B - U.grad v - v.grad U
    SpectralVectorField g1;  ///< B.grad v + c.grad U - U.grad c - v.grad B
    SpectralVectorField g2;  ///< -curl((curl c) x B) - curl((curl B) x c)
};

CouplingTerms coupling_terms(const SpectralVectorField& v, const SpectralVectorField& c,
                             const SpectralVectorField& U, const SpectralVectorField& B);

/// curl((curl b) x b).
SpectralVectorField hall_term(const SpectralVectorField& b);

/// Physical samples and gradients of U0 reused by every perturbation
/// right-hand side, plus the dealiased product (Lambda U0 - U0) x U0.
class BackgroundCache {
  public:
    BackgroundCache() = default;
    explicit BackgroundCache(SpectralVectorField U0);

    const SpectralVectorField& U0() const { return U0_; }
    const PhysicalVectorField& U0_phys() const { return U0_phys_; }
    const std::array<PhysicalVectorField, 3>& grad_U0() const { return grad_U0_; }
    const PhysicalVectorField& curl_U0_phys() const { return curl_U0_phys_; }
    const SpectralVectorField& lambda_cross() const { return lambda_cross_; }
    const SpectralVectorField& curl_lambda_cross() const { return curl_lambda_cross_; }
    double h3() const { return h3_; }

  private:
    SpectralVectorField U0_;
    PhysicalVectorField U0_phys_;
    std::array<PhysicalVectorField, 3> grad_U0_;
    PhysicalVectorField curl_U0_phys_;
    SpectralVectorField lambda_cross_;
    SpectralVectorField curl_lambda_cross_;
    double h3_ = 0.0;
};

/// f and g at time t from the cache: f = (e^{-2 nu t} - e^{-2 mu t}) W0, g = -e^{-2 nu t} curl W0.
std::pair<SpectralVectorField, SpectralVectorField> forcing_fg(const BackgroundCache& cache, double t,
                                                               const PhysicalParams& params);

// Nonlinear parts (everything except the diagonal dissipation).
Rhs nonlinear_full(const SpectralVectorField& u, const SpectralVectorField& b, const TermSwitches& terms = {});
Rhs nonlinear_perturbation(const SpectralVectorField& v, const SpectralVectorField& c, double t,
                           const BackgroundCache& cache, const PhysicalParams& params,
                           const TermSwitches& terms = {});

/// du = P[-u.grad u + b.grad b] - mu Lambda^{2 alpha} u,
/// db = -u.grad b + b.grad u - curl((curl b) x b) + nu Delta b.
Rhs rhs_full(const SpectralVectorField& u, const SpectralVectorField& b, const PhysicalParams& params,
             const TermSwitches& terms = {});

/// dv = P[-v.grad v + c.grad c + f + f1 - F] - mu Lambda^{2 alpha} v,
/// dc = -v.grad c + c.grad v - curl((curl c) x c) + g2 + g + g1 - G + nu Delta c,
/// with the background taken at time t.
Rhs rhs_perturbation(const SpectralVectorField& v, const SpectralVectorField& c, double t,
                     const BackgroundCache& cache, const PhysicalParams& params, const TermSwitches& terms = {});

/// Right-hand side of the background system: (-mu U, -nu B).
Rhs rhs_background(const SpectralVectorField& U, const SpectralVectorField& B, const PhysicalParams& params);

/// dt = min(cfl_advect dx / max|u|, cfl_hall dx^2 / max|b|, dt_cap) on the total fields.
double cfl_dt(const SpectralVectorField& u, const SpectralVectorField& b, const SchemeParams& scheme);
double cfl_dt(const State& state, const SchemeParams& scheme, const BackgroundCache* cache,
              const PhysicalParams& params);

/// Integrating-factor RK4. The diagonal linear part is propagated exactly:
/// e^{-mu |k|^{2 alpha} h} and e^{-nu |k|^2 h} for the full and perturbation
/// systems, e^{-mu h} and e^{-nu h} for the background (whose forcing is
/// linear and folded into the factor). Both fields are Leray-projected and
/// dealiased after every step.
class Stepper {
  public:
    Stepper(PhysicalParams params, TermSwitches terms, const BackgroundCache* cache = nullptr);

    State step(const State& state, double dt);
    Rhs nonlinear(const State& state, double t, const SpectralVectorField& first,
                  const SpectralVectorField& second) const;

  private:
    struct Factors {
        std::vector<double> first_half, first_full, second_half, second_full;
    };
    const Factors& factors(const GridSpec& grid, SystemKind system, double dt);

    PhysicalParams params_;
    TermSwitches terms_;
    const BackgroundCache* cache_;
    std::map<std::tuple<int, double, int, double>, Factors> factor_cache_;
};

struct Trajectory {
    std::vector<State> samples;
    std::size_t steps = 0;
    const State& final() const { return samples.back(); }
};

using Observer = std::function<void(const State& state, std::size_t step)>;

/// Advances state0 to scheme.T. The observer sees the initial state and every accepted state.
Trajectory integrate(const State& state0, const PhysicalParams& params, const SchemeParams& scheme,
                     const BackgroundCache* cache = nullptr, const Observer& observer = {});

/// p with grad p equal to the gradient part of D[b.grad b - u.grad u]; zero mean.
SpectralScalarField recover_pressure(const SpectralVectorField& u, const SpectralVectorField& b);

/// sqrt(||first||_{H3}^2 + ||second||_{H3}^2).
double state_h3(const State& state);

}  // namespace hallmhd
