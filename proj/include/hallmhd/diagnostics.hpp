#pragma once

#include <array>
#include <filesystem>
#include <limits>
#include <vector>

#include "hallmhd/evolution.hpp"
#include "hallmhd/field.hpp"

namespace hallmhd {

// H3 energies in the energy identity use the multi-index form
//   ||f||_{H3}^2 = sum_{|beta| <= 3} ||D^beta f||_{L2}^2 = L^3 sum_k W(k) |c_k|^2,
//   W(k) = sum_{|beta| <= 3} k1^{2 beta1} k2^{2 beta2} k3^{2 beta3},
// which is equivalent to, but not equal to, sobolev_norm(f, 3).

/// All multi-indices with lo <= |beta| <= hi, in a fixed order.
std::vector<std::array<int, 3>> multi_indices(int lo, int hi);
/// W(k) above, or W(k) - 1 when the beta = 0 term is excluded.
double multi_index_weight(double k1, double k2, double k3, bool include_zero = true);
/// sum_{beta} integral D^beta a . D^beta b dx over lo(include_zero) <= |beta| <= 3.
double weighted_inner(const SpectralVectorField& a, const SpectralVectorField& b, bool include_zero = true);
double weighted_h3_squared(const SpectralVectorField& f);

/// Residual of the background system at time t for U = e^{-mu t} U0, B = e^{-nu t} U0:
/// max of ||dU/dt + mu Lambda^{2 alpha} U - mu U - F|| / ||U|| and the B analogue with -nu Delta.
double background_system_residual(const SpectralVectorField& U0, double t, const PhysicalParams& params);

// ------------------------------------------------- background forcing bounds

struct Lemma31Row {
    double t = 0.0;
    /// ||F||, ||G||, ||f||, ||g|| in H3.
    std::array<double, 4> norms{};
    /// Shapes max(mu,nu) e^{-min(mu,nu) t} eps ||U0||_{L2} for F, G and
    /// e^{-min(mu,nu) t} eps ||U0||_{L2} ||U0^||_{L1} for f, g.
    std::array<double, 4> stated_shape{};
    std::array<double, 4> stated_ratio{};
    /// Term-by-term shapes: mu e^{-mu t} eps ||U0||_{L2},
    /// nu e^{-nu t} eps ||U0||_{L2}, and the Kato-Ponce product bounds for
    /// f = (e^{-2 nu t} - e^{-2 mu t}) (Lambda U0 - U0) x U0 and
    /// g = -curl((Lambda B - B) x B), evaluated on the fields at time t.
    std::array<double, 4> term_shape{};
    std::array<double, 4> term_ratio{};
};

struct Lemma31Report {
    std::vector<Lemma31Row> rows;
    double epsilon = 0.0;
    /// Largest relative spread max_t |r(t) - r(t0)| / |r(t0)| of each term ratio.
    std::array<double, 4> term_spread{};
    /// True when each stated ratio is non-increasing in t (relative slack 1e-10).
    std::array<bool, 4> stated_nonincreasing{};
    /// ||F(0)||_{H3} / (mu ||U0||_{H3}) and the bound 2 eps (1 + eps) (alpha = 1 only).
    double F_multiplier_ratio = 0.0;
    double F_multiplier_bound = 0.0;
    bool pass = false;
};

/// Refuses fields with Fourier content outside the annulus 1 - eps <= |k| <= 1 + eps.
Lemma31Report lemma31_check(const SpectralVectorField& U0, double epsilon, const PhysicalParams& params,
                            const std::vector<double>& t_samples, double tolerance = 1e-10);

// --------------------------------------------------------------- commutator

struct CommutatorResult {
    double lhs = 0.0;
    double rhs_core = 0.0;
    double ratio = 0.0;
};

/// lhs = sum_{|a| <= m} ||D^a(g f) - g D^a f||_{L2},
/// rhs_core = ||f||_{H^{m-1}} ||grad g||_{Linf} + ||f||_{Linf} ||g||_{H^m}.
/// Both fields must vanish for |m_a| >= n/4 so that products are exact.
CommutatorResult commutator_check(const SpectralScalarField& g, const SpectralScalarField& f, int m);

// ------------------------------------------------------------- cancellation

struct CancellationResiduals {
    /// |int ((curl c) x c) . curl c| / int |curl c|^2 |c|.
    double triple = 0.0;
    /// Same with D^beta curl c in both slots, for every |beta| <= 3.
    std::vector<double> dbeta;
    double dbeta_max = 0.0;
    /// ||B.grad U - U.grad B||_{L2} / (||B.grad U||_{L2} + ||U.grad B||_{L2}).
    double bU = 0.0;
};

CancellationResiduals cancellation_residuals(const SpectralVectorField& c, const SpectralVectorField& U,
                                             const SpectralVectorField& B);

/// |int curl((curl b) x b) . b| / (||curl((curl b) x b)||_{L2} ||b||_{L2}).
double hall_energy_residual(const SpectralVectorField& b);

// ---------------------------------------------------------- energy identity

struct EnergyRateReport {
    /// I_1 ... I_10, signed so that lhs_rate + dissipation = sum I.
    std::array<double, 10> I{};
    /// sum_{|beta| <= 3} int D^beta dv . D^beta v + D^beta dc . D^beta c.
    double lhs_rate = 0.0;
    double v_dissipation = 0.0;  ///< mu ||Lambda^alpha v||_{H3}^2
    double c_dissipation = 0.0;  ///< nu ||grad c||_{H3}^2
    double residual = 0.0;       ///< |lhs_rate + dissipation - sum I|
    double scale = 0.0;          ///< max |I_i|
    double relative_residual = 0.0;
    /// I_3 evaluated through the commutator [D^beta, c x] and the gap to the direct value.
    double I3_commutator = 0.0;
    double I3_gap = 0.0;
    /// Largest D^beta Hall cancellation residual over |beta| <= 3 (see CancellationResiduals).
    double hall_cancel = 0.0;
};

EnergyRateReport energy_rate_decomposition(const SpectralVectorField& v, const SpectralVectorField& c, double t,
                                           const BackgroundCache& cache, const PhysicalParams& params);

// --------------------------------------------------------------- bootstrap

struct BootstrapReport {
    double eta = 0.0;
    double gamma_estimate = std::numeric_limits<double>::infinity();
    /// Index of the first exceedance, or -1.
    long gamma_index = -1;
    bool held = true;
    double max_energy = 0.0;
};

/// energies[i] is ||v||_{H3}^2 + ||c||_{H3}^2 at times[i]; times strictly increasing.
BootstrapReport bootstrap_monitor(const std::vector<double>& times, const std::vector<double>& energies,
                                  double eta);

// ------------------------------------------------------------ reformulation

struct ReformulationReport {
    std::vector<double> times;
    std::vector<double> deviation;
    double max_deviation = 0.0;
};

/// max_t ||u - (v + U)||_{H3} + ||b - (c + B)||_{H3}; the two trajectories must share sample times.
ReformulationReport reformulation_check(const Trajectory& full, const Trajectory& pert,
                                        const SpectralVectorField& U0, const PhysicalParams& params);

// --------------------------------------------------------------- time series

struct TimeSeriesRecord {
    double t = 0.0;
    double v_h3 = 0.0;
    double c_h3 = 0.0;
    double v_diss = 0.0;  ///< ||Lambda^alpha v||_{H3}
    double c_diss = 0.0;  ///< ||grad c||_{H3}
    double u_h3 = 0.0;
    double b_h3 = 0.0;
    double energy_residual = 0.0;
    double hall_cancel = 0.0;
    double bU_cancel = 0.0;
    std::array<double, 10> I{};
    double lhs_rate = 0.0;
    /// Multi-index H3 energy, used by the finite-difference cross-check.
    double weighted_energy = 0.0;
    double condition_lhs = 0.0;
};

/// Diagnostics for a perturbation pair (v, c) at time t.
TimeSeriesRecord make_record(const SpectralVectorField& v, const SpectralVectorField& c, double t,
                             const BackgroundCache& cache, const PhysicalParams& params, double condition_lhs);
/// Splits a full-system state into (u - U, b - B) and records it.
TimeSeriesRecord make_record(const State& state, const BackgroundCache& cache, const PhysicalParams& params,
                             double condition_lhs);

/// Header: t,v_h3,c_h3,u_h3,b_h3,v_diss,c_diss,energy_residual,hall_cancel,bU_cancel,I_1,...,I_10.
/// u_h3, b_h3 are the total fields v + U, c + B.
void write_timeseries_csv(const std::filesystem::path& path, const std::vector<TimeSeriesRecord>& records);
std::string format_double(double x);

}  // namespace hallmhd
