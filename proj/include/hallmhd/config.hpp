#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "hallmhd/evolution.hpp"
#include "hallmhd/grid.hpp"
#include "hallmhd/initial_data.hpp"

namespace hallmhd {

// Run configuration, stored as YAML with the sections below. Missing keys take
// the defaults listed here; unknown keys are rejected.

struct GridConfig {
    int n = 64;
    double box_side = 8.0 * kPi / 0.2;
    /// Resolution policy: dk <= max_dk_over_epsilon * epsilon.
    double max_dk_over_epsilon = 0.25;
};

struct RecipeConfig {
    double epsilon = 0.2;
    TransitionProfile profile = TransitionProfile::ExpSmoothstep;
};

struct SchemeConfig {
    /// dt: auto selects the CFL step.
    bool auto_dt = false;
    double dt = 5e-4;
    double T = 1.0;
    double cfl_advect = 0.4;
    double cfl_hall = 0.1;
    double dt_cap = 1e-2;
    double blowup_factor = 1e6;
    /// Bootstrap threshold eta = eta_relative * ||U0||_{H3}^2.
    double eta_relative = 1e-2;
};

struct ConditionConfig {
    double constant_C = 1.0;
    double delta = 0.01;
};

/// Initial perturbation (v0, c0): random solenoidal fields of these L2 norms drawn from io.seed.
struct PerturbationConfig {
    double v0_l2 = 0.0;
    double c0_l2 = 0.0;
};

/// Thresholds used by the verify suite.
struct VerifyConfig {
    int random_states = 50;
    double structure_tol = 1e-12;
    double background_tol = 1e-12;
    double identity_tol = 1e-9;
    /// Gap between the direct and commutator evaluations of I_3, relative to the largest |I_i|.
    double i3_gap_tol = 1e-10;
    double cancel_tol = 1e-11;
    double shape_tol = 1e-10;
    double reformulation_T = 0.05;
    double reformulation_tol = 1e-6;
    /// Commutator sampling: the largest ratio may exceed the median by at most this factor.
    double commutator_band = 10.0;
};

struct IoConfig {
    std::string output_path = "out";
    /// CSV row every observer_stride steps (initial and final always written).
    int observer_stride = 10;
    /// Checkpoint every checkpoint_stride steps; 0 writes only the final state.
    int checkpoint_stride = 0;
    std::uint64_t seed = 1;
};

struct RunConfig {
    GridConfig grid;
    RecipeConfig recipe;
    PhysicalParams params;
    SchemeConfig scheme;
    ConditionConfig condition;
    PerturbationConfig perturbation;
    VerifyConfig verify;
    IoConfig io;
};

/// Throws ValidationError on malformed YAML, unknown keys or wrongly typed values.
RunConfig parse_config(const std::string& yaml_text);
RunConfig load_config(const std::filesystem::path& path);
/// Every field, shortest round-trip decimal form; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& config);
void save_config(const std::filesystem::path& path, const RunConfig& config);

/// Checks every value range; throws ValidationError naming the offending key.
void validate(const RunConfig& config);

bool operator==(const RunConfig& a, const RunConfig& b);

GridSpec make_grid(const RunConfig& config);
DataRecipe make_recipe(const RunConfig& config);
/// Runs additionally require dealiasing room above the annulus.
ResolutionPolicy resolution_policy(const RunConfig& config, bool for_run);
SchemeParams scheme_params(const RunConfig& config);

/// Shortest decimal string that parses back to x.
std::string shortest_double(double x);

}  // namespace hallmhd
