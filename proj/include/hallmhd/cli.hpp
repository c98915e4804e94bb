#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hallmhd/config.hpp"
#include "hallmhd/evolution.hpp"

namespace hallmhd::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kInvalid = 2,
    kBlowUp = 3,
};

// Output files, all inside io.output_path.
inline constexpr const char* kResolvedConfig = "config.resolved.yaml";
inline constexpr const char* kDataCheckpoint = "U0.ckpt";
inline constexpr const char* kDataReport = "data_report.json";
inline constexpr const char* kConditionReport = "condition.json";
inline constexpr const char* kTimeSeries = "timeseries.csv";
inline constexpr const char* kRunSummary = "run_summary.json";
inline constexpr const char* kFinalCheckpoint = "final.ckpt";
inline constexpr const char* kVerifyReport = "verify.json";
inline constexpr const char* kSweepSummary = "summary.json";
inline constexpr const char* kSweepTable = "summary.csv";

struct Verdict {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

/// Identity and estimate checks on the configured grid and data.
std::vector<Verdict> verify_suite(const RunConfig& config);

int cmd_make_data(const RunConfig& config, std::ostream& log);
/// Reads a data report written by make-data (default: io.output_path/data_report.json).
int cmd_check_condition(const RunConfig& config, const std::filesystem::path& data_report, std::ostream& log);
/// Writes the time series, checkpoints and run summary; exit 3 on blow-up.
int cmd_run(const RunConfig& config, SystemKind system, std::ostream& log);
int cmd_verify(const RunConfig& config, std::ostream& log);

struct SweepOptions {
    std::vector<double> epsilons{0.28, 0.2, 0.12};
    int jobs = 1;
    /// Size each member's grid from its epsilon (see auto_grid); otherwise reuse the configured grid.
    bool auto_grid = true;
    /// Largest allowed max/min ratio of each scaling ratio across the sweep.
    double band = 4.0;
};

/// box_side = 2 pi / (max_dk_over_epsilon * eps), and the smallest even 5-smooth n that resolves the annulus.
GridConfig auto_grid(double epsilon, double max_dk_over_epsilon);
int cmd_sweep(const RunConfig& config, const SweepOptions& options, std::ostream& log);

/// Parses argv, dispatches, and maps exceptions to exit codes.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hallmhd::cli
