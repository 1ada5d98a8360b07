#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prodcauchy/ensemble.hpp"
#include "prodcauchy/specfun.hpp"

// CLI-facing configuration, file I/O and the orchestrated verification
// suites binding the analytic modules to their oracles and to Monte-Carlo
// evidence.

namespace prodcauchy::harness {

struct GridSpec {
    double r_min = 0.05;
    double r_max = 5.0;
    int points = 50;
};

struct ContourOverride {
    std::optional<double> abscissa;
    std::optional<double> half_extent;
    std::optional<int> node_count;
};

struct McSpec {
    std::uint64_t seed = 20250801;
    int matrices = 500;
};

struct RunConfig {
    EnsembleConfig ensemble{std::vector<int>{2, 2}};
    GridSpec grid;
    ContourOverride contour;
    McSpec mc;
    std::map<std::string, double> tolerances;
    std::string out_dir = "out";
};

/// Strict JSON parse: unknown keys are rejected at every level, invariant
/// violations raise std::domain_error with the offending key in the message.
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& json_text);
std::string config_to_json(const RunConfig& cfg);

struct VerificationReport {
    std::string check_id;
    double computed = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string provenance;
};

/// pass <=> |computed - reference| <= tolerance * max(1, |reference|).
VerificationReport make_report(std::string check_id, double computed, double reference,
                               double tolerance, std::string provenance);

std::string report_to_json(const VerificationReport& report);

enum class Suite { weights, kernels, limits, mc, all };
Suite suite_from_string(const std::string& name);

/// Runs the selected verification suite(s). Each suite pins its own
/// ensembles and tolerances; RunConfig.tolerances entries keyed by check id
/// override individual tolerances, and cfg.mc supplies the seed for the MC
/// checks.
std::vector<VerificationReport> run_verification(const RunConfig& cfg, Suite suite,
                                                 int threads = 1);

/// Grid evaluation of the selected weight route; CSV columns r, value.
void cmd_weight(const RunConfig& cfg, const std::string& method, std::ostream& csv);

/// Grid evaluation of the density; CSV columns r, value. The JSON sidecar
/// carries the mass diagnostic (and the normalization audit for `finite`).
void cmd_density(const RunConfig& cfg, const std::string& kind, std::ostream& csv,
                 std::ostream& meta);

/// Kernel evaluation at point pairs read from `points` (CSV rows
/// zi_re,zi_im,zj_re,zj_im; header optional). Output columns
/// zi_re,zi_im,zj_re,zj_im,K_re,K_im.
void cmd_kernel(const RunConfig& cfg, const std::string& mode, std::istream& points,
                std::ostream& csv);

/// Monte-Carlo batch: CSV plus JSON metadata sidecar; prints a KS summary
/// line to `summary`.
void cmd_sample(const RunConfig& cfg, int threads, std::ostream& csv, std::ostream& meta,
                std::ostream& summary);

/// Verification reports as JSON lines; returns false if any report failed.
bool cmd_verify(const RunConfig& cfg, Suite suite, int threads, std::ostream& jsonl);

/// 17-significant-digit decimal rendering (round-trip exact).
std::string fmt17(double x);

}  // namespace prodcauchy::harness
