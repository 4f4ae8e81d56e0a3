#ifndef QLE_HARNESS_HPP
#define QLE_HARNESS_HPP

// Full learning runs, seeded suites over every true hypothesis, the static
// baseline search, and result aggregation.

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qle/bayes.hpp"
#include "qle/model.hpp"
#include "qle/optimizer.hpp"

namespace qle {

enum class Mode { Baseline, GridAdaptive, Optimized };

/// "baseline-search", "grid-adaptive", "optimized".
std::string_view mode_name(Mode mode);
std::optional<Mode> parse_mode(std::string_view name);

/// sigma_x, 2 sigma_x, sigma_z, 2 sigma_z.
HypothesisSet preset_set_a();
/// The six-Hamiltonian set with mixed Pauli terms and identity shifts.
HypothesisSet preset_set_b();

struct RunOptions {
    double threshold = kDefaultThreshold;
    int cap = kDefaultIterationCap;
    AnnealConfig anneal;
    GridSpec grid;
    /// Fixed (alpha, beta, theta, phi) used by the baseline; t comes from PGH.
    ControlParams static_params;
    /// Keep the weight vector after every update.
    bool record_trajectory = false;
};

struct RunRecord {
    Mode mode = Mode::Optimized;
    std::size_t true_index = 0;
    std::string true_label;
    int trial = 0;
    std::uint64_t seed = 0;
    double threshold = kDefaultThreshold;
    RunStatus status;
    std::int64_t wall_time_ms = 0;
    std::vector<Eigen::VectorXd> trajectory;  // weights after each update, when recorded

    /// Iteration count on success, empty otherwise.
    std::optional<int> iterations() const {
        return status.success() ? std::optional<int>(status.iterations) : std::nullopt;
    }
};

/// One learning run with `set.hamiltonian(true_index)` as the ground truth.
/// Degenerate evidence ends the run as WrongConvergence.
RunRecord run_single(const HypothesisSet& set, std::size_t true_index, Mode mode, const RunOptions& options,
                     std::uint64_t seed);

struct HypothesisStats {
    std::string label;
    std::optional<double> mean;  // over successful trials
    std::optional<double> std;   // population standard deviation
    int failures = 0;
    int trials = 0;
};

struct SuiteSummary {
    Mode mode = Mode::Optimized;
    double threshold = kDefaultThreshold;
    int trials = 0;
    std::vector<HypothesisStats> per_hypothesis;
    std::optional<double> total_mean;  // empty when some hypothesis never succeeded

    int total_failures() const;
};

struct SuiteResult {
    std::vector<RunRecord> records;  // ordered by (true_index, trial)
    SuiteSummary summary;
};

SuiteSummary summarize(Mode mode, const HypothesisSet& set, double threshold, int trials,
                       const std::vector<RunRecord>& records);

/// Runs every (true_index, trial) pair with seed split_seed(base_seed, f, k).
/// Output is independent of `threads`.
SuiteResult run_suite(const HypothesisSet& set, Mode mode, int trials, std::uint64_t base_seed,
                      const RunOptions& options, int threads = 1);

struct BaselineSearchResult {
    ControlParams best;
    SuiteResult suite;           // the winning configuration's suite
    int configurations = 0;
    int failed_configurations = 0;  // configurations whose total_mean is FAILED
};

/// Tries every (alpha, beta, theta, phi) grid point as the static baseline
/// and keeps the one with the smallest total_mean. FAILED totals rank below
/// every finite one; ties fall to fewer failures, then grid order.
BaselineSearchResult best_static_baseline(const HypothesisSet& set, const GridSpec& grid, int trials,
                                          std::uint64_t base_seed, const RunOptions& options,
                                          int threads = 1);

} // namespace qle

#endif // QLE_HARNESS_HPP
