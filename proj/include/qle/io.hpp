#ifndef QLE_IO_HPP
#define QLE_IO_HPP

// Hypothesis-set JSON input, results CSV and summary JSON output.
//
// Hypothesis set:
//   {"hypotheses": [{"label": str, "matrix": [[[re, im], ...], ...]}, ...],
//    "prior": [float, ...]}                       // prior optional, default uniform
//
// Results CSV header:
//   mode,set,true_index,true_label,trial,seed,threshold,iterations,status,wall_time_ms
//
// Summary JSON:
//   {"set": str, "threshold": float, "trials": int,
//    "modes": {mode: {"per_hypothesis": [{"label", "mean", "std", "failures"}],
//                     "total_mean": float|null}},
//    "config": {...}}                             // effective CLI configuration

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "qle/harness.hpp"
#include "qle/model.hpp"

namespace qle {

HypothesisSet parse_hypothesis_set(const nlohmann::json& doc);
HypothesisSet load_hypothesis_set(const std::filesystem::path& path);

inline constexpr const char* kResultsCsvHeader =
    "mode,set,true_index,true_label,trial,seed,threshold,iterations,status,wall_time_ms";

/// Shortest decimal that round-trips.
std::string format_double(double x);

void write_results_csv(std::ostream& out, const std::string& set_name, const std::vector<RunRecord>& records);

nlohmann::json summary_to_json(const std::string& set_name, const std::vector<SuiteSummary>& summaries,
                               const nlohmann::json& config = nlohmann::json::object());

/// Inverse of summary_to_json (mode, threshold, trials and per-hypothesis stats).
std::vector<SuiteSummary> summaries_from_json(const nlohmann::json& doc);

/// Writes both files, overwriting. Throws IoError naming the path on failure.
void emit_results(const std::vector<RunRecord>& records, const std::vector<SuiteSummary>& summaries,
                  const std::string& set_name, const std::filesystem::path& csv_path,
                  const std::filesystem::path& json_path,
                  const nlohmann::json& config = nlohmann::json::object());

} // namespace qle

#endif // QLE_IO_HPP
