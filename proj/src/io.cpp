#include "qle/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace qle {

using nlohmann::json;

namespace {

HermitianMatrix parse_matrix(const json& rows, const std::string& label) {
    if (!rows.is_array() || rows.empty())
        throw InvalidArgument("hypothesis '" + label + "': matrix must be a non-empty array of rows");
    const auto n = static_cast<Eigen::Index>(rows.size());
    ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            throw InvalidArgument("hypothesis '" + label + "': matrix is not square");
        for (Eigen::Index j = 0; j < n; ++j) {
            const json& entry = row[static_cast<std::size_t>(j)];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
                throw InvalidArgument("hypothesis '" + label + "': entries must be [re, im] pairs");
            m(i, j) = {entry[0].get<double>(), entry[1].get<double>()};
        }
    }
    try {
        return HermitianMatrix(m);
    } catch (const NotHermitian& e) {
        throw NotHermitian("hypothesis '" + label + "': " + e.what());
    }
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> number_or_null(const json& v) {
    if (v.is_null()) return std::nullopt;
    return v.get<double>();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

HypothesisSet parse_hypothesis_set(const json& doc) {
    if (!doc.is_object() || !doc.contains("hypotheses") || !doc["hypotheses"].is_array())
        throw InvalidArgument("hypothesis set: missing \"hypotheses\" array");
    std::vector<std::string> labels;
    std::vector<HermitianMatrix> matrices;
    for (const json& h : doc["hypotheses"]) {
        if (!h.is_object() || !h.contains("label") || !h["label"].is_string() || !h.contains("matrix"))
            throw InvalidArgument("hypothesis set: each hypothesis needs \"label\" and \"matrix\"");
        labels.push_back(h["label"].get<std::string>());
        matrices.push_back(parse_matrix(h["matrix"], labels.back()));
    }
    std::vector<double> prior;
    if (doc.contains("prior") && !doc["prior"].is_null()) {
        if (!doc["prior"].is_array()) throw InvalidArgument("hypothesis set: \"prior\" must be an array");
        for (const json& p : doc["prior"]) {
            if (!p.is_number()) throw InvalidArgument("hypothesis set: prior entries must be numbers");
            prior.push_back(p.get<double>());
        }
    }
    return HypothesisSet(std::move(labels), std::move(matrices), std::move(prior));
}

HypothesisSet load_hypothesis_set(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open hypothesis file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(path.string() + ": " + e.what());
    }
    return parse_hypothesis_set(doc);
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_results_csv(std::ostream& out, const std::string& set_name, const std::vector<RunRecord>& records) {
    out << kResultsCsvHeader << '\n';
    for (const RunRecord& r : records) {
        const auto it = r.iterations();
        out << mode_name(r.mode) << ',' << csv_field(set_name) << ',' << r.true_index << ','
            << csv_field(r.true_label) << ',' << r.trial << ',' << r.seed << ',' << format_double(r.threshold)
            << ',' << (it ? std::to_string(*it) : std::string()) << ',' << to_string(r.status.kind) << ','
            << r.wall_time_ms << '\n';
    }
}

json summary_to_json(const std::string& set_name, const std::vector<SuiteSummary>& summaries, const json& config) {
    json doc;
    doc["set"] = set_name;
    doc["threshold"] = summaries.empty() ? json(nullptr) : json(summaries.front().threshold);
    doc["trials"] = summaries.empty() ? 0 : summaries.front().trials;
    json modes = json::object();
    for (const SuiteSummary& s : summaries) {
        json per = json::array();
        for (const HypothesisStats& h : s.per_hypothesis)
            per.push_back({{"label", h.label},
                           {"mean", optional_number(h.mean)},
                           {"std", optional_number(h.std)},
                           {"failures", h.failures}});
        modes[std::string(mode_name(s.mode))] = {{"per_hypothesis", per}, {"total_mean", optional_number(s.total_mean)}};
    }
    doc["modes"] = modes;
    doc["config"] = config;
    return doc;
}

std::vector<SuiteSummary> summaries_from_json(const json& doc) {
    std::vector<SuiteSummary> out;
    const double threshold = doc.at("threshold").get<double>();
    const int trials = doc.at("trials").get<int>();
    for (const auto& [name, body] : doc.at("modes").items()) {
        const auto mode = parse_mode(name);
        if (!mode) throw InvalidArgument("summary JSON: unknown mode '" + name + "'");
        SuiteSummary s;
        s.mode = *mode;
        s.threshold = threshold;
        s.trials = trials;
        s.total_mean = number_or_null(body.at("total_mean"));
        for (const json& h : body.at("per_hypothesis")) {
            HypothesisStats stats;
            stats.label = h.at("label").get<std::string>();
            stats.mean = number_or_null(h.at("mean"));
            stats.std = number_or_null(h.at("std"));
            stats.failures = h.at("failures").get<int>();
            stats.trials = trials;
            s.per_hypothesis.push_back(std::move(stats));
        }
        out.push_back(std::move(s));
    }
    return out;
}

void emit_results(const std::vector<RunRecord>& records, const std::vector<SuiteSummary>& summaries,
                  const std::string& set_name, const std::filesystem::path& csv_path,
                  const std::filesystem::path& json_path, const json& config) {
    {
        std::ofstream csv(csv_path, std::ios::trunc);
        if (!csv) throw IoError("cannot open " + csv_path.string() + " for writing");
        write_results_csv(csv, set_name, records);
        if (!csv) throw IoError("failed writing " + csv_path.string());
    }
    std::ofstream js(json_path, std::ios::trunc);
    if (!js) throw IoError("cannot open " + json_path.string() + " for writing");
    js << summary_to_json(set_name, summaries, config).dump(2) << '\n';
    if (!js) throw IoError("failed writing " + json_path.string());
}

} // namespace qle
