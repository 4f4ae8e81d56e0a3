// qle: command-line front end for the learning experiments.
//
//   qle run     --set A --mode optimized --trials 20 --seed 42 --out results
//   qle compare --set A --trials 20 --seed 7 --out cmp
//   qle cost    --set custom --hypotheses pair.json --t 1.5708 --weights 0.5,0.5
//
// Exit codes: 0 on completion (non-converged runs are data), 2 for invalid
// flags or inputs, 1 for internal faults.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qle/harness.hpp"
#include "qle/info.hpp"
#include "qle/io.hpp"

namespace {

using namespace qle;

struct Config {
    std::string set = "A";
    std::string hypotheses;
    std::string mode = "optimized";
    int trials = 20;
    std::uint64_t seed = 42;
    double threshold = kDefaultThreshold;
    int cap = kDefaultIterationCap;
    int grid_points = 5;
    int time_points = 8;
    int anneal_iters = 200;
    int anneal_neighbors = 8;
    double anneal_t0 = 1.0;
    double cooling_rate = 0.9;
    int threads = 1;
    std::string out = "results";

    // cost
    double alpha = 0.0, beta = 0.0, theta = 0.0, phi = 0.0, t = 0.0;
    std::string weights;
};

// Configuration errors map to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

HypothesisSet resolve_set(const Config& c) {
    if (c.set == "A") return preset_set_a();
    if (c.set == "B") return preset_set_b();
    if (c.hypotheses.empty()) throw UsageError("--set custom requires --hypotheses <path>");
    return load_hypothesis_set(c.hypotheses);
}

std::string set_name(const Config& c) { return c.set == "custom" ? c.hypotheses : c.set; }

RunOptions resolve_options(const Config& c) {
    if (c.trials < 1) throw UsageError("--trials must be >= 1");
    if (c.cap < 1) throw UsageError("--cap must be >= 1");
    if (!(c.threshold > 0.5 && c.threshold < 1.0)) throw UsageError("--threshold must lie in (0.5, 1)");
    if (c.grid_points < 1 || c.time_points < 1) throw UsageError("grid point counts must be >= 1");
    if (c.threads < 1) throw UsageError("--threads must be >= 1");
    RunOptions o;
    o.threshold = c.threshold;
    o.cap = c.cap;
    o.anneal = {c.anneal_t0, c.cooling_rate, c.anneal_iters, c.anneal_neighbors};
    try {
        o.anneal.validate();
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    o.grid = {c.grid_points, c.time_points};
    return o;
}

nlohmann::json echo(const Config& c, const std::string& command) {
    return {{"command", command},       {"set", c.set},
            {"hypotheses", c.hypotheses}, {"mode", c.mode},
            {"trials", c.trials},       {"seed", c.seed},
            {"threshold", c.threshold}, {"cap", c.cap},
            {"grid_points", c.grid_points}, {"time_points", c.time_points},
            {"anneal_iters", c.anneal_iters}, {"anneal_neighbors", c.anneal_neighbors},
            {"anneal_t0", c.anneal_t0}, {"cooling_rate", c.cooling_rate},
            {"threads", c.threads},     {"out", c.out}};
}

nlohmann::json params_json(const ControlParams& p) {
    return {{"alpha", p.alpha}, {"beta", p.beta}, {"theta", p.theta}, {"phi", p.phi}};
}

std::string cell(const std::optional<double>& v) {
    if (!v) return "FAILED";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", *v);
    return buf;
}

void print_summary(const SuiteSummary& s) {
    std::printf("%s (threshold %s, %d trials)\n", std::string(mode_name(s.mode)).c_str(),
                format_double(s.threshold).c_str(), s.trials);
    std::printf("  %-28s %10s %10s %9s\n", "hypothesis", "mean", "std", "failures");
    for (const auto& h : s.per_hypothesis)
        std::printf("  %-28s %10s %10s %5d/%-3d\n", h.label.c_str(), cell(h.mean).c_str(), cell(h.std).c_str(),
                    h.failures, h.trials);
    std::printf("  %-28s %10s\n", "total_mean", cell(s.total_mean).c_str());
}

struct ModeOutcome {
    SuiteResult suite;
    std::optional<ControlParams> static_params;
    int failed_configurations = 0;
    int configurations = 0;
};

ModeOutcome run_mode(const HypothesisSet& set, Mode mode, const Config& c, const RunOptions& o) {
    if (mode == Mode::Baseline) {
        auto r = best_static_baseline(set, o.grid, c.trials, c.seed, o, c.threads);
        return {std::move(r.suite), r.best, r.failed_configurations, r.configurations};
    }
    return {run_suite(set, mode, c.trials, c.seed, o, c.threads), std::nullopt, 0, 0};
}

int cmd_run(const Config& c) {
    const auto mode = parse_mode(c.mode);
    if (!mode) throw UsageError("unknown --mode '" + c.mode + "'");
    const HypothesisSet set = resolve_set(c);
    const RunOptions o = resolve_options(c);

    ModeOutcome r = run_mode(set, *mode, c, o);
    nlohmann::json config = echo(c, "run");
    if (r.static_params) {
        config["best_static_params"] = params_json(*r.static_params);
        config["failed_configurations"] = r.failed_configurations;
        config["configurations"] = r.configurations;
        std::printf("best static configuration: alpha=%.6f beta=%.6f theta=%.6f phi=%.6f "
                    "(%d/%d configurations FAILED)\n",
                    r.static_params->alpha, r.static_params->beta, r.static_params->theta, r.static_params->phi,
                    r.failed_configurations, r.configurations);
    }
    print_summary(r.suite.summary);
    emit_results(r.suite.records, {r.suite.summary}, set_name(c), c.out + ".csv", c.out + ".json", config);
    return 0;
}

int cmd_compare(const Config& c) {
    const HypothesisSet set = resolve_set(c);
    const RunOptions o = resolve_options(c);
    nlohmann::json config = echo(c, "compare");
    config.erase("mode");

    std::vector<RunRecord> records;
    std::vector<SuiteSummary> summaries;
    for (Mode mode : {Mode::Baseline, Mode::GridAdaptive, Mode::Optimized}) {
        ModeOutcome r = run_mode(set, mode, c, o);
        if (r.static_params) config["best_static_params"] = params_json(*r.static_params);
        print_summary(r.suite.summary);
        records.insert(records.end(), r.suite.records.begin(), r.suite.records.end());
        summaries.push_back(r.suite.summary);
    }
    emit_results(records, summaries, set_name(c), c.out + ".csv", c.out + ".json", config);
    return 0;
}

Eigen::VectorXd parse_weights(const std::string& text, const HypothesisSet& set) {
    if (text.empty()) return set.prior();
    std::vector<double> values;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("--weights: cannot parse '" + item + "'");
        }
    }
    if (values.size() != set.size())
        throw UsageError("--weights: expected " + std::to_string(set.size()) + " values");
    Eigen::VectorXd w = Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    if ((w.array() < 0.0).any() || std::abs(w.sum() - 1.0) > 1e-9)
        throw UsageError("--weights: not a probability vector");
    return w;
}

int cmd_cost(const Config& c) {
    const HypothesisSet set = resolve_set(c);
    if (c.t < 0.0) throw UsageError("--t must be non-negative");
    const Eigen::VectorXd w = parse_weights(c.weights, set);
    const ControlParams p = ControlParams::wrapped(c.alpha, c.beta, c.theta, c.phi, c.t);
    const JointDistribution joint = joint_distribution(set, w, p);
    std::printf("cost %.12g\n", conditional_entropy_cost(joint));
    std::printf("mutual_information %.12g\n", mutual_information(joint));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian Hamiltonian learning with information-optimal query settings"};
    app.require_subcommand(1);
    Config c;

    auto add_common = [&c](CLI::App* sub) {
        sub->add_option("--set", c.set, "Hypothesis set")->check(CLI::IsMember({"A", "B", "custom"}));
        sub->add_option("--hypotheses", c.hypotheses, "Hypothesis-set JSON (with --set custom)");
    };
    auto add_experiment = [&c](CLI::App* sub) {
        sub->add_option("--trials", c.trials, "Trials per true hypothesis");
        sub->add_option("--seed", c.seed, "Base seed");
        sub->add_option("--threshold", c.threshold, "Success threshold on the true weight");
        sub->add_option("--cap", c.cap, "Iteration cap per run");
        sub->add_option("--grid-points", c.grid_points, "Grid points per angle");
        sub->add_option("--time-points", c.time_points, "Grid points in t (grid-adaptive)");
        sub->add_option("--anneal-iters", c.anneal_iters, "Annealing outer iterations");
        sub->add_option("--anneal-neighbors", c.anneal_neighbors, "Neighbors per annealing step");
        sub->add_option("--anneal-t0", c.anneal_t0, "Initial annealing temperature");
        sub->add_option("--cooling-rate", c.cooling_rate, "Geometric cooling rate");
        sub->add_option("--threads", c.threads, "Worker threads");
        sub->add_option("--out", c.out, "Output path prefix (.csv and .json are appended)");
    };

    CLI::App* run = app.add_subcommand("run", "Run one mode over every true hypothesis");
    add_common(run);
    add_experiment(run);
    run->add_option("--mode", c.mode, "Parameter selection mode")
        ->check(CLI::IsMember({"baseline-search", "grid-adaptive", "optimized"}));

    CLI::App* compare = app.add_subcommand("compare", "Run all three modes on the same seeds");
    add_common(compare);
    add_experiment(compare);

    CLI::App* cost = app.add_subcommand("cost", "Evaluate the conditional-entropy cost at given settings");
    add_common(cost);
    cost->add_option("--alpha", c.alpha);
    cost->add_option("--beta", c.beta);
    cost->add_option("--theta", c.theta);
    cost->add_option("--phi", c.phi);
    cost->add_option("--t", c.t);
    cost->add_option("--weights", c.weights, "Comma-separated weights (default: prior)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return cmd_run(c);
        if (compare->parsed()) return cmd_compare(c);
        if (cost->parsed()) return cmd_cost(c);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const qle::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const qle::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
