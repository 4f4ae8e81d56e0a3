#include "qle/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <tuple>

#include "qle/info.hpp"
#include "qle/random.hpp"

namespace qle {

std::string_view mode_name(Mode mode) {
    switch (mode) {
    case Mode::Baseline: return "baseline-search";
    case Mode::GridAdaptive: return "grid-adaptive";
    case Mode::Optimized: return "optimized";
    }
    return "unknown";
}

std::optional<Mode> parse_mode(std::string_view name) {
    for (Mode m : {Mode::Baseline, Mode::GridAdaptive, Mode::Optimized})
        if (mode_name(m) == name) return m;
    return std::nullopt;
}

HypothesisSet preset_set_a() {
    return HypothesisSet({"sx", "2sx", "sz", "2sz"},
                         {sigma_x(), 2.0 * sigma_x(), sigma_z(), 2.0 * sigma_z()});
}

HypothesisSet preset_set_b() {
    using C = std::complex<double>;
    auto diag = [](double a, double d) {
        ComplexMatrix m = ComplexMatrix::Zero(2, 2);
        m(0, 0) = a;
        m(1, 1) = d;
        return HermitianMatrix(m);
    };
    ComplexMatrix had(2, 2);
    had << C(1), C(1), C(1), C(-1);
    const HermitianMatrix scaled_had(ComplexMatrix(had * (4.0 / std::sqrt(2.0))));
    ComplexMatrix last(2, 2);
    last << C(1), C(2), C(2), C(-1);

    return HypothesisSet({"sx+sz", "diag(1.2,-0.8)", "2sy+diag(1,2)", "4/sqrt2*[[1,1],[1,-1]]",
                          "sx+4/sqrt2*[[1,1],[1,-1]]", "[[1,2],[2,-1]]"},
                         {sigma_x() + sigma_z(), diag(1.2, -0.8), 2.0 * sigma_y() + diag(1.0, 2.0), scaled_had,
                          sigma_x() + scaled_had, HermitianMatrix(last)});
}

namespace {

Eigen::VectorXd likelihoods_for(const Eigen::MatrixXd& prob_table, std::size_t outcome) {
    return prob_table.col(static_cast<Eigen::Index>(outcome));
}

// probs(f, a) for every hypothesis under one parameter setting.
Eigen::MatrixXd probability_table(const HypothesisSet& set, const ControlParams& params) {
    Eigen::MatrixXd table(static_cast<Eigen::Index>(set.size()), set.dim());
    for (std::size_t f = 0; f < set.size(); ++f)
        table.row(static_cast<Eigen::Index>(f)) = outcome_probs(set.spectrum(f), params).probs.transpose();
    return table;
}

// Baseline parameters are fixed per run and t is one of the N(N-1)/2 PGH
// times, so each pair's probability table is computed once.
class PghTableCache {
public:
    PghTableCache(const HypothesisSet& set, const ControlParams& static_params)
        : set_(set), params_(static_params), tables_(set.size() * set.size()) {}

    const Eigen::MatrixXd& table(const PghDraw& draw) {
        const std::size_t lo = std::min(draw.i, draw.j), hi = std::max(draw.i, draw.j);
        auto& slot = tables_[lo * set_.size() + hi];
        if (!slot) {
            ControlParams p = params_;
            p.t = draw.time;
            slot = probability_table(set_, p);
        }
        return *slot;
    }

private:
    const HypothesisSet& set_;
    ControlParams params_;
    std::vector<std::optional<Eigen::MatrixXd>> tables_;
};

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    pool.clear();
    if (error) std::rethrow_exception(error);
}

std::size_t argmax(const Eigen::VectorXd& v) {
    Eigen::Index k = 0;
    v.maxCoeff(&k);
    return static_cast<std::size_t>(k);
}

} // namespace

RunRecord run_single(const HypothesisSet& set, std::size_t true_index, Mode mode, const RunOptions& options,
                     std::uint64_t seed) {
    if (true_index >= set.size())
        throw InvalidArgument("run_single: true index " + std::to_string(true_index) + " out of range for " +
                              std::to_string(set.size()) + " hypotheses");
    if (options.cap < 1) throw InvalidArgument("run_single: iteration cap must be positive");
    // Validates the threshold before any work is done.
    (void)check_status(init_weights(set), true_index, options.threshold, 0, options.cap);

    const auto started = std::chrono::steady_clock::now();
    RunRecord record;
    record.mode = mode;
    record.true_index = true_index;
    record.true_label = set.label(true_index);
    record.seed = seed;
    record.threshold = options.threshold;

    RandomStream rng(seed);
    const ParamRanges ranges{set.t_max()};
    std::optional<PghTableCache> pgh_cache;
    if (mode == Mode::Baseline) pgh_cache.emplace(set, options.static_params);

    Eigen::VectorXd weights = init_weights(set);
    RunStatus status;
    for (int iteration = 1; !status.finished(); ++iteration) {
        Eigen::MatrixXd table;
        switch (mode) {
        case Mode::Baseline:
            table = pgh_cache->table(pgh_draw(set, weights, rng));
            break;
        case Mode::GridAdaptive:
        case Mode::Optimized: {
            const CostFunction cost = [&](const ControlParams& p) {
                return conditional_entropy_cost(joint_distribution(set, weights, p));
            };
            const ControlParams chosen = mode == Mode::Optimized
                                             ? anneal(cost, ranges, options.anneal, rng).best
                                             : grid_search(cost, options.grid, ranges, true).best;
            table = probability_table(set, chosen);
            break;
        }
        }

        const std::size_t outcome =
            sample_outcome(OutcomeDistribution{table.row(static_cast<Eigen::Index>(true_index)).transpose()}, rng);
        try {
            weights = bayes_update(weights, likelihoods_for(table, outcome));
        } catch (const DegenerateEvidence&) {
            status = {RunStatus::Kind::WrongConvergence, iteration, argmax(weights)};
            break;
        }
        if (options.record_trajectory) record.trajectory.push_back(weights);
        status = check_status(weights, true_index, options.threshold, iteration, options.cap);
    }

    record.status = status;
    record.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - started)
                              .count();
    return record;
}

int SuiteSummary::total_failures() const {
    int total = 0;
    for (const auto& h : per_hypothesis) total += h.failures;
    return total;
}

SuiteSummary summarize(Mode mode, const HypothesisSet& set, double threshold, int trials,
                       const std::vector<RunRecord>& records) {
    SuiteSummary summary;
    summary.mode = mode;
    summary.threshold = threshold;
    summary.trials = trials;
    summary.per_hypothesis.resize(set.size());

    double total = 0.0;
    bool any_failed_entirely = false;
    for (std::size_t f = 0; f < set.size(); ++f) {
        HypothesisStats& stats = summary.per_hypothesis[f];
        stats.label = set.label(f);
        std::vector<double> successes;
        for (const RunRecord& r : records) {
            if (r.true_index != f) continue;
            ++stats.trials;
            if (auto it = r.iterations()) successes.push_back(*it);
            else ++stats.failures;
        }
        if (successes.empty()) {
            any_failed_entirely = true;
            continue;
        }
        const double n = static_cast<double>(successes.size());
        double mean = 0.0;
        for (double x : successes) mean += x;
        mean /= n;
        double var = 0.0;
        for (double x : successes) var += (x - mean) * (x - mean);
        stats.mean = mean;
        stats.std = std::sqrt(var / n);
        total += mean;
    }
    if (!any_failed_entirely) summary.total_mean = total;
    return summary;
}

SuiteResult run_suite(const HypothesisSet& set, Mode mode, int trials, std::uint64_t base_seed,
                      const RunOptions& options, int threads) {
    if (trials < 1) throw InvalidArgument("run_suite: trials must be >= 1");
    const std::size_t n = set.size();
    const auto per = static_cast<std::size_t>(trials);

    SuiteResult result;
    result.records.resize(n * per);
    parallel_for(n * per, threads, [&](std::size_t task) {
        const std::size_t f = task / per;
        const std::size_t k = task % per;
        RunRecord r = run_single(set, f, mode, options, split_seed(base_seed, f, k));
        r.trial = static_cast<int>(k);
        result.records[task] = std::move(r);
    });
    result.summary = summarize(mode, set, options.threshold, trials, result.records);
    return result;
}

BaselineSearchResult best_static_baseline(const HypothesisSet& set, const GridSpec& grid, int trials,
                                          std::uint64_t base_seed, const RunOptions& options, int threads) {
    const std::vector<ControlParams> points = grid_points(grid, ParamRanges{set.t_max()}, false);
    std::vector<SuiteResult> suites(points.size());
    parallel_for(points.size(), threads, [&](std::size_t g) {
        RunOptions local = options;
        local.static_params = points[g];
        suites[g] = run_suite(set, Mode::Baseline, trials, base_seed, local, 1);
    });

    auto rank = [&](std::size_t g) {
        const SuiteSummary& s = suites[g].summary;
        return std::make_tuple(!s.total_mean.has_value(), s.total_mean.value_or(0.0), s.total_failures(), g);
    };
    std::size_t best = 0;
    int failed = 0;
    for (std::size_t g = 0; g < points.size(); ++g) {
        if (!suites[g].summary.total_mean) ++failed;
        if (rank(g) < rank(best)) best = g;
    }

    BaselineSearchResult out;
    out.best = points[best];
    out.suite = std::move(suites[best]);
    out.configurations = static_cast<int>(points.size());
    out.failed_configurations = failed;
    return out;
}

} // namespace qle
