#ifndef QLE_OPTIMIZER_HPP
#define QLE_OPTIMIZER_HPP

// Control-parameter search: simulated annealing with geometric cooling and
// exhaustive grid search.

#include <array>
#include <functional>
#include <numbers>
#include <vector>

#include "qle/model.hpp"
#include "qle/random.hpp"

namespace qle {

using CostFunction = std::function<double(const ControlParams&)>;

/// Annealing vector layout is [t, theta, phi, alpha, beta].
using ParamVector = std::array<double, 5>;

ParamVector to_vector(const ControlParams& p);
ControlParams from_vector(const ParamVector& v);

/// Half-open range of each control parameter; only t's upper end varies.
struct ParamRanges {
    double t_max = 2 * std::numbers::pi;

    /// Widths in [t, theta, phi, alpha, beta] order.
    ParamVector spans() const {
        return {t_max, std::numbers::pi, 2 * std::numbers::pi, std::numbers::pi, 2 * std::numbers::pi};
    }
    ControlParams wrap(const ParamVector& v) const;
    bool contains(const ControlParams& p) const { return p.in_range(t_max); }
};

struct AnnealConfig {
    double initial_temperature = 1.0;
    double cooling_rate = 0.9;
    int outer_iterations = 200;
    int neighbors_per_step = 8;

    void validate() const;
};

struct AnnealResult {
    ControlParams best;
    double best_cost = 0.0;
    std::vector<double> best_cost_history;  // best-so-far after each outer step
};

/// x + T * u o (span / 2), u ~ U[-1, 1]^5, wrapped into the ranges.
ControlParams neighbor(const ControlParams& x, double temperature, const ParamRanges& ranges,
                       RandomStream& rng);

/// Metropolis rule on the best candidate: downhill always, uphill with
/// probability exp((cost_old - cost_new) / T).
bool accept_move(double cost_old, double cost_new, double temperature, RandomStream& rng);

/// Simulated annealing from a uniformly random start. Each step evaluates
/// `neighbors_per_step` neighbors of the current point, applies the
/// acceptance rule to the cheapest one and cools T <- cooling_rate * T.
/// Returns the best point ever visited.
AnnealResult anneal(const CostFunction& cost, const ParamRanges& ranges, const AnnealConfig& config,
                    RandomStream& rng);

struct GridSpec {
    int points_per_angle = 5;
    int time_points = 8;

    void validate(bool sweep_time) const;
};

/// Grid points in lexicographic (alpha, beta, theta, phi, t) order. Angles
/// are k * span / points; the wrapped endpoint is excluded. Without
/// `sweep_time`, t is 0.
std::vector<ControlParams> grid_points(const GridSpec& grid, const ParamRanges& ranges, bool sweep_time);

struct GridResult {
    ControlParams best;
    double best_cost = 0.0;
};

/// Exact minimizer over the grid; ties go to the lexicographically first point.
GridResult grid_search(const CostFunction& cost, const GridSpec& grid, const ParamRanges& ranges,
                       bool sweep_time);

} // namespace qle

#endif // QLE_OPTIMIZER_HPP
