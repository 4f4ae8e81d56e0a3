#include "qle/optimizer.hpp"

#include <cmath>
#include <limits>

namespace qle {

ParamVector to_vector(const ControlParams& p) { return {p.t, p.theta, p.phi, p.alpha, p.beta}; }

ControlParams from_vector(const ParamVector& v) {
    ControlParams p;
    p.t = v[0];
    p.theta = v[1];
    p.phi = v[2];
    p.alpha = v[3];
    p.beta = v[4];
    return p;
}

ControlParams ParamRanges::wrap(const ParamVector& v) const {
    return ControlParams::wrapped(v[3], v[4], v[1], v[2], v[0], t_max);
}

void AnnealConfig::validate() const {
    if (!(initial_temperature > 0.0) || !std::isfinite(initial_temperature))
        throw InvalidArgument("AnnealConfig: initial temperature must be positive");
    if (!(cooling_rate > 0.0 && cooling_rate < 1.0))
        throw InvalidArgument("AnnealConfig: cooling rate must lie in (0, 1)");
    if (outer_iterations < 1) throw InvalidArgument("AnnealConfig: outer iterations must be positive");
    if (neighbors_per_step < 1) throw InvalidArgument("AnnealConfig: neighbors per step must be positive");
}

ControlParams neighbor(const ControlParams& x, double temperature, const ParamRanges& ranges,
                       RandomStream& rng) {
    if (!(temperature > 0.0)) throw InvalidArgument("neighbor: temperature must be positive");
    const ParamVector span = ranges.spans();
    ParamVector v = to_vector(x);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += temperature * rng.uniform(-1.0, 1.0) * (span[k] / 2);
    return ranges.wrap(v);
}

bool accept_move(double cost_old, double cost_new, double temperature, RandomStream& rng) {
    if (cost_new < cost_old) return true;
    return rng.uniform() < std::exp((cost_old - cost_new) / temperature);
}

AnnealResult anneal(const CostFunction& cost, const ParamRanges& ranges, const AnnealConfig& config,
                    RandomStream& rng) {
    config.validate();
    const ParamVector span = ranges.spans();
    ParamVector start;
    for (std::size_t k = 0; k < start.size(); ++k) start[k] = rng.uniform() * span[k];

    ControlParams current = ranges.wrap(start);
    double current_cost = cost(current);
    AnnealResult result{current, current_cost, {}};
    result.best_cost_history.reserve(static_cast<std::size_t>(config.outer_iterations));

    double temperature = config.initial_temperature;
    for (int step = 0; step < config.outer_iterations; ++step) {
        ControlParams candidate;
        double candidate_cost = std::numeric_limits<double>::infinity();
        for (int n = 0; n < config.neighbors_per_step; ++n) {
            const ControlParams trial = neighbor(current, temperature, ranges, rng);
            const double c = cost(trial);
            if (c < candidate_cost) {
                candidate = trial;
                candidate_cost = c;
            }
        }
        if (accept_move(current_cost, candidate_cost, temperature, rng)) {
            current = candidate;
            current_cost = candidate_cost;
        }
        if (candidate_cost < result.best_cost) {
            result.best = candidate;
            result.best_cost = candidate_cost;
        }
        result.best_cost_history.push_back(result.best_cost);
        temperature *= config.cooling_rate;
    }
    return result;
}

void GridSpec::validate(bool sweep_time) const {
    if (points_per_angle < 1 || (sweep_time && time_points < 1))
        throw InvalidArgument("GridSpec: point counts must be positive");
}

std::vector<ControlParams> grid_points(const GridSpec& grid, const ParamRanges& ranges, bool sweep_time) {
    grid.validate(sweep_time);
    constexpr double pi = std::numbers::pi;
    const int n = grid.points_per_angle;
    const int nt = sweep_time ? grid.time_points : 1;
    auto step = [](double span, int k, int count) { return span * k / count; };

    std::vector<ControlParams> out;
    out.reserve(static_cast<std::size_t>(n) * n * n * n * static_cast<std::size_t>(nt));
    for (int ia = 0; ia < n; ++ia)
        for (int ib = 0; ib < n; ++ib)
            for (int it = 0; it < n; ++it)
                for (int ip = 0; ip < n; ++ip)
                    for (int k = 0; k < nt; ++k) {
                        ControlParams p;
                        p.alpha = step(pi, ia, n);
                        p.beta = step(2 * pi, ib, n);
                        p.theta = step(pi, it, n);
                        p.phi = step(2 * pi, ip, n);
                        p.t = sweep_time ? step(ranges.t_max, k, nt) : 0.0;
                        out.push_back(p);
                    }
    return out;
}

GridResult grid_search(const CostFunction& cost, const GridSpec& grid, const ParamRanges& ranges,
                       bool sweep_time) {
    GridResult result{{}, std::numeric_limits<double>::infinity()};
    for (const ControlParams& p : grid_points(grid, ranges, sweep_time)) {
        const double c = cost(p);
        if (c < result.best_cost) {
            result.best = p;
            result.best_cost = c;
        }
    }
    return result;
}

} // namespace qle
