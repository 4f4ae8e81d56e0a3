#ifndef QLE_BAYES_HPP
#define QLE_BAYES_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <string>

#include "qle/model.hpp"
#include "qle/random.hpp"

namespace qle {

inline constexpr double kDefaultThreshold = 0.99;
inline constexpr double kStrictThreshold = 0.9999;
inline constexpr int kDefaultIterationCap = 1000;

/// Uniform 1/N, or the set's explicit prior.
Eigen::VectorXd init_weights(const HypothesisSet& set);

/// w_j <- w_j L_j / sum_i w_i L_i. Throws DegenerateEvidence when the
/// posterior mass sum_i w_i L_i is <= 1e-300.
Eigen::VectorXd bayes_update(const Eigen::VectorXd& weights, const Eigen::VectorXd& likelihoods);

struct PghDraw {
    std::size_t i = 0;
    std::size_t j = 0;
    double time = 0.0;  // 1 / |H_i - H_j|_2
};

inline constexpr int kPghAttempts = 1000;
inline constexpr double kPghMinNorm = 1e-9;

/// Particle guess heuristic: draw i, j independently from the weights until
/// i != j with |H_i - H_j|_2 > 1e-9 (at most 1000 attempts). Past the cap the
/// most probable admissible pair (largest w_i w_j, lexicographic ties) is
/// used. Throws PghFailure when no admissible pair has positive weight.
PghDraw pgh_draw(const HypothesisSet& set, const Eigen::VectorXd& weights, RandomStream& rng);

inline double pgh_time(const HypothesisSet& set, const Eigen::VectorXd& weights, RandomStream& rng) {
    return pgh_draw(set, weights, rng).time;
}

struct RunStatus {
    enum class Kind { Running, Success, WrongConvergence, Exhausted };

    Kind kind = Kind::Running;
    int iterations = 0;
    std::size_t wrong_index = 0;  // only meaningful for WrongConvergence

    bool finished() const noexcept { return kind != Kind::Running; }
    bool success() const noexcept { return kind == Kind::Success; }

    friend bool operator==(const RunStatus&, const RunStatus&) = default;
};

std::string to_string(RunStatus::Kind kind);

/// Success when w[true_index] > threshold, WrongConvergence when another
/// weight is, Exhausted once iteration >= cap, otherwise Running.
RunStatus check_status(const Eigen::VectorXd& weights, std::size_t true_index, double threshold,
                       int iteration, int cap);

} // namespace qle

#endif // QLE_BAYES_HPP
