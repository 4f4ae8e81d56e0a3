#include "qle/bayes.hpp"

#include <cmath>
#include <string>

namespace qle {

Eigen::VectorXd init_weights(const HypothesisSet& set) { return set.prior(); }

Eigen::VectorXd bayes_update(const Eigen::VectorXd& weights, const Eigen::VectorXd& likelihoods) {
    if (weights.size() != likelihoods.size())
        throw InvalidArgument("bayes_update: weights and likelihoods differ in length");
    if (!likelihoods.allFinite() || (likelihoods.array() < 0.0).any())
        throw InvalidArgument("bayes_update: likelihoods must be finite and non-negative");
    Eigen::VectorXd posterior = weights.cwiseProduct(likelihoods);
    const double evidence = posterior.sum();
    if (!(evidence > 1e-300))
        throw DegenerateEvidence("bayes_update: posterior mass " + std::to_string(evidence) +
                                 " vanished under every hypothesis");
    posterior /= evidence;
    return posterior;
}

namespace {

std::size_t draw_index(const Eigen::VectorXd& weights, RandomStream& rng) {
    const double u = rng.uniform() * weights.sum();
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (Eigen::Index k = 0; k < weights.size(); ++k) {
        if (weights(k) <= 0.0) continue;
        last_positive = static_cast<std::size_t>(k);
        cumulative += weights(k);
        if (u < cumulative) return last_positive;
    }
    return last_positive;
}

} // namespace

PghDraw pgh_draw(const HypothesisSet& set, const Eigen::VectorXd& weights, RandomStream& rng) {
    if (static_cast<std::size_t>(weights.size()) != set.size())
        throw InvalidArgument("pgh_draw: weights length does not match the hypothesis count");
    if ((weights.array() > 0.0).count() < 2)
        throw PghFailure("pgh_draw: fewer than two hypotheses carry weight");

    for (int attempt = 0; attempt < kPghAttempts; ++attempt) {
        const std::size_t i = draw_index(weights, rng);
        const std::size_t j = draw_index(weights, rng);
        if (i == j) continue;
        const double norm = set.pair_norm(i, j);
        if (norm > kPghMinNorm) return {i, j, 1.0 / norm};
    }

    PghDraw best;
    double best_mass = 0.0;
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            const double mass = weights(static_cast<Eigen::Index>(i)) * weights(static_cast<Eigen::Index>(j));
            const double norm = set.pair_norm(i, j);
            if (mass > best_mass && norm > kPghMinNorm) {
                best_mass = mass;
                best = {i, j, 1.0 / norm};
            }
        }
    if (best_mass <= 0.0) throw PghFailure("pgh_draw: no admissible hypothesis pair");
    return best;
}

std::string to_string(RunStatus::Kind kind) {
    switch (kind) {
    case RunStatus::Kind::Running: return "running";
    case RunStatus::Kind::Success: return "success";
    case RunStatus::Kind::WrongConvergence: return "wrong_convergence";
    case RunStatus::Kind::Exhausted: return "exhausted";
    }
    return "unknown";
}

RunStatus check_status(const Eigen::VectorXd& weights, std::size_t true_index, double threshold,
                       int iteration, int cap) {
    if (!(threshold > 0.5 && threshold < 1.0))
        throw InvalidArgument("check_status: threshold must lie in (0.5, 1)");
    if (true_index >= static_cast<std::size_t>(weights.size()))
        throw InvalidArgument("check_status: true index out of range");

    if (weights(static_cast<Eigen::Index>(true_index)) > threshold)
        return {RunStatus::Kind::Success, iteration, 0};
    for (Eigen::Index k = 0; k < weights.size(); ++k)
        if (weights(k) > threshold) return {RunStatus::Kind::WrongConvergence, iteration, static_cast<std::size_t>(k)};
    if (iteration >= cap) return {RunStatus::Kind::Exhausted, iteration, 0};
    return {RunStatus::Kind::Running, iteration, 0};
}

} // namespace qle
