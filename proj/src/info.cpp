#include "qle/info.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace qle {

namespace {

constexpr double kSimplexTolerance = 1e-9;

double entropy_of(const Eigen::VectorXd& p) {
    return shannon_entropy(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
}

void check_weights(const HypothesisSet& set, const Eigen::VectorXd& weights) {
    if (static_cast<std::size_t>(weights.size()) != set.size())
        throw InvalidArgument("weights length does not match the hypothesis count");
    if ((weights.array() < 0.0).any() || std::abs(weights.sum() - 1.0) > kSimplexTolerance)
        throw InvalidArgument("weights are not a probability vector");
}

} // namespace

JointDistribution::JointDistribution(Eigen::MatrixXd table) : table_(std::move(table)) {
    if (table_.size() == 0) throw InvalidArgument("JointDistribution: empty table");
    if (!table_.allFinite() || (table_.array() < 0.0).any())
        throw InvalidArgument("JointDistribution: entries must be finite and non-negative");
    if (std::abs(table_.sum() - 1.0) > kSimplexTolerance)
        throw InvalidArgument("JointDistribution: total mass " + std::to_string(table_.sum()) + " != 1");
}

JointDistribution joint_distribution(const HypothesisSet& set, const Eigen::VectorXd& weights,
                                     const ControlParams& params) {
    check_weights(set, weights);
    const auto n = static_cast<Eigen::Index>(set.size());
    Eigen::MatrixXd table(n, set.dim());
    for (Eigen::Index f = 0; f < n; ++f) {
        if (weights(f) == 0.0) {
            table.row(f).setZero();
            continue;
        }
        table.row(f) = weights(f) * outcome_probs(set.spectrum(static_cast<std::size_t>(f)), params).probs.transpose();
    }
    return JointDistribution(std::move(table));
}

double conditional_entropy_cost(const JointDistribution& joint) {
    const Eigen::MatrixXd& t = joint.table();
    double cost = 0.0;
    for (Eigen::Index a = 0; a < t.cols(); ++a) {
        const double q = t.col(a).sum();
        if (q <= 0.0) continue;
        cost += q * entropy_of(t.col(a) / q);
    }
    return cost;
}

double hypothesis_entropy(const JointDistribution& joint) {
    return entropy_of(joint.hypothesis_marginal());
}

double mutual_information(const JointDistribution& joint) {
    return hypothesis_entropy(joint) - conditional_entropy_cost(joint);
}

CqState build_cq_state(const HypothesisSet& set, const Eigen::VectorXd& weights,
                       const ControlParams& params) {
    check_weights(set, weights);
    CqState cq;
    cq.prior = weights;
    cq.conditional_states.reserve(set.size());
    for (std::size_t f = 0; f < set.size(); ++f)
        cq.conditional_states.push_back(evolved_state(set.spectrum(f), params));
    return cq;
}

DenseMutualInformation dense_mutual_information(const CqState& cq) {
    const auto n = cq.prior.size();
    if (n < 1 || static_cast<std::size_t>(n) != cq.conditional_states.size())
        throw InvalidArgument("CqState: prior and conditional states disagree in length");
    const auto d = cq.conditional_states.front().size();
    const auto dim = n * d;
    if (dim > kDenseOracleDimCap)
        throw DimensionCapExceeded("dense_mutual_information: joint dimension " + std::to_string(dim) +
                                   " exceeds " + std::to_string(kDenseOracleDimCap));

    ComplexMatrix rho_fy = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index f = 0; f < n; ++f) {
        const ComplexVector& phi = cq.conditional_states[static_cast<std::size_t>(f)];
        if (phi.size() != d || std::abs(phi.squaredNorm() - 1.0) > 1e-10)
            throw InvalidArgument("CqState: conditional state is not a unit vector of the shared dimension");
        rho_fy.block(f * d, f * d, d, d) = cq.prior(f) * phi * phi.adjoint();
    }

    // Tr_F
    ComplexMatrix rho_y = ComplexMatrix::Zero(d, d);
    for (Eigen::Index f = 0; f < n; ++f) rho_y += rho_fy.block(f * d, f * d, d, d);

    DenseMutualInformation out;
    out.s_fy = von_neumann_entropy(HermitianMatrix(rho_fy));
    out.s_y = von_neumann_entropy(HermitianMatrix(rho_y));

    // Measure Y in the computational basis: outcome a leaves F in <a|rho_FY|a> / q_a.
    for (Eigen::Index a = 0; a < d; ++a) {
        ComplexMatrix rho_f(n, n);
        for (Eigen::Index f = 0; f < n; ++f)
            for (Eigen::Index g = 0; g < n; ++g) rho_f(f, g) = rho_fy(f * d + a, g * d + a);
        const double q = rho_f.trace().real();
        if (q <= 0.0) continue;
        out.s_fy_given_z += q * von_neumann_entropy(HermitianMatrix(ComplexMatrix(rho_f / q)));
    }

    out.discord = out.s_y - out.s_fy + out.s_fy_given_z;
    out.mutual_information = out.s_y - out.discord;
    return out;
}

} // namespace qle
