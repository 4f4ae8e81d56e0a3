#ifndef QLE_INFO_HPP
#define QLE_INFO_HPP

// Information-theoretic quantities of one query: the joint hypothesis/outcome
// table, the conditional-entropy cost, mutual information, and a dense
// classical-quantum-state evaluation of the same mutual information.

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "qle/linalg.hpp"
#include "qle/model.hpp"

namespace qle {

/// table(f, a) = p_f * p_f^{(a)}: rows are hypotheses, columns outcomes.
class JointDistribution {
public:
    /// Validates non-negativity and unit total (1e-9).
    explicit JointDistribution(Eigen::MatrixXd table);

    const Eigen::MatrixXd& table() const noexcept { return table_; }
    Eigen::Index hypotheses() const noexcept { return table_.rows(); }
    Eigen::Index outcomes() const noexcept { return table_.cols(); }

    Eigen::VectorXd hypothesis_marginal() const { return table_.rowwise().sum(); }
    Eigen::VectorXd outcome_marginal() const { return table_.colwise().sum().transpose(); }

private:
    Eigen::MatrixXd table_;
};

JointDistribution joint_distribution(const HypothesisSet& set, const Eigen::VectorXd& weights,
                                     const ControlParams& params);

/// H(F|Y) in bits; outcomes of zero total probability contribute nothing.
double conditional_entropy_cost(const JointDistribution& joint);

/// I(F;Y) = H(F) - H(F|Y) in bits.
double mutual_information(const JointDistribution& joint);

/// Entropy of the hypothesis marginal, H(F).
double hypothesis_entropy(const JointDistribution& joint);

struct CqState {
    Eigen::VectorXd prior;
    std::vector<ComplexVector> conditional_states;  // W U_f |psi_1>, unit norm
};

CqState build_cq_state(const HypothesisSet& set, const Eigen::VectorXd& weights,
                       const ControlParams& params);

/// Every entropy computed along the dense route, in bits.
struct DenseMutualInformation {
    double s_y = 0.0;                  // S(rho_Y)
    double s_fy = 0.0;                 // S(rho_FY)
    double s_fy_given_z = 0.0;         // sum_a q_a S(rho_{F|a})
    double discord = 0.0;              // D_Y(rho_FY; Z)
    double mutual_information = 0.0;   // S(rho_Y) - D_Y
};

inline constexpr Eigen::Index kDenseOracleDimCap = 64;

/// Builds rho_FY = sum_f p_f |f><f| (x) |phi_f><phi_f| explicitly and evaluates
/// the discord form of I(F;Y). Throws DimensionCapExceeded past 64x64.
DenseMutualInformation dense_mutual_information(const CqState& cq);

inline double mi_via_density_matrices(const CqState& cq) {
    return dense_mutual_information(cq).mutual_information;
}

} // namespace qle

#endif // QLE_INFO_HPP
