#ifndef QLE_MODEL_HPP
#define QLE_MODEL_HPP

// Single-qubit measurement model: parameterized input state, measurement
// rotation, outcome probabilities and candidate Hamiltonian sets.

#include <Eigen/Dense>

#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "qle/errors.hpp"
#include "qle/linalg.hpp"
#include "qle/random.hpp"

namespace qle {

HermitianMatrix identity2();
HermitianMatrix sigma_x();
HermitianMatrix sigma_y();
HermitianMatrix sigma_z();

/// x mod period into [0, period). An infinite period leaves x unchanged.
double wrap_periodic(double x, double period);

/// The five control settings of one query. Angles are kept in their
/// canonical half-open ranges; t in [0, t_max).
struct ControlParams {
    double alpha = 0.0;  // initial-state polar angle, [0, pi)
    double beta = 0.0;   // initial-state relative phase, [0, 2 pi)
    double theta = 0.0;  // measurement axis polar angle, [0, pi)
    double phi = 0.0;    // measurement axis azimuth, [0, 2 pi)
    double t = 0.0;      // evolution time, [0, t_max)

    /// Canonicalize by modular wrapping. Pass t_max = infinity to leave t
    /// as is (it must then be non-negative).
    static ControlParams wrapped(double alpha, double beta, double theta, double phi, double t,
                                 double t_max = std::numeric_limits<double>::infinity());

    bool in_range(double t_max = std::numeric_limits<double>::infinity()) const;

    friend bool operator==(const ControlParams&, const ControlParams&) = default;
};

/// Probabilities over computational-basis outcomes.
struct OutcomeDistribution {
    Eigen::VectorXd probs;

    Eigen::Index size() const noexcept { return probs.size(); }
    double operator[](Eigen::Index a) const { return probs(a); }
};

/// cos(alpha)|0> + e^{i beta} sin(alpha)|1>.
StateVector initial_state(double alpha, double beta);

/// [[cos(theta/2), e^{-i phi} sin(theta/2)], [e^{i phi} sin(theta/2), -cos(theta/2)]].
ComplexMatrix w_matrix(double theta, double phi);

/// W U(t) |psi_1>.
ComplexVector evolved_state(const EigenDecompositionD& spectrum, const ControlParams& params);

/// probs[a] = |<a| W exp(-i H t) |psi_1>|^2.
OutcomeDistribution outcome_probs(const HermitianMatrix& h, const ControlParams& params);
OutcomeDistribution outcome_probs(const EigenDecompositionD& spectrum, const ControlParams& params);

/// Inverse-CDF draw in stored index order.
std::size_t sample_outcome(const OutcomeDistribution& dist, RandomStream& rng);

struct DegeneratePair {
    std::size_t i = 0;
    std::size_t j = 0;
    std::string label_i;
    std::string label_j;
    double shift = 0.0;  // c with H_i - H_j = c * identity
};

inline constexpr double kDegeneracyTolerance = 1e-8;

/// All pairs (i < j) for which H_i - H_j lies within 1e-8 (max norm) of c * identity.
std::vector<DegeneratePair> validate_hypothesis_set(const std::vector<std::string>& labels,
                                                    const std::vector<HermitianMatrix>& hamiltonians);

class DegenerateHypotheses : public InvalidArgument {
public:
    explicit DegenerateHypotheses(std::vector<DegeneratePair> pairs);
    const std::vector<DegeneratePair>& pairs() const noexcept { return pairs_; }

private:
    std::vector<DegeneratePair> pairs_;
};

/// Labeled candidate Hamiltonians with a prior. Construction validates the
/// simplex, shared dimension and the absence of shift-degenerate pairs, and
/// caches each Hamiltonian's eigendecomposition.
class HypothesisSet {
public:
    HypothesisSet(std::vector<std::string> labels, std::vector<HermitianMatrix> hamiltonians,
                  std::vector<double> prior = {});

    std::size_t size() const noexcept { return hamiltonians_.size(); }
    Eigen::Index dim() const noexcept { return hamiltonians_.front().dim(); }

    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const HermitianMatrix& hamiltonian(std::size_t i) const { return hamiltonians_.at(i); }
    const std::vector<HermitianMatrix>& hamiltonians() const noexcept { return hamiltonians_; }
    const EigenDecompositionD& spectrum(std::size_t i) const { return spectra_.at(i); }
    const Eigen::VectorXd& prior() const noexcept { return prior_; }
    /// Spectral norm of H_i - H_j, precomputed.
    double pair_norm(std::size_t i, std::size_t j) const {
        return pair_norms_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    bool has_explicit_prior() const noexcept { return explicit_prior_; }

    /// Smallest nonzero eigenvalue gap over all hypotheses.
    double min_energy_gap() const;
    /// 2 pi / min_energy_gap().
    double t_max() const;

private:
    std::vector<std::string> labels_;
    std::vector<HermitianMatrix> hamiltonians_;
    std::vector<EigenDecompositionD> spectra_;
    Eigen::VectorXd prior_;
    Eigen::MatrixXd pair_norms_;
    bool explicit_prior_ = false;
};

} // namespace qle

#endif // QLE_MODEL_HPP
