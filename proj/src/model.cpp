#include "qle/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace qle {

namespace {

using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;

HermitianMatrix make2(C a, C b, C c, C d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return HermitianMatrix(m);
}

std::string describe(const std::vector<DegeneratePair>& pairs) {
    std::ostringstream os;
    os << "shift-degenerate hypotheses:";
    for (const auto& p : pairs)
        os << " (" << p.label_i << ", " << p.label_j << ", c=" << p.shift << ")";
    return os.str();
}

} // namespace

HermitianMatrix identity2() { return make2(1, 0, 0, 1); }
HermitianMatrix sigma_x() { return make2(0, 1, 1, 0); }
HermitianMatrix sigma_y() { return make2(0, C(0, -1), C(0, 1), 0); }
HermitianMatrix sigma_z() { return make2(1, 0, 0, -1); }

double wrap_periodic(double x, double period) {
    if (!std::isfinite(x)) throw InvalidArgument("wrap_periodic: non-finite value");
    if (std::isinf(period)) return x;
    double r = x - period * std::floor(x / period);
    if (r >= period || r < 0.0) r = 0.0;
    return r;
}

ControlParams ControlParams::wrapped(double alpha, double beta, double theta, double phi, double t,
                                     double t_max) {
    if (!(t_max > 0.0)) throw InvalidArgument("ControlParams: t_max must be positive");
    if (std::isinf(t_max) && t < 0.0)
        throw InvalidArgument("ControlParams: negative time without a wrap range");
    return {wrap_periodic(alpha, kPi), wrap_periodic(beta, 2 * kPi), wrap_periodic(theta, kPi),
            wrap_periodic(phi, 2 * kPi), wrap_periodic(t, t_max)};
}

bool ControlParams::in_range(double t_max) const {
    auto inside = [](double x, double hi) { return std::isfinite(x) && x >= 0.0 && x < hi; };
    return inside(alpha, kPi) && inside(beta, 2 * kPi) && inside(theta, kPi) &&
           inside(phi, 2 * kPi) && (std::isinf(t_max) ? (std::isfinite(t) && t >= 0.0) : inside(t, t_max));
}

StateVector initial_state(double alpha, double beta) {
    ComplexVector v(2);
    v << std::cos(alpha), std::polar(1.0, beta) * std::sin(alpha);
    return StateVector(v);
}

ComplexMatrix w_matrix(double theta, double phi) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    ComplexMatrix w(2, 2);
    w << c, std::polar(s, -phi), std::polar(s, phi), -c;
    return w;
}

ComplexVector evolved_state(const EigenDecompositionD& spectrum, const ControlParams& params) {
    if (spectrum.eigenvalues.size() != 2)
        throw InvalidArgument("evolved_state: only single-qubit Hamiltonians are supported");
    const ComplexVector psi = initial_state(params.alpha, params.beta).amplitudes();
    return w_matrix(params.theta, params.phi) * (propagator(spectrum, params.t) * psi);
}

OutcomeDistribution outcome_probs(const EigenDecompositionD& spectrum, const ControlParams& params) {
    const ComplexVector out = evolved_state(spectrum, params);
    OutcomeDistribution dist{out.cwiseAbs2()};
    dist.probs /= dist.probs.sum();
    return dist;
}

OutcomeDistribution outcome_probs(const HermitianMatrix& h, const ControlParams& params) {
    return outcome_probs(hermitian_eig(h), params);
}

std::size_t sample_outcome(const OutcomeDistribution& dist, RandomStream& rng) {
    const double u = rng.uniform();
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (Eigen::Index a = 0; a < dist.size(); ++a) {
        if (dist[a] <= 0.0) continue;
        last_positive = static_cast<std::size_t>(a);
        cumulative += dist[a];
        if (u < cumulative) return last_positive;
    }
    return last_positive;  // rounding left u above the final cumulative sum
}

std::vector<DegeneratePair> validate_hypothesis_set(const std::vector<std::string>& labels,
                                                    const std::vector<HermitianMatrix>& hamiltonians) {
    std::vector<DegeneratePair> out;
    for (std::size_t i = 0; i < hamiltonians.size(); ++i) {
        for (std::size_t j = i + 1; j < hamiltonians.size(); ++j) {
            const ComplexMatrix diff = hamiltonians[i].matrix() - hamiltonians[j].matrix();
            const auto n = diff.rows();
            const double c = diff.trace().real() / static_cast<double>(n);
            const ComplexMatrix residual = diff - c * ComplexMatrix::Identity(n, n);
            if (max_abs(residual) <= kDegeneracyTolerance) {
                out.push_back({i, j, i < labels.size() ? labels[i] : std::to_string(i),
                               j < labels.size() ? labels[j] : std::to_string(j), c});
            }
        }
    }
    return out;
}

DegenerateHypotheses::DegenerateHypotheses(std::vector<DegeneratePair> pairs)
    : InvalidArgument(describe(pairs)), pairs_(std::move(pairs)) {}

HypothesisSet::HypothesisSet(std::vector<std::string> labels, std::vector<HermitianMatrix> hamiltonians,
                             std::vector<double> prior)
    : labels_(std::move(labels)), hamiltonians_(std::move(hamiltonians)) {
    const std::size_t n = hamiltonians_.size();
    if (n < 2) throw InvalidArgument("HypothesisSet: need at least two hypotheses");
    if (labels_.size() != n) throw InvalidArgument("HypothesisSet: label count does not match");
    for (const auto& h : hamiltonians_)
        if (h.dim() != hamiltonians_.front().dim())
            throw InvalidArgument("HypothesisSet: hypotheses have different dimensions");

    if (prior.empty()) {
        prior_ = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n));
    } else {
        if (prior.size() != n) throw InvalidArgument("HypothesisSet: prior length does not match");
        prior_ = Eigen::Map<const Eigen::VectorXd>(prior.data(), static_cast<Eigen::Index>(n));
        if ((prior_.array() < 0.0).any() || std::abs(prior_.sum() - 1.0) > 1e-9)
            throw InvalidArgument("HypothesisSet: prior is not a probability vector");
        explicit_prior_ = true;
    }

    if (auto pairs = validate_hypothesis_set(labels_, hamiltonians_); !pairs.empty())
        throw DegenerateHypotheses(std::move(pairs));

    spectra_.reserve(n);
    for (const auto& h : hamiltonians_) spectra_.push_back(hermitian_eig(h));

    pair_norms_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double norm = spectral_norm(hamiltonians_[i].matrix() - hamiltonians_[j].matrix());
            pair_norms_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = norm;
            pair_norms_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = norm;
        }
}

double HypothesisSet::min_energy_gap() const {
    constexpr double kZeroGap = 1e-12;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : spectra_)
        for (Eigen::Index k = 1; k < s.eigenvalues.size(); ++k) {
            const double gap = s.eigenvalues(k) - s.eigenvalues(k - 1);
            if (gap > kZeroGap) best = std::min(best, gap);
        }
    if (std::isinf(best)) throw InvalidArgument("HypothesisSet: no hypothesis has a nonzero energy gap");
    return best;
}

double HypothesisSet::t_max() const { return 2 * kPi / min_energy_gap(); }

} // namespace qle
