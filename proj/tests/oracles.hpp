// Test-only reference computations. Nothing here calls into the code paths
// it is used to check.
#ifndef QLE_TESTS_ORACLES_HPP
#define QLE_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using Mat = Eigen::MatrixXcd;

/// exp(-i H t) by Taylor series with scaling and squaring.
inline Mat expm_taylor(const Mat& h, double t) {
    const std::complex<double> minus_i(0.0, -1.0);
    Mat a = minus_i * t * h;
    int squarings = 0;
    while (a.cwiseAbs().maxCoeff() > 0.25) {
        a /= 2.0;
        ++squarings;
    }
    Mat sum = Mat::Identity(h.rows(), h.cols());
    Mat term = sum;
    for (int k = 1; k < 30; ++k) {
        term = term * a / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

/// Roots of the 2x2 characteristic polynomial lambda^2 - tr lambda + det.
inline std::pair<double, double> eig2_charpoly(const Mat& m) {
    const double tr = m.trace().real();
    const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
    const double disc = std::sqrt(tr * tr / 4 - det);
    return {tr / 2 - disc, tr / 2 + disc};
}

inline double plogp(double p) { return p > 0 ? -p * std::log2(p) : 0.0; }

inline double shannon(const std::vector<double>& p) {
    double h = 0;
    for (double x : p) h += plogp(x);
    return h;
}

/// H(F|Y) = H(F, Y) - H(Y) straight from a joint table.
inline double cond_entropy_chain_rule(const Eigen::MatrixXd& table) {
    double joint = 0;
    for (Eigen::Index i = 0; i < table.size(); ++i) joint += plogp(table.data()[i]);
    double hy = 0;
    for (Eigen::Index a = 0; a < table.cols(); ++a) hy += plogp(table.col(a).sum());
    return joint - hy;
}

/// I(F;Y) = H(Y) - H(Y|F).
inline double mi_from_outputs(const Eigen::MatrixXd& table) {
    double hy = 0;
    for (Eigen::Index a = 0; a < table.cols(); ++a) hy += plogp(table.col(a).sum());
    double hy_given_f = 0;
    for (Eigen::Index f = 0; f < table.rows(); ++f) {
        const double pf = table.row(f).sum();
        if (pf <= 0) continue;
        for (Eigen::Index a = 0; a < table.cols(); ++a) hy_given_f += pf * plogp(table(f, a) / pf);
    }
    return hy - hy_given_f;
}

/// Kolmogorov-Smirnov distance of a sample against U[lo, hi].
inline double ks_uniform(std::vector<double> xs, double lo, double hi) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double cdf = std::clamp((xs[i] - lo) / (hi - lo), 0.0, 1.0);
        d = std::max({d, cdf - i / n, (i + 1) / n - cdf});
    }
    return d;
}

} // namespace oracle

#endif // QLE_TESTS_ORACLES_HPP
