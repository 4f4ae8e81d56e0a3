#ifndef QLE_LINALG_HPP
#define QLE_LINALG_HPP

// Dense complex linear algebra for small Hermitian / unitary systems.
//
// Everything here is templated on the real scalar type and built on Eigen's
// dense containers. The eigensolver is self-contained (closed form for 2x2,
// cyclic complex Jacobi otherwise) so results are reproducible bit-for-bit
// independent of the Eigen version.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qle/errors.hpp"

namespace qle {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// Largest entrywise modulus, the "max" norm used for all tolerances here.
template <typename Derived>
auto max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.cwiseAbs().maxCoeff();
}

/// Hermitian matrix. Construction checks |M - M^dagger|_max against `tol`
/// and stores the exact symmetrization (M + M^dagger) / 2.
template <typename Real>
class Hermitian {
public:
    static constexpr Real kTolerance = Real(1e-9);

    Hermitian() = default;

    explicit Hermitian(const CMatrix<Real>& m, Real tol = kTolerance) {
        if (m.rows() < 1 || m.rows() != m.cols())
            throw InvalidArgument("Hermitian: matrix must be square with dim >= 1");
        if (!m.allFinite())
            throw InvalidArgument("Hermitian: non-finite entry");
        const Real asym = max_abs(m - m.adjoint());
        if (asym > tol)
            throw NotHermitian("Hermitian: |M - M^dagger|_max = " + std::to_string(asym) +
                               " exceeds tolerance");
        m_ = (m + m.adjoint()) / Real(2);
    }

    const CMatrix<Real>& matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }
    std::complex<Real> operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

    friend Hermitian operator+(const Hermitian& a, const Hermitian& b) {
        return Hermitian(CMatrix<Real>(a.m_ + b.m_));
    }
    friend Hermitian operator-(const Hermitian& a, const Hermitian& b) {
        return Hermitian(CMatrix<Real>(a.m_ - b.m_));
    }
    friend Hermitian operator*(Real c, const Hermitian& a) {
        return Hermitian(CMatrix<Real>(c * a.m_));
    }

private:
    CMatrix<Real> m_;
};

/// Normalized ket.
template <typename Real>
class Ket {
public:
    static constexpr Real kTolerance = Real(1e-10);

    Ket() = default;

    explicit Ket(const CVector<Real>& amplitudes) : v_(amplitudes) {
        if (v_.size() < 1)
            throw InvalidArgument("Ket: dimension must be >= 1");
        const Real n2 = v_.squaredNorm();
        if (!std::isfinite(n2) || std::abs(n2 - Real(1)) > kTolerance)
            throw InvalidArgument("Ket: squared norm " + std::to_string(n2) + " is not 1");
    }

    const CVector<Real>& amplitudes() const noexcept { return v_; }
    Eigen::Index dim() const noexcept { return v_.size(); }
    std::complex<Real> operator[](Eigen::Index i) const { return v_(i); }

private:
    CVector<Real> v_;
};

template <typename Real>
struct EigenDecomposition {
    RVector<Real> eigenvalues;    // ascending
    CMatrix<Real> eigenvectors;   // columns
};

namespace detail {

// Fix each column's phase so its largest-magnitude entry (first one on ties)
// is real and positive.
template <typename Real>
void normalize_phases(CMatrix<Real>& v) {
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        Eigen::Index arg = 0;
        Real best = Real(-1);
        for (Eigen::Index r = 0; r < v.rows(); ++r) {
            const Real a = std::abs(v(r, c));
            if (a > best) {
                best = a;
                arg = r;
            }
        }
        if (best > Real(0)) v.col(c) *= std::conj(v(arg, c)) / best;
        v.col(c).normalize();
    }
}

template <typename Real>
EigenDecomposition<Real> eig2x2(const CMatrix<Real>& m) {
    using C = std::complex<Real>;
    const Real a = m(0, 0).real();
    const Real d = m(1, 1).real();
    const C b = m(0, 1);

    EigenDecomposition<Real> out;
    out.eigenvalues.resize(2);
    out.eigenvectors.resize(2, 2);

    if (b == C(0)) {
        if (a <= d) {
            out.eigenvalues << a, d;
            out.eigenvectors << C(1), C(0), C(0), C(1);
        } else {
            out.eigenvalues << d, a;
            out.eigenvectors << C(0), C(1), C(1), C(0);
        }
        return out;
    }

    const Real mean = (a + d) / Real(2);
    const Real radius = std::hypot((a - d) / Real(2), std::abs(b));
    out.eigenvalues << mean - radius, mean + radius;

    for (int k = 0; k < 2; ++k) {
        const Real lambda = out.eigenvalues(k);
        // Two candidate null vectors of (M - lambda); keep the better conditioned one.
        CVector<Real> u(2), w(2);
        u << b, C(lambda - a);
        w << C(lambda - d), std::conj(b);
        out.eigenvectors.col(k) = (u.squaredNorm() >= w.squaredNorm()) ? u : w;
        out.eigenvectors.col(k).normalize();
    }
    normalize_phases(out.eigenvectors);
    return out;
}

template <typename Real>
EigenDecomposition<Real> eig_jacobi(CMatrix<Real> a, int max_sweeps) {
    using C = std::complex<Real>;
    const Eigen::Index n = a.rows();
    CMatrix<Real> v = CMatrix<Real>::Identity(n, n);

    const Real scale = std::max(a.norm(), std::numeric_limits<Real>::min());
    const Real eps = std::numeric_limits<Real>::epsilon() * scale;

    auto off_norm = [&] {
        Real s = 0;
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    int sweep = 0;
    while (off_norm() > eps) {
        if (++sweep > max_sweeps)
            throw ConvergenceFailure("hermitian_eig: Jacobi sweep cap of " +
                                     std::to_string(max_sweeps) + " exceeded");
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const C g = a(p, q);
                const Real mag = std::abs(g);
                if (mag == Real(0)) continue;
                const C phase = g / mag;  // e^{i gamma}
                const Real app = a(p, p).real();
                const Real aqq = a(q, q).real();
                const Real theta = (aqq - app) / (Real(2) * mag);
                const Real t = (theta >= 0 ? Real(1) : Real(-1)) /
                               (std::abs(theta) + std::sqrt(theta * theta + Real(1)));
                const Real c = Real(1) / std::sqrt(t * t + Real(1));
                const Real s = t * c;

                // G acts on the (p, q) plane: G = diag(1, e^{-i gamma}) * [[c, s], [-s, c]].
                const C g_pp = c, g_pq = s;
                const C g_qp = -s * std::conj(phase), g_qq = c * std::conj(phase);

                for (Eigen::Index k = 0; k < n; ++k) {  // A <- A G
                    const C akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * g_pp + akq * g_qp;
                    a(k, q) = akp * g_pq + akq * g_qq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {  // A <- G^dagger A
                    const C apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
                    a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
                }
                a(p, q) = a(q, p) = C(0);
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (Eigen::Index k = 0; k < n; ++k) {  // V <- V G
                    const C vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * g_pp + vkq * g_qp;
                    v(k, q) = vkp * g_pq + vkq * g_qq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        return a(i, i).real() < a(j, j).real();
    });

    EigenDecomposition<Real> out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues(k) = a(order[k], order[k]).real();
        out.eigenvectors.col(k) = v.col(order[k]);
    }
    normalize_phases(out.eigenvectors);
    return out;
}

} // namespace detail

inline constexpr int kJacobiSweepCap = 100;

/// Eigendecomposition with ascending eigenvalues and phase-normalized
/// eigenvectors (largest-magnitude component real positive).
template <typename Real>
EigenDecomposition<Real> hermitian_eig(const Hermitian<Real>& m, int max_sweeps = kJacobiSweepCap) {
    if (m.dim() == 1) {
        EigenDecomposition<Real> out;
        out.eigenvalues = RVector<Real>::Constant(1, m(0, 0).real());
        out.eigenvectors = CMatrix<Real>::Identity(1, 1);
        return out;
    }
    if (m.dim() == 2) return detail::eig2x2(m.matrix());
    return detail::eig_jacobi(m.matrix(), max_sweeps);
}

/// V diag(exp(-i lambda t)) V^dagger from a precomputed decomposition.
template <typename Real>
CMatrix<Real> propagator(const EigenDecomposition<Real>& e, Real t) {
    CVector<Real> phases(e.eigenvalues.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k)
        phases(k) = std::polar(Real(1), -e.eigenvalues(k) * t);
    return e.eigenvectors * phases.asDiagonal() * e.eigenvectors.adjoint();
}

/// U(t) = exp(-i H t).
template <typename Real>
CMatrix<Real> mat_exp_hamiltonian(const Hermitian<Real>& h, Real t) {
    if (!std::isfinite(t)) throw InvalidArgument("mat_exp_hamiltonian: non-finite time");
    return propagator(hermitian_eig(h), t);
}

/// Largest singular value.
template <typename Derived>
auto spectral_norm(const Eigen::MatrixBase<Derived>& m) {
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    if (m.rows() != m.cols()) throw InvalidArgument("spectral_norm: matrix must be square");
    if (m.size() == 0) return Real(0);
    const CMatrix<Real> gram = m.adjoint() * m;
    const auto e = hermitian_eig(Hermitian<Real>(gram, std::numeric_limits<Real>::infinity()));
    return std::sqrt(std::max(e.eigenvalues(e.eigenvalues.size() - 1), Real(0)));
}

namespace detail {
template <typename Real>
Real plogp_bits(Real p) {
    return p > Real(0) ? -p * std::log2(p) : Real(0);
}
} // namespace detail

/// Shannon entropy in bits. Negative entries are clamped to zero and the
/// vector renormalized.
template <typename Real>
Real shannon_entropy(std::span<const Real> p) {
    Real total = 0;
    for (Real x : p) total += std::max(x, Real(0));
    if (total <= Real(0)) return Real(0);
    Real h = 0;
    for (Real x : p) h += detail::plogp_bits(std::max(x, Real(0)) / total);
    return h;
}

template <typename Real>
Real shannon_entropy(const std::vector<Real>& p) {
    return shannon_entropy(std::span<const Real>(p));
}

/// von Neumann entropy -Tr[rho log2 rho] in bits.
template <typename Real>
Real von_neumann_entropy(const Hermitian<Real>& rho) {
    constexpr Real tol = Real(1e-9);
    const Real trace = rho.matrix().trace().real();
    if (std::abs(trace - Real(1)) > tol)
        throw InvalidDensityMatrix("von_neumann_entropy: trace " + std::to_string(trace) + " != 1");
    const auto e = hermitian_eig(rho);
    Real s = 0;
    for (Eigen::Index k = 0; k < e.eigenvalues.size(); ++k) {
        const Real lambda = e.eigenvalues(k);
        if (lambda < -tol)
            throw InvalidDensityMatrix("von_neumann_entropy: negative eigenvalue " +
                                       std::to_string(lambda));
        s += detail::plogp_bits(std::clamp(lambda, Real(0), Real(1)));
    }
    return s;
}

using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;
using HermitianMatrix = Hermitian<double>;
using StateVector = Ket<double>;
using EigenDecompositionD = EigenDecomposition<double>;

} // namespace qle

#endif // QLE_LINALG_HPP
