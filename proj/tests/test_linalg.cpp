#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qle/linalg.hpp"
#include "qle/model.hpp"

using namespace qle;
using C = std::complex<double>;

namespace {

ComplexMatrix random_hermitian(std::mt19937_64& gen, Eigen::Index n, double scale = 3.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = C(u(gen), u(gen));
    return (m + m.adjoint()) / 2.0;
}

ComplexMatrix random_unitary(std::mt19937_64& gen, Eigen::Index n) {
    const ComplexMatrix h = random_hermitian(gen, n);
    return oracle::expm_taylor(h, 1.0);
}

double reconstruction_residual(const ComplexMatrix& m, const EigenDecompositionD& e) {
    const ComplexMatrix lambda = e.eigenvalues.cast<C>().asDiagonal();
    return max_abs(e.eigenvectors * lambda * e.eigenvectors.adjoint() - m);
}

} // namespace

TEST_CASE("Hermitian construction symmetrizes and rejects asymmetric input") {
    ComplexMatrix m(2, 2);
    m << 1.0, C(0.5, 1e-10), C(0.5, 0.0), -1.0;
    const HermitianMatrix h(m);
    CHECK(h(0, 1) == std::conj(h(1, 0)));

    m(0, 1) = C(0.5, 1e-6);
    CHECK_THROWS_AS(HermitianMatrix{m}, NotHermitian);
    CHECK_THROWS_AS(HermitianMatrix{ComplexMatrix(2, 3)}, InvalidArgument);
}

TEST_CASE("StateVector requires unit norm") {
    ComplexVector v(2);
    v << 1.0, 1.0;
    CHECK_THROWS_AS(StateVector{v}, InvalidArgument);
    v /= std::sqrt(2.0);
    CHECK_NOTHROW(StateVector{v});
}

TEST_CASE("hermitian_eig examples") {
    SUBCASE("sigma_z") {
        const auto e = hermitian_eig(sigma_z());
        CHECK(e.eigenvalues(0) == -1.0);
        CHECK(e.eigenvalues(1) == 1.0);
    }
    SUBCASE("identity is degenerate") {
        const auto e = hermitian_eig(identity2());
        CHECK(e.eigenvalues(0) == 1.0);
        CHECK(e.eigenvalues(1) == 1.0);
        CHECK(max_abs(e.eigenvectors.adjoint() * e.eigenvectors - ComplexMatrix::Identity(2, 2)) < 1e-12);
    }
    SUBCASE("sigma_x + sigma_z against its characteristic polynomial") {
        const HermitianMatrix h = sigma_x() + sigma_z();
        const auto [lo, hi] = oracle::eig2_charpoly(h.matrix());
        const auto e = hermitian_eig(h);
        CHECK(e.eigenvalues(0) == doctest::Approx(lo).epsilon(1e-14));
        CHECK(e.eigenvalues(1) == doctest::Approx(hi).epsilon(1e-14));
        CHECK(lo == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
        CHECK(reconstruction_residual(h.matrix(), e) <= 1e-9);
    }
}

TEST_CASE("hermitian_eig reconstruction and unitarity across dimensions") {
    std::mt19937_64 gen(11);
    for (Eigen::Index n : {1, 2, 3, 4, 6, 12}) {
        for (int rep = 0; rep < 20; ++rep) {
            const ComplexMatrix m = random_hermitian(gen, n);
            const auto e = hermitian_eig(HermitianMatrix(m));
            CHECK(reconstruction_residual(m, e) <= 1e-9);
            CHECK(max_abs(e.eigenvectors.adjoint() * e.eigenvectors - ComplexMatrix::Identity(n, n)) <= 1e-9);
            for (Eigen::Index k = 1; k < n; ++k) CHECK(e.eigenvalues(k - 1) <= e.eigenvalues(k));

            Eigen::SelfAdjointEigenSolver<ComplexMatrix> ref(m);
            CHECK((e.eigenvalues - ref.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-9);
        }
    }
}

TEST_CASE("hermitian_eig is deterministic and phase-normalized") {
    std::mt19937_64 gen(5);
    const HermitianMatrix h(random_hermitian(gen, 4));
    const auto a = hermitian_eig(h);
    const auto b = hermitian_eig(h);
    CHECK(a.eigenvectors == b.eigenvectors);
    for (Eigen::Index c = 0; c < a.eigenvectors.cols(); ++c) {
        Eigen::Index arg = 0;
        a.eigenvectors.col(c).cwiseAbs().maxCoeff(&arg);
        CHECK(std::abs(a.eigenvectors(arg, c).imag()) < 1e-15);
        CHECK(a.eigenvectors(arg, c).real() > 0.0);
    }
}

TEST_CASE("hermitian_eig reports an exhausted sweep cap") {
    std::mt19937_64 gen(3);
    const HermitianMatrix h(random_hermitian(gen, 5));
    CHECK_THROWS_AS(hermitian_eig(h, 0), ConvergenceFailure);
}

TEST_CASE("mat_exp_hamiltonian examples") {
    using std::numbers::pi;
    SUBCASE("sigma_z at pi/2") {
        const ComplexMatrix u = mat_exp_hamiltonian(sigma_z(), pi / 2);
        ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
        expected(0, 0) = C(0, -1);
        expected(1, 1) = C(0, 1);
        CHECK(max_abs(u - expected) < 1e-15);
    }
    SUBCASE("t = 0 gives identity") {
        const HermitianMatrix h = sigma_x() + 0.3 * sigma_y() - 2.0 * sigma_z();
        CHECK(max_abs(mat_exp_hamiltonian(h, 0.0) - ComplexMatrix::Identity(2, 2)) < 1e-15);
    }
    SUBCASE("sigma_x matches the Taylor-series oracle and the closed form") {
        for (double t : {0.3, 1.0, 2.7}) {
            const ComplexMatrix u = mat_exp_hamiltonian(sigma_x(), t);
            const ComplexMatrix closed =
                std::cos(t) * ComplexMatrix::Identity(2, 2) - C(0, 1) * std::sin(t) * sigma_x().matrix();
            CHECK(max_abs(u - oracle::expm_taylor(sigma_x().matrix(), t)) < 1e-12);
            CHECK(max_abs(u - closed) < 1e-14);
        }
    }
    CHECK_THROWS_AS(mat_exp_hamiltonian(sigma_x(), std::nan("")), InvalidArgument);
}

TEST_CASE("propagator invariants: unitarity and group property") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> time(-5.0, 5.0);
    for (int rep = 0; rep < 200; ++rep) {
        const HermitianMatrix h(random_hermitian(gen, 2));
        const double t = time(gen);
        const ComplexMatrix u = mat_exp_hamiltonian(h, t);
        CHECK(max_abs(u * u.adjoint() - ComplexMatrix::Identity(2, 2)) <= 1e-10);
    }
    for (int rep = 0; rep < 50; ++rep) {
        const HermitianMatrix h(random_hermitian(gen, 3));
        const double t1 = time(gen), t2 = time(gen);
        const ComplexMatrix lhs = mat_exp_hamiltonian(h, t1) * mat_exp_hamiltonian(h, t2);
        CHECK(max_abs(lhs - mat_exp_hamiltonian(h, t1 + t2)) <= 1e-9);
        CHECK(max_abs(mat_exp_hamiltonian(h, t1) - oracle::expm_taylor(h.matrix(), t1)) <= 1e-9);
    }
}

TEST_CASE("spectral_norm") {
    CHECK(spectral_norm((sigma_x() - sigma_z()).matrix()) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(spectral_norm((2.0 * sigma_x()).matrix()) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(spectral_norm(ComplexMatrix::Zero(2, 2)) == 0.0);

    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int rep = 0; rep < 50; ++rep) {
        ComplexMatrix m(3, 3);
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = C(u(gen), u(gen));
        const double ref = Eigen::JacobiSVD<ComplexMatrix>(m).singularValues()(0);
        CHECK(spectral_norm(m) == doctest::Approx(ref).epsilon(1e-10));
        const double c = u(gen);
        CHECK(std::abs(spectral_norm(ComplexMatrix(c * m)) - std::abs(c) * spectral_norm(m)) <= 1e-10);
    }
}

TEST_CASE("von_neumann_entropy") {
    ComplexMatrix mixed = ComplexMatrix::Identity(2, 2) / 2.0;
    CHECK(von_neumann_entropy(HermitianMatrix(mixed)) == doctest::Approx(1.0).epsilon(1e-15));

    ComplexMatrix pure = ComplexMatrix::Zero(2, 2);
    pure(0, 0) = 1.0;
    CHECK(von_neumann_entropy(HermitianMatrix(pure)) == 0.0);

    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 0.25;
    d(1, 1) = 0.75;
    const double expected = oracle::shannon({0.25, 0.75});
    CHECK(expected == doctest::Approx(0.811278).epsilon(1e-6));
    CHECK(von_neumann_entropy(HermitianMatrix(d)) == doctest::Approx(expected).epsilon(1e-14));

    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 0) = 1.1;
    bad(1, 1) = -0.1;
    CHECK_THROWS_AS(von_neumann_entropy(HermitianMatrix(bad)), InvalidDensityMatrix);
    CHECK_THROWS_AS(von_neumann_entropy(HermitianMatrix(ComplexMatrix(2.0 * d))), InvalidDensityMatrix);
}

TEST_CASE("von_neumann_entropy is basis invariant") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 30; ++rep) {
        const Eigen::Index n = 3;
        ComplexMatrix diag = ComplexMatrix::Zero(n, n);
        double total = 0;
        for (Eigen::Index k = 0; k < n; ++k) total += (diag(k, k) = u(gen)).real();
        diag /= total;
        const ComplexMatrix v = random_unitary(gen, n);
        const ComplexMatrix rotated = v * diag * v.adjoint();
        CHECK(std::abs(von_neumann_entropy(HermitianMatrix(rotated)) - von_neumann_entropy(HermitianMatrix(diag))) <=
              1e-9);
    }
}

TEST_CASE("shannon_entropy") {
    CHECK(shannon_entropy(std::vector<double>{0.5, 0.5}) == doctest::Approx(1.0));
    CHECK(shannon_entropy(std::vector<double>{1.0, 0.0, 0.0, 0.0}) == 0.0);
    CHECK(shannon_entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}) == doctest::Approx(2.0));
    // Tiny negative rounding noise is clamped.
    CHECK(shannon_entropy(std::vector<double>{0.5 + 1e-13, 0.5, -1e-13}) == doctest::Approx(1.0).epsilon(1e-12));
}
