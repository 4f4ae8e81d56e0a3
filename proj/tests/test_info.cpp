#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qle/info.hpp"

using namespace qle;
using C = std::complex<double>;
using std::numbers::pi;

namespace {

HypothesisSet pauli_pair() { return HypothesisSet({"sx", "sz"}, {sigma_x(), sigma_z()}); }

JointDistribution table2(double a, double b, double c, double d) {
    Eigen::MatrixXd t(2, 2);
    t << a, b, c, d;
    return JointDistribution(t);
}

struct Instance {
    HypothesisSet set;
    Eigen::VectorXd weights;
    ControlParams params;
};

Instance random_instance(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.0, 1.0), e(-3.0, 3.0);
    const int n = 2 + static_cast<int>(gen() % 5);
    std::vector<std::string> labels;
    std::vector<HermitianMatrix> hs;
    for (int k = 0; k < n; ++k) {
        ComplexMatrix m(2, 2);
        m << e(gen), C(e(gen), e(gen)), 0.0, e(gen);
        m(1, 0) = std::conj(m(0, 1));
        labels.push_back("h" + std::to_string(k));
        hs.emplace_back(m);
    }
    Eigen::VectorXd w(n);
    for (int k = 0; k < n; ++k) w(k) = u(gen);
    w /= w.sum();
    const ControlParams p{pi * u(gen), 2 * pi * u(gen), pi * u(gen), 2 * pi * u(gen), 3 * u(gen)};
    return {HypothesisSet(labels, hs), w, p};
}

} // namespace

TEST_CASE("joint_distribution examples") {
    const HypothesisSet set = pauli_pair();
    SUBCASE("pauli pair at t = pi/2 separates perfectly") {
        const auto j = joint_distribution(set, Eigen::Vector2d(0.5, 0.5), {0, 0, 0, 0, pi / 2});
        CHECK(j.table()(0, 0) == doctest::Approx(0.0).scale(1.0));
        CHECK(j.table()(0, 1) == doctest::Approx(0.5));
        CHECK(j.table()(1, 0) == doctest::Approx(0.5));
        CHECK(j.table()(1, 1) == doctest::Approx(0.0).scale(1.0));
    }
    SUBCASE("all mass on one hypothesis") {
        const auto j = joint_distribution(set, Eigen::Vector2d(1.0, 0.0), {0.3, 1.0, 0.7, 2.0, 1.1});
        CHECK(j.table().row(0).sum() == doctest::Approx(1.0));
        CHECK(j.table().row(1).sum() == 0.0);
    }
    CHECK_THROWS_AS(joint_distribution(set, Eigen::Vector2d(0.6, 0.6), {}), InvalidArgument);
    CHECK_THROWS_AS(joint_distribution(set, Eigen::Vector3d(0.2, 0.3, 0.5), {}), InvalidArgument);
}

TEST_CASE("conditional entropy and mutual information on fixed tables") {
    const auto perfect = table2(0.5, 0.0, 0.0, 0.5);
    CHECK(conditional_entropy_cost(perfect) == 0.0);
    CHECK(mutual_information(perfect) == doctest::Approx(1.0));

    const auto independent = table2(0.25, 0.25, 0.25, 0.25);
    CHECK(conditional_entropy_cost(independent) == doctest::Approx(1.0));
    CHECK(mutual_information(independent) == doctest::Approx(0.0).scale(1.0));

    // Mixed table: both independent routes agree on H(F|Y) = 0.688722 and
    // I = 0.311278 (H(F|Y=0) = H(2/3, 1/3) weighted by q_0 = 0.75).
    const auto mixed = table2(0.5, 0.0, 0.25, 0.25);
    const double chain = oracle::cond_entropy_chain_rule(mixed.table());
    const double direct = 0.75 * oracle::shannon({2.0 / 3, 1.0 / 3});
    CHECK(chain == doctest::Approx(direct).epsilon(1e-14));
    CHECK(chain == doctest::Approx(0.688722).epsilon(1e-6));
    CHECK(conditional_entropy_cost(mixed) == doctest::Approx(chain).epsilon(1e-14));
    CHECK(mutual_information(mixed) == doctest::Approx(oracle::mi_from_outputs(mixed.table())).epsilon(1e-14));
    CHECK(mutual_information(mixed) == doctest::Approx(0.311278).epsilon(1e-6));

    CHECK_THROWS_AS(table2(0.5, 0.5, 0.5, 0.0), InvalidArgument);
    CHECK_THROWS_AS(table2(1.1, -0.1, 0.0, 0.0), InvalidArgument);
}

TEST_CASE("zero-probability outcome columns contribute nothing") {
    Eigen::MatrixXd t(3, 2);
    t << 0.2, 0.0, 0.3, 0.0, 0.5, 0.0;
    const JointDistribution j(t);
    CHECK(conditional_entropy_cost(j) == doctest::Approx(oracle::shannon({0.2, 0.3, 0.5})));
    CHECK(std::isfinite(mutual_information(j)));
}

TEST_CASE("information invariants on random instances") {
    std::mt19937_64 gen(123);
    for (int rep = 0; rep < 100; ++rep) {
        const Instance inst = random_instance(gen);
        const auto j = joint_distribution(inst.set, inst.weights, inst.params);
        const double hf = hypothesis_entropy(j);
        const double cost = conditional_entropy_cost(j);
        const double mi = mutual_information(j);

        CHECK(std::abs(mi + cost - hf) <= 1e-12);
        CHECK(std::abs(mi - oracle::mi_from_outputs(j.table())) <= 1e-9);
        CHECK(std::abs(cost - oracle::cond_entropy_chain_rule(j.table())) <= 1e-9);
        CHECK(mi >= -1e-9);
        CHECK(mi <= std::min(hf, 1.0) + 1e-9);

        Eigen::MatrixXd swapped = j.table();
        swapped.col(0).swap(swapped.col(1));
        const JointDistribution relabeled(swapped);
        CHECK(std::abs(conditional_entropy_cost(relabeled) - cost) <= 1e-12);
        CHECK(std::abs(mutual_information(relabeled) - mi) <= 1e-12);
        CHECK((j.hypothesis_marginal() - inst.weights).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("build_cq_state") {
    const HypothesisSet set = pauli_pair();
    SUBCASE("t = 0 and theta = 0 leave sigma_z |psi_1>") {
        const auto cq = build_cq_state(set, Eigen::Vector2d(1.0, 0.0), {0.4, 1.1, 0, 0, 0});
        const ComplexVector expected = sigma_z().matrix() * initial_state(0.4, 1.1).amplitudes();
        CHECK(max_abs(cq.conditional_states[0] - expected) < 1e-15);
    }
    SUBCASE("pauli pair at pi/2, up to global phase") {
        const auto cq = build_cq_state(set, Eigen::Vector2d(0.5, 0.5), {0, 0, 0, 0, pi / 2});
        // exp(-i sx pi/2)|0> = -i|1>, exp(-i sz pi/2)|0> = -i|0>, then W = sz.
        CHECK(std::abs(cq.conditional_states[0](0)) < 1e-15);
        CHECK(std::abs(cq.conditional_states[0](1)) == doctest::Approx(1.0));
        CHECK(std::abs(cq.conditional_states[1](0)) == doctest::Approx(1.0));
        CHECK(std::abs(cq.conditional_states[1](1)) < 1e-15);
    }
    SUBCASE("uniform weights become the prior") {
        const HypothesisSet four({"a", "b", "c", "d"}, {sigma_x(), 2.0 * sigma_x(), sigma_z(), 2.0 * sigma_z()});
        const auto cq = build_cq_state(four, Eigen::Vector4d::Constant(0.25), {});
        CHECK(cq.prior == Eigen::Vector4d::Constant(0.25));
        CHECK(cq.conditional_states.size() == 4);
    }
}

TEST_CASE("dense classical-quantum oracle") {
    const HypothesisSet set = pauli_pair();
    SUBCASE("distinguishing pair carries one bit") {
        const ControlParams p{0, 0, 0, 0, pi / 2};
        const auto dense = dense_mutual_information(build_cq_state(set, Eigen::Vector2d(0.5, 0.5), p));
        CHECK(dense.mutual_information == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(dense.mutual_information ==
              doctest::Approx(mutual_information(joint_distribution(set, Eigen::Vector2d(0.5, 0.5), p))));
    }
    SUBCASE("single hypothesis prior carries nothing") {
        const auto dense = dense_mutual_information(build_cq_state(set, Eigen::Vector2d(1.0, 0.0), {0.3, 0.2, 1.0, 0.5, 0.9}));
        CHECK(std::abs(dense.mutual_information) <= 1e-12);
    }
    SUBCASE("cross-oracle agreement on random instances") {
        std::mt19937_64 gen(77);
        for (int rep = 0; rep < 50; ++rep) {
            const Instance inst = random_instance(gen);
            const auto dense = dense_mutual_information(build_cq_state(inst.set, inst.weights, inst.params));
            const auto j = joint_distribution(inst.set, inst.weights, inst.params);
            CHECK(std::abs(dense.mutual_information - mutual_information(j)) <= 1e-9);
            CHECK(std::abs(dense.s_fy - hypothesis_entropy(j)) <= 1e-9);
            CHECK(dense.discord >= -1e-9);
        }
    }
    SUBCASE("dimension cap") {
        CqState big;
        big.prior = Eigen::VectorXd::Constant(33, 1.0 / 33);
        ComplexVector zero(2);
        zero << 1.0, 0.0;
        big.conditional_states.assign(33, zero);
        CHECK_THROWS_AS(dense_mutual_information(big), DimensionCapExceeded);
    }
}
