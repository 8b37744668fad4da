#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "deco/trinity.hpp"
#include "helpers.hpp"

using namespace deco;
using testutil::rel_close;

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

Eigen::VectorXcd basis_vector(int dim, int index) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(index) = 1.0;
    return v;
}

double max_entry_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

std::vector<DemoStage> load_golden(const std::string& file) {
    std::ifstream f(std::string(DECO_TEST_DATA_DIR) + "/" + file);
    REQUIRE(f.good());
    const nlohmann::json doc = nlohmann::json::parse(f);
    std::vector<DemoStage> stages;
    for (const auto& stage : doc.at("stages"))
        stages.push_back({stage.at("label").get<std::string>(),
                          DensityMatrix::from_json(stage.at("state"))});
    return stages;
}

}  // namespace

TEST_CASE("density matrix validation") {
    CHECK_NOTHROW(DensityMatrix::maximally_mixed(4));
    CHECK_NOTHROW(DensityMatrix::pure(basis_vector(3, 1)));

    // Wrong trace.
    CHECK_THROWS_AS(DensityMatrix{Eigen::MatrixXcd::Identity(2, 2)}, DomainError);

    // Non-Hermitian.
    Eigen::MatrixXcd skew = Eigen::MatrixXcd::Zero(2, 2);
    skew(0, 0) = 0.5;
    skew(1, 1) = 0.5;
    skew(0, 1) = 0.5;
    CHECK_THROWS_AS(DensityMatrix{skew}, DomainError);

    // Negative eigenvalue.
    Eigen::MatrixXcd neg = Eigen::MatrixXcd::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix{neg}, DomainError);
}

TEST_CASE("unitary evolution: precession example") {
    // Spin starts pure |up>, precesses halfway to the x direction.
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd u(2, 2);
    u << s, -s, s, s;
    const DensityMatrix rho = evolve_unitary(DensityMatrix::pure(basis_vector(2, 0)), u);

    Eigen::MatrixXcd expected(2, 2);
    expected << 0.5, 0.5, 0.5, 0.5;
    CHECK(max_entry_diff(rho.entries(), expected) < 1e-12);

    // Identity leaves the state alone; two rotations equal one U^2.
    const DensityMatrix same =
        evolve_unitary(rho, Eigen::MatrixXcd::Identity(2, 2));
    CHECK(max_entry_diff(same.entries(), rho.entries()) == 0.0);

    const DensityMatrix twice = evolve_unitary(evolve_unitary(rho, u), u);
    const DensityMatrix squared = evolve_unitary(rho, (u * u).eval());
    CHECK(max_entry_diff(twice.entries(), squared.entries()) < 1e-12);

    Eigen::MatrixXcd not_unitary = Eigen::MatrixXcd::Identity(2, 2) * 2.0;
    CHECK_THROWS_AS(evolve_unitary(rho, not_unitary), DomainError);
}

TEST_CASE("unitary evolution preserves trace, spectrum and entropy") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        const int dim = 2 + static_cast<int>(rng() % 5);
        const DensityMatrix rho = testutil::random_density(rng, dim);
        const Eigen::MatrixXcd u = testutil::random_unitary(rng, dim);
        const DensityMatrix evolved = evolve_unitary(rho, u);  // ctor revalidates
        CHECK(std::abs(evolved.entries().trace().real() - 1.0) < 1e-12);
        CHECK(std::abs(entropy_bits(evolved) - entropy_bits(rho)) < 1e-9);
    }
}

TEST_CASE("dephasing") {
    const TensorPartition part = subject_object_partition();
    const auto stages = measurement_demo_stages();
    const DensityMatrix& superposed = stages[1].state;

    SUBCASE("full strength removes the pointer off-diagonals") {
        const DensityMatrix dephased = dephase(superposed, part, 1, 1.0);
        Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(6, 6);
        expected(0, 0) = 0.5;
        expected(1, 1) = 0.5;
        CHECK(max_entry_diff(dephased.entries(), expected) < 1e-12);
        CHECK(entropy_bits(partial_trace(dephased, part, {1})) == doctest::Approx(1.0));
    }

    SUBCASE("zero strength is the identity map") {
        const DensityMatrix same = dephase(superposed, part, 1, 0.0);
        CHECK(max_entry_diff(same.entries(), superposed.entries()) == 0.0);
    }

    SUBCASE("off-diagonals never grow, entropy never drops") {
        std::mt19937 rng(42);
        for (int trial = 0; trial < 200; ++trial) {
            const DensityMatrix rho = testutil::random_density(rng, 6);
            const double before = entropy_bits(rho);
            for (double strength : {0.0, 0.25, 0.5, 1.0}) {
                const int factor = static_cast<int>(rng() % 2);
                const DensityMatrix out = dephase(rho, part, factor, strength);
                for (int i = 0; i < 6; ++i)
                    for (int j = 0; j < 6; ++j)
                        CHECK(std::abs(out.entries()(i, j)) <=
                              std::abs(rho.entries()(i, j)) + 1e-15);
                CHECK(entropy_bits(out) >= before - 1e-9);
            }
        }
    }

    SUBCASE("bad arguments") {
        CHECK_THROWS_AS(dephase(superposed, part, 2, 1.0), DomainError);
        CHECK_THROWS_AS(dephase(superposed, part, 0, 1.5), DomainError);
    }
}

TEST_CASE("ideal measurement") {
    const TensorPartition part = subject_object_partition();
    const auto stages = measurement_demo_stages();

    SUBCASE("final state is the even mixture of happy-up and sad-down") {
        Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(6, 6);
        expected(2, 2) = 0.5;
        expected(5, 5) = 0.5;
        CHECK(max_entry_diff(stages[3].state.entries(), expected) < 1e-12);
    }

    SUBCASE("object entropy conditioned on each subject outcome is zero") {
        const Eigen::MatrixXcd& joint = stages[3].state.entries();
        for (int subject : {1, 2}) {  // happy, sad
            Eigen::MatrixXcd block = joint.block(2 * subject, 2 * subject, 2, 2);
            const double prob = block.trace().real();
            REQUIRE(prob > 0.0);
            const DensityMatrix conditional(block / prob);
            CHECK(entropy_bits(conditional) == doctest::Approx(0.0).epsilon(1e-9));
        }
    }

    SUBCASE("mutual information after measurement is one bit") {
        CHECK(mutual_information_bits(stages[3].state, part, 0, 1) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("non-permutation maps are rejected") {
        // Unitary but not a basis permutation.
        Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(6, 6);
        const double s = 1.0 / std::sqrt(2.0);
        u(0, 0) = s;
        u(0, 1) = s;
        u(1, 0) = s;
        u(1, 1) = -s;
        CHECK_THROWS_AS(ideal_measurement(stages[2].state, part, u), DomainError);
    }
}

TEST_CASE("snap decision") {
    const Eigen::MatrixXcd u = snap_decision_unitary();

    // The completion is a real orthogonal involution.
    CHECK(max_entry_diff(u * u.adjoint(), Eigen::MatrixXcd::Identity(3, 3)) < 1e-12);
    CHECK(max_entry_diff(u * u, Eigen::MatrixXcd::Identity(3, 3)) < 1e-12);

    const DensityMatrix neutral = DensityMatrix::pure(basis_vector(3, 0));
    const DensityMatrix decided = snap_decision(neutral, u);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(3, 3);
    expected(1, 1) = 0.5;
    expected(1, 2) = 0.5;
    expected(2, 1) = 0.5;
    expected(2, 2) = 0.5;
    CHECK(max_entry_diff(decided.entries(), expected) < 1e-12);

    // Applying the involution twice restores the deterministic start.
    const DensityMatrix back = snap_decision(decided, u);
    CHECK(max_entry_diff(back.entries(), neutral.entries()) < 1e-12);

    // Dephasing the decided subject leaves the even happy/sad mixture.
    const TensorPartition subject_only{{3}};
    const DensityMatrix mixed = dephase(decided, subject_only, 0, 1.0);
    Eigen::MatrixXcd mix = Eigen::MatrixXcd::Zero(3, 3);
    mix(1, 1) = 0.5;
    mix(2, 2) = 0.5;
    CHECK(max_entry_diff(mixed.entries(), mix) < 1e-12);
}

TEST_CASE("entropy") {
    CHECK(entropy_bits(DensityMatrix::pure(basis_vector(5, 2))) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(entropy_bits(DensityMatrix::maximally_mixed(2)) == doctest::Approx(1.0));
    CHECK(entropy_bits(DensityMatrix::maximally_mixed(6)) ==
          doctest::Approx(std::log2(6.0)).epsilon(1e-12));
}

TEST_CASE("partial trace") {
    std::mt19937 rng(43);

    SUBCASE("trace preserved on random states") {
        const TensorPartition part{{2, 3}};
        for (int trial = 0; trial < 50; ++trial) {
            const DensityMatrix rho = testutil::random_density(rng, 6);
            for (int keep : {0, 1}) {
                const DensityMatrix reduced = partial_trace(rho, part, {keep});
                CHECK(std::abs(reduced.entries().trace().real() - 1.0) < 1e-12);
            }
        }
    }

    SUBCASE("product-state marginals are the factors") {
        const TensorPartition part{{2, 3}};
        for (int trial = 0; trial < 50; ++trial) {
            const DensityMatrix a = testutil::random_density(rng, 2);
            const DensityMatrix b = testutil::random_density(rng, 3);
            const Eigen::MatrixXcd joint =
                Eigen::kroneckerProduct(a.entries(), b.entries());
            const DensityMatrix rho(joint);
            CHECK(max_entry_diff(partial_trace(rho, part, {0}).entries(), a.entries()) <
                  1e-12);
            CHECK(max_entry_diff(partial_trace(rho, part, {1}).entries(), b.entries()) <
                  1e-12);
        }
    }

    SUBCASE("measured joint state reduces to the even object mixture") {
        const auto stages = measurement_demo_stages();
        const DensityMatrix object =
            partial_trace(stages[3].state, subject_object_partition(), {1});
        CHECK(max_entry_diff(object.entries(),
                             DensityMatrix::maximally_mixed(2).entries()) < 1e-12);
    }

    SUBCASE("three-factor reductions") {
        const TensorPartition part{{2, 2, 2}};
        const DensityMatrix a = testutil::random_density(rng, 2);
        const DensityMatrix b = testutil::random_density(rng, 2);
        const DensityMatrix c = testutil::random_density(rng, 2);
        Eigen::MatrixXcd joint = Eigen::kroneckerProduct(
            a.entries(), Eigen::kroneckerProduct(b.entries(), c.entries()).eval());
        const DensityMatrix rho(joint);
        const DensityMatrix ac = partial_trace(rho, part, {0, 2});
        CHECK(max_entry_diff(ac.entries(),
                             Eigen::kroneckerProduct(a.entries(), c.entries())) < 1e-12);
    }

    SUBCASE("empty keep set rejected") {
        const DensityMatrix rho = testutil::random_density(rng, 6);
        CHECK_THROWS_AS(partial_trace(rho, TensorPartition{{2, 3}}, {}), DomainError);
    }
}

TEST_CASE("mutual information") {
    std::mt19937 rng(44);
    const TensorPartition part{{2, 2}};

    SUBCASE("product states carry no correlations") {
        for (int trial = 0; trial < 50; ++trial) {
            const DensityMatrix a = testutil::random_density(rng, 2);
            const DensityMatrix b = testutil::random_density(rng, 2);
            const DensityMatrix rho(Eigen::kroneckerProduct(a.entries(), b.entries()).eval());
            CHECK(std::abs(mutual_information_bits(rho, part, 0, 1)) < 1e-9);
        }
    }

    SUBCASE("maximally entangled pure state carries two bits") {
        Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
        bell(0) = 1.0 / std::sqrt(2.0);
        bell(3) = 1.0 / std::sqrt(2.0);
        const DensityMatrix rho = DensityMatrix::pure(bell);
        CHECK(mutual_information_bits(rho, part, 0, 1) == doctest::Approx(2.0).epsilon(1e-9));
    }

    SUBCASE("non-negative on random states") {
        for (int trial = 0; trial < 200; ++trial) {
            const DensityMatrix rho = testutil::random_density(rng, 4);
            CHECK(mutual_information_bits(rho, part, 0, 1) >= -1e-9);
        }
    }

    SUBCASE("invalid pairs rejected") {
        const DensityMatrix rho = testutil::random_density(rng, 4);
        CHECK_THROWS_AS(mutual_information_bits(rho, part, 0, 0), DomainError);
        CHECK_THROWS_AS(mutual_information_bits(rho, part, 0, 2), DomainError);
    }
}

TEST_CASE("non-interacting subsystems evolve independently") {
    std::mt19937 rng(45);
    const TensorPartition part{{2, 3}};
    for (int trial = 0; trial < 25; ++trial) {
        const Eigen::MatrixXcd h1 = testutil::random_hermitian(rng, 2);
        const Eigen::MatrixXcd h2 = testutil::random_hermitian(rng, 3);
        const Eigen::MatrixXcd joint_h =
            Eigen::kroneckerProduct(h1, Eigen::MatrixXcd::Identity(3, 3)).eval() +
            Eigen::kroneckerProduct(Eigen::MatrixXcd::Identity(2, 2), h2).eval();
        const Eigen::MatrixXcd u_joint = (-kI * joint_h).exp();
        const Eigen::MatrixXcd u1 = (-kI * h1).exp();
        const Eigen::MatrixXcd u2 = (-kI * h2).exp();

        const DensityMatrix rho = testutil::random_density(rng, 6);
        const DensityMatrix evolved = evolve_unitary(rho, u_joint);

        for (int factor : {0, 1}) {
            const DensityMatrix evolve_then_trace = partial_trace(evolved, part, {factor});
            const DensityMatrix trace_then_evolve =
                evolve_unitary(partial_trace(rho, part, {factor}), factor == 0 ? u1 : u2);
            CHECK(max_entry_diff(evolve_then_trace.entries(),
                                 trace_then_evolve.entries()) < 1e-10);
        }
    }
}

TEST_CASE("demo sequences match the golden files") {
    SUBCASE("object measurement sequence") {
        const auto stages = measurement_demo_stages();
        const auto golden = load_golden("measurement_sequence.json");
        REQUIRE(stages.size() == golden.size());
        for (size_t i = 0; i < stages.size(); ++i) {
            CHECK(stages[i].label == golden[i].label);
            CHECK(max_entry_diff(stages[i].state.entries(), golden[i].state.entries()) <
                  1e-12);
        }
    }

    SUBCASE("subject snap-decision sequence") {
        const auto stages = snap_decision_demo_stages();
        const auto golden = load_golden("snap_decision_sequence.json");
        REQUIRE(stages.size() == golden.size());
        for (size_t i = 0; i < stages.size(); ++i) {
            CHECK(stages[i].label == golden[i].label);
            CHECK(max_entry_diff(stages[i].state.entries(), golden[i].state.entries()) <
                  1e-12);
        }
    }

    SUBCASE("object entropy trajectory through the measurement sequence") {
        const auto stages = measurement_demo_stages();
        const TensorPartition part = subject_object_partition();
        const double expected[] = {0.0, 0.0, 1.0, 1.0};
        for (int i = 0; i < 4; ++i) {
            const double s = entropy_bits(partial_trace(stages[i].state, part, {1}));
            CHECK(s == doctest::Approx(expected[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("basis labels must cover the dimension") {
    const LabeledBasis basis = subject_object_basis();
    CHECK_NOTHROW(basis.validate_against(6));
    CHECK_THROWS_AS(basis.validate_against(4), DomainError);
}

TEST_CASE("json round trip") {
    std::mt19937 rng(46);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho = testutil::random_density(rng, 4);
        const DensityMatrix back = DensityMatrix::from_json(rho.to_json());
        CHECK(max_entry_diff(back.entries(), rho.entries()) < 1e-15);
    }
    CHECK_THROWS_AS(DensityMatrix::from_json(nlohmann::json{{"dim", 2}}), DomainError);
}
