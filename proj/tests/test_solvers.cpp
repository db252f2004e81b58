#include <doctest.h>

#include <cmath>

#include "riccati/solvers.hpp"
#include "test_utils.hpp"

using namespace riccati;

namespace {

Matrix stein_series(const Matrix& a0, const Matrix& q0, int terms) {
    Matrix sum = Matrix::Zero(a0.rows(), a0.cols());
    Matrix power = Matrix::Identity(a0.rows(), a0.cols());  // A0^t
    for (int t = 0; t < terms; ++t) {
        sum += power.transpose() * q0 * power;
        power = a0 * power;
    }
    return sum;
}

PopovTriple scalar_dare(double a, double b, double q, double r) {
    Matrix ma(1, 1), mb(1, 1), mq(1, 1), mr(1, 1);
    ma << a;
    mb << b;
    mq << q;
    mr << r;
    return make_triple(ma, mb, mq, mr, Matrix::Zero(1, 1));
}

}  // namespace

TEST_CASE("Stein solver: unique scalar solutions") {
    SteinEquation eq{Matrix(1, 1), Matrix(1, 1)};
    eq.A0 << -3;
    eq.Q0 << 1296;
    const SteinSolveReport rep = solve_stein(eq);
    CHECK(rep.status == SteinStatus::Unique);
    REQUIRE(rep.solutions.families.size() == 1);
    CHECK(rep.solutions.families[0].base(0, 0) == doctest::Approx(-162));

    eq.A0 << -5;
    eq.Q0 << 15000;
    CHECK(solve_stein(eq).solutions.families[0].base(0, 0) ==
          doctest::Approx(-625));
}

TEST_CASE("Stein solver: singular but consistent operator yields a family") {
    SteinEquation eq{Matrix(1, 1), Matrix(1, 1)};
    eq.A0 << -1;  // x = x + q0: consistent iff q0 = 0
    eq.Q0 << 0;
    const SteinSolveReport rep = solve_stein(eq);
    CHECK(rep.status == SteinStatus::Family);
    CHECK(rep.family_dim == 1);
    REQUIRE(rep.solutions.families.size() == 1);
    CHECK(rep.solutions.families[0].dim() == 1);
    CHECK(rep.solutions.families[0].basis[0](0, 0) == doctest::Approx(1));

    eq.Q0 << 2;
    CHECK(solve_stein(eq).status == SteinStatus::Inconsistent);
}

TEST_CASE("Stein solver: orthogonal A0 gives a high-dimensional family") {
    // A0 = I: every symmetric H satisfies H = A0^T H A0, so consistency
    // needs Q0 = 0 and the family has the full symmetric dimension.
    SteinEquation eq{Matrix::Identity(2, 2), Matrix::Zero(2, 2)};
    const SteinSolveReport rep = solve_stein(eq);
    CHECK(rep.status == SteinStatus::Family);
    CHECK(rep.family_dim == 3);
    // Basis is orthonormal in the Frobenius inner product.
    const auto& basis = rep.solutions.families[0].basis;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const double ip = (basis[i].transpose() * basis[j]).trace();
            CHECK(ip == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
        }
}

TEST_CASE("Stein solver matches the convergent series for stable A0") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<Index> size(1, 6);
    for (int trial = 0; trial < 25; ++trial) {
        const Index k = size(rng);
        const Matrix a0 = testutil::random_stable(rng, k, 0.9);
        const Matrix q0 = testutil::random_psd(rng, k, k);
        const SteinSolveReport rep = solve_stein({a0, q0});
        REQUIRE(rep.status == SteinStatus::Unique);
        const Matrix series = stein_series(a0, q0, 2000);
        CHECK(max_norm(rep.solutions.families[0].base - series) <= 1e-6);
    }
}

TEST_CASE("regular scalar equation: both solutions, sorted") {
    const PopovTriple sigma = scalar_dare(2, 1, 3, 1);
    const DareSolutions sols = solve_regular_dare(sigma);
    CHECK(sols.exhaustive);
    REQUIRE(sols.set.families.size() == 2);
    const double lo = sols.set.families[0].base(0, 0);
    const double hi = sols.set.families[1].base(0, 0);
    CHECK(lo == doctest::Approx(3 - 2 * std::sqrt(3.0)).epsilon(1e-10));
    CHECK(hi == doctest::Approx(3 + 2 * std::sqrt(3.0)).epsilon(1e-10));
    // The larger root is stabilizing: |a_X| = |2/(1+x)| < 1.
    CHECK(std::abs(derived(sigma, sols.set.families[1].base).A_X(0, 0)) < 1.0);
    CHECK(std::abs(2.0 / (1.0 + hi) -
                   derived(sigma, sols.set.families[1].base).A_X(0, 0)) <= 1e-10);
}

TEST_CASE("regular solver rejects singular R or singular A0") {
    CHECK_THROWS_AS(solve_regular_dare(scalar_dare(2, 1, 3, 0)),
                    PreconditionViolated);
    CHECK_THROWS_AS(solve_regular_dare(scalar_dare(0, 0, 3, 1)),
                    PreconditionViolated);
}

TEST_CASE("regular solver finds verified solutions on random instances") {
    std::mt19937_64 rng(42);
    int verified = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const PopovTriple sigma =
            testutil::random_triple(rng, 3, 2, {.a_scale = 0.5});
        DareSolutions sols;
        try {
            sols = solve_regular_dare(sigma);
        } catch (const PreconditionViolated&) {
            continue;
        }
        for (const SolutionFamily& family : sols.set.families) {
            CHECK(gdare_residual(sigma, family.base).accepted());
            ++verified;
        }
    }
    CHECK(verified > 0);
}

TEST_CASE("fixed-point oracle converges to the stabilizing solution") {
    const PopovTriple sigma = scalar_dare(2, 1, 3, 1);
    const auto limit = dare_fixed_point_oracle(sigma, Matrix::Zero(1, 1), 500);
    REQUIRE(limit.has_value());
    CHECK((*limit)(0, 0) == doctest::Approx(3 + 2 * std::sqrt(3.0)));

    // Divergent iteration reports failure: a = 2 with no input at all.
    const PopovTriple open = scalar_dare(2, 0, 3, 1);
    CHECK_FALSE(dare_fixed_point_oracle(open, Matrix::Zero(1, 1), 50).has_value());
}

TEST_CASE("oracle agrees with the enumerating solver") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const PopovTriple sigma =
            testutil::random_triple(rng, 2, 2, {.a_scale = 0.4});
        const auto limit = dare_fixed_point_oracle(sigma, Matrix::Zero(2, 2), 2000);
        if (!limit) continue;
        DareSolutions sols;
        try {
            sols = solve_regular_dare(sigma);
        } catch (const PreconditionViolated&) {
            continue;
        }
        bool matched = false;
        for (const SolutionFamily& family : sols.set.families)
            if (max_norm(family.base - *limit) <= 1e-6) matched = true;
        CHECK(matched);
    }
}
