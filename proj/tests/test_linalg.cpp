#include <doctest.h>

#include "riccati/linalg.hpp"
#include "test_utils.hpp"

using namespace riccati;
using testutil::random_matrix;
using testutil::random_rank_matrix;

namespace {

double penrose_defect(const Matrix& m, const Matrix& p) {
    return std::max({max_norm(m * p * m - m), max_norm(p * m * p - p),
                     max_norm((m * p).transpose() - m * p),
                     max_norm((p * m).transpose() - p * m)});
}

}  // namespace

TEST_CASE("pinv satisfies the Penrose identities on random matrices") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Index> size(1, 12);
    for (int trial = 0; trial < 100; ++trial) {
        const Index rows = size(rng), cols = size(rng);
        std::uniform_int_distribution<Index> rk(0, std::min(rows, cols));
        const Matrix m = random_rank_matrix(rng, rows, cols, rk(rng));
        CHECK(penrose_defect(m, pinv(m)) <= 1e-8);
    }
}

TEST_CASE("pinv of an invertible matrix is the inverse") {
    Matrix m(2, 2);
    m << 3, 1, 0, 2;
    CHECK(max_norm(pinv(m) * m - Matrix::Identity(2, 2)) <= 1e-12);
}

TEST_CASE("pinv of zero and empty matrices") {
    CHECK(max_norm(pinv(Matrix::Zero(3, 2))) == 0.0);
    const Matrix e = pinv(Matrix(0, 4));
    CHECK(e.rows() == 4);
    CHECK(e.cols() == 0);
}

TEST_CASE("rank uses a scale-invariant cutoff") {
    std::mt19937_64 rng(12);
    const Matrix m = random_rank_matrix(rng, 7, 5, 3);
    CHECK(rank(m) == 3);
    CHECK(rank(1e8 * m) == 3);
    CHECK(rank(1e-8 * m) == 3);
    CHECK(rank(Matrix::Zero(4, 4)) == 0);
}

TEST_CASE("kernel_basis spans the kernel with orthonormal columns") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix m = random_rank_matrix(rng, 6, 6, 4);
        const Matrix k = kernel_basis(m);
        REQUIRE(k.cols() == 2);
        CHECK(max_norm(m * k) <= 1e-8);
        CHECK(max_norm(k.transpose() * k - Matrix::Identity(2, 2)) <= 1e-10);
    }
    CHECK(kernel_basis(Matrix::Identity(3, 3)).cols() == 0);
}

TEST_CASE("orthonormal_extension keeps the input as trailing columns") {
    std::mt19937_64 rng(14);
    Matrix w = random_matrix(rng, 5, 2);
    w = Eigen::HouseholderQR<Matrix>(w).householderQ() * Matrix::Identity(5, 2);
    const Matrix full = orthonormal_extension(w);
    REQUIRE(full.rows() == 5);
    REQUIRE(full.cols() == 5);
    CHECK(max_norm(full.transpose() * full - Matrix::Identity(5, 5)) <= 1e-10);
    CHECK(max_norm(full.rightCols(2) - w) <= 1e-12);
}

TEST_CASE("ker_included projector criterion") {
    Matrix a(2, 2), b(1, 2);
    a << 1, 0, 0, 0;  // ker a = span(e2)
    b << 1, 0;        // ker b = span(e2)
    CHECK(ker_included(a, b));
    b << 0, 1;  // b e2 != 0
    CHECK_FALSE(ker_included(a, b));
    CHECK(ker_included(Matrix::Identity(3, 3), Matrix::Ones(2, 3)));
}

TEST_CASE("is_psd") {
    CHECK(is_psd(Matrix::Zero(3, 3)));
    Matrix m(2, 2);
    m << 1, 2, 2, 1;  // eigenvalues 3, -1
    CHECK_FALSE(is_psd(m));
    std::mt19937_64 rng(15);
    CHECK(is_psd(testutil::random_psd(rng, 5, 3)));
}
