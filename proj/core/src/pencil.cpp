#include "riccati/pencil.hpp"

#include <cmath>
#include <random>

namespace riccati {

PencilPair build_pencil(const PopovTriple& sigma) {
    const Index n = sigma.n(), m = sigma.m(), d = 2 * n + m;
    PencilPair p{Matrix::Zero(d, d), Matrix::Zero(d, d)};

    p.M.topLeftCorner(n, n) = Matrix::Identity(n, n);
    p.M.block(n, n, n, n) = -sigma.A.transpose();
    p.M.block(2 * n, n, m, n) = -sigma.B.transpose();

    p.N.topLeftCorner(n, n) = sigma.A;
    p.N.topRightCorner(n, m) = sigma.B;
    p.N.block(n, 0, n, n) = sigma.Q;
    p.N.block(n, n, n, n) = -Matrix::Identity(n, n);
    p.N.block(n, 2 * n, n, m) = sigma.S;
    p.N.block(2 * n, 0, m, n) = sigma.S.transpose();
    p.N.block(2 * n, 2 * n, m, m) = sigma.R;
    return p;
}

bool is_regular(const PencilPair& p, const Tolerance& tol, std::uint64_t seed) {
    const Index d = p.M.rows();
    if (d == 0) return true;

    // Scale so the determinant magnitudes are comparable across problems.
    const double scale = std::max({max_norm(p.M), max_norm(p.N), 1.0});

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    const Index samples = d + 2;
    for (Index i = 0; i < samples; ++i) {
        const std::complex<double> z(unit(rng), unit(rng));
        const Eigen::MatrixXcd pencil =
            (p.N.cast<std::complex<double>>() - z * p.M.cast<std::complex<double>>()) /
            scale;
        if (std::abs(pencil.determinant()) > tol.abs_residual) return true;
    }
    return false;
}

Diagnosis diagnose(const PopovTriple& sigma, const Tolerance& tol,
                   const std::optional<SolutionSet>& solutions,
                   std::uint64_t seed) {
    const Index n = sigma.n(), m = sigma.m();
    Diagnosis diag;

    const PencilPair p = build_pencil(sigma);
    diag.pencil_regular = is_regular(p, tol, seed);
    diag.N_singular = rank(p.N, tol) < 2 * n + m;
    diag.rank_R = rank(sigma.R, tol);
    diag.R_singular = diag.rank_R < m;
    const Matrix a0 = sigma.A - sigma.B * pinv(sigma.R, tol) * sigma.S.transpose();
    diag.A0_singular = rank(a0, tol) < n;

    if (diag.N_singular != (diag.R_singular || diag.A0_singular))
        throw InvariantViolation(
            "diagnose: N singularity disagrees with R/A0 singularity");

    if (solutions && !solutions->empty()) {
        const Matrix& x = solutions->families.front().base;
        diag.rank_RX = rank(derived(sigma, x, tol).R_X, tol);
        diag.closed_loop_singular_predicted =
            (diag.rank_R < *diag.rank_RX) || diag.A0_singular;
    }
    return diag;
}

}  // namespace riccati
