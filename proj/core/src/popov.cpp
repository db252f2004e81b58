#include "riccati/popov.hpp"

#include <Eigen/Eigenvalues>

#include <string>

namespace riccati {

Matrix PopovTriple::popov_matrix() const {
    Matrix pi(n() + m(), n() + m());
    pi << Q, S, S.transpose(), R;
    return pi;
}

PopovTriple make_triple(const Matrix& A, const Matrix& B, const Matrix& Q,
                        const Matrix& R, const Matrix& S, const Tolerance& tol) {
    const Index n = A.rows(), m = B.cols();
    if (A.cols() != n) throw DimensionError("A must be square");
    if (B.rows() != n) throw DimensionError("B must have as many rows as A");
    if (Q.rows() != n || Q.cols() != n) throw DimensionError("Q must be n x n");
    if (R.rows() != m || R.cols() != m) throw DimensionError("R must be m x m");
    if (S.rows() != n || S.cols() != m) throw DimensionError("S must be n x m");
    for (const Matrix* mat : {&A, &B, &Q, &R, &S})
        if (!is_finite(*mat)) throw DimensionError("non-finite entries");

    if (max_norm(Q - Q.transpose()) > tol.abs_residual)
        throw AsymmetryError("Q asymmetric beyond tolerance");
    if (max_norm(R - R.transpose()) > tol.abs_residual)
        throw AsymmetryError("R asymmetric beyond tolerance");

    PopovTriple sigma{A, B, 0.5 * (Q + Q.transpose()), 0.5 * (R + R.transpose()), S};

    const Matrix pi = sigma.popov_matrix();
    if (pi.size() > 0) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(pi, Eigen::EigenvaluesOnly);
        const double min_eig = es.eigenvalues().minCoeff();
        if (min_eig < -tol.abs_residual)
            throw NotPsdError("Popov matrix not PSD, min eigenvalue " +
                              std::to_string(min_eig));
    }
    return sigma;
}

XDerived derived(const PopovTriple& sigma, const Matrix& X, const Tolerance& tol) {
    if (X.rows() != sigma.n() || X.cols() != sigma.n())
        throw DimensionError("X must be n x n");
    XDerived d;
    d.R_X = sigma.R + sigma.B.transpose() * X * sigma.B;
    d.S_X = sigma.A.transpose() * X * sigma.B + sigma.S;
    const Matrix r_pinv = pinv(d.R_X, tol);
    d.G_X = Matrix::Identity(sigma.m(), sigma.m()) - r_pinv * d.R_X;
    d.K_X = r_pinv * d.S_X.transpose();
    d.A_X = sigma.A - sigma.B * d.K_X;
    return d;
}

Residual gdare_residual(const PopovTriple& sigma, const Matrix& X,
                        const Tolerance& tol) {
    if (X.rows() != sigma.n() || X.cols() != sigma.n())
        throw DimensionError("X must be n x n");
    const XDerived d = derived(sigma, X, tol);
    const Matrix defect = sigma.A.transpose() * X * sigma.A -
                          d.S_X * pinv(d.R_X, tol) * d.S_X.transpose() +
                          sigma.Q - X;
    Residual res;
    res.norm = max_norm(defect);
    res.kernel_ok = ker_included(d.R_X, d.S_X, tol);
    return res;
}

PopovTriple eliminate_cross(const PopovTriple& sigma, const Tolerance& tol) {
    const Matrix r_pinv_st = pinv(sigma.R, tol) * sigma.S.transpose();
    const Matrix a0 = sigma.A - sigma.B * r_pinv_st;
    Matrix q0 = sigma.Q - sigma.S * r_pinv_st;
    q0 = 0.5 * (q0 + q0.transpose());
    return make_triple(a0, sigma.B, q0, sigma.R,
                       Matrix::Zero(sigma.n(), sigma.m()), tol);
}

PopovTriple transform_state(const PopovTriple& sigma0, const Matrix& T,
                            const Tolerance& tol) {
    const Index n = sigma0.n();
    if (T.rows() != n || T.cols() != n)
        throw DimensionError("T must be n x n");
    if (max_norm(sigma0.S) > tol.abs_residual)
        throw DimensionError("transform_state requires S = 0");
    if (rank(T, tol) != n) throw SingularTransform("T is singular");

    const auto lu = T.partialPivLu();
    return make_triple(lu.solve(sigma0.A * T), lu.solve(sigma0.B),
                       lu.solve(sigma0.Q * T), sigma0.R, sigma0.S, tol);
}

}  // namespace riccati
