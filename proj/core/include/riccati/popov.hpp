#pragma once

#include <stdexcept>

#include "riccati/linalg.hpp"

namespace riccati {

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct AsymmetryError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotPsdError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SingularTransform : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// System/cost data (A, B; Q, R, S) with positive-semidefinite cost matrix
/// [[Q, S], [S^T, R]]. Construct through make_triple, which validates.
struct PopovTriple {
    Matrix A;  // n x n
    Matrix B;  // n x m
    Matrix Q;  // n x n symmetric
    Matrix R;  // m x m symmetric
    Matrix S;  // n x m

    Index n() const { return A.rows(); }
    Index m() const { return B.cols(); }

    /// The (n+m) x (n+m) cost matrix [[Q, S], [S^T, R]].
    Matrix popov_matrix() const;
};

/// Validates dimensions, symmetrizes Q and R (rejecting asymmetry beyond
/// tolerance), and checks that the cost matrix is PSD.
PopovTriple make_triple(const Matrix& A, const Matrix& B, const Matrix& Q,
                        const Matrix& R, const Matrix& S,
                        const Tolerance& tol = {});

/// Quantities attached to a symmetric candidate solution X.
struct XDerived {
    Matrix R_X;  // R + B^T X B
    Matrix S_X;  // A^T X B + S
    Matrix G_X;  // orthogonal projector onto ker R_X
    Matrix K_X;  // pinv(R_X) S_X^T
    Matrix A_X;  // closed loop A - B K_X
};

XDerived derived(const PopovTriple& sigma, const Matrix& X,
                 const Tolerance& tol = {});

struct Residual {
    double norm = 0.0;      // max-norm of the fixed-point defect
    bool kernel_ok = false; // ker R_X included in ker S_X
    bool accepted(double abs_residual = 1e-8) const {
        return kernel_ok && norm <= abs_residual;
    }
};

/// Fixed-point defect and kernel condition of X for the constrained
/// generalized Riccati equation of sigma.
Residual gdare_residual(const PopovTriple& sigma, const Matrix& X,
                        const Tolerance& tol = {});

/// Removes the cross term: (A, B, Q, R, S) -> (A0, B, Q0, R, 0) with
/// A0 = A - B pinv(R) S^T and Q0 = Q - S pinv(R) S^T. Solution set and
/// closed-loop matrices are unchanged.
PopovTriple eliminate_cross(const PopovTriple& sigma, const Tolerance& tol = {});

/// State-space change of coordinates x -> T^-1 x for a triple with S = 0:
/// (T^-1 A T, T^-1 B, T^-1 Q T, R, 0). Solutions map as X -> T^-1 X T.
PopovTriple transform_state(const PopovTriple& sigma0, const Matrix& T,
                            const Tolerance& tol = {});

}  // namespace riccati
