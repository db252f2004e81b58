#pragma once

#include <Eigen/Dense>

namespace riccati {

using Matrix = Eigen::MatrixXd;
using Eigen::Index;

/// Rank / residual thresholds shared by the whole library.
///
/// The effective singular-value cutoff for a matrix M is
///   rel * max(rows, cols) * sigma_max(M),
/// so rank decisions are invariant under scaling of M.
struct Tolerance {
    double rel = 1e-10;
    double abs_residual = 1e-8;
};

/// Entrywise max-abs norm. Zero for empty matrices.
double max_norm(const Matrix& m);

bool is_finite(const Matrix& m);

/// Moore-Penrose pseudo-inverse via SVD with relative rank cutoff.
Matrix pinv(const Matrix& m, const Tolerance& tol = {});

Index rank(const Matrix& m, const Tolerance& tol = {});

/// Orthonormal basis of ker(m), one column per kernel dimension
/// (cols(m) - rank(m) columns; may be empty).
Matrix kernel_basis(const Matrix& m, const Tolerance& tol = {});

/// Completes a matrix w with orthonormal columns to a square orthogonal
/// matrix [w1 | w] whose trailing columns equal w.
Matrix orthonormal_extension(const Matrix& w, const Tolerance& tol = {});

/// true iff ker(a) is contained in ker(b), decided via the projector
/// criterion ||b (I - pinv(a) a)|| <= abs_residual.
bool ker_included(const Matrix& a, const Matrix& b, const Tolerance& tol = {});

/// true iff the symmetric part of m has minimum eigenvalue >= -abs_residual.
/// m must be square.
bool is_psd(const Matrix& m, const Tolerance& tol = {});

}  // namespace riccati
