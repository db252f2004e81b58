#pragma once

#include <optional>

#include "riccati/popov.hpp"
#include "riccati/solution_set.hpp"

namespace riccati {

struct PreconditionViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Symmetric Stein equation X = A0^T X A0 + Q0.
struct SteinEquation {
    Matrix A0;  // k x k
    Matrix Q0;  // k x k symmetric
};

enum class SteinStatus { Unique, Family, Inconsistent };

struct SteinSolveReport {
    SteinStatus status = SteinStatus::Unique;
    Index family_dim = 0;
    SolutionSet solutions;  // one family when consistent, empty otherwise
};

/// Solves the Stein equation on the symmetric subspace (half-vectorization).
/// A singular but consistent operator yields an affine family with a
/// minimum-norm particular solution and an orthonormal symmetric basis of
/// { H : H = A0^T H A0 }.
SteinSolveReport solve_stein(const SteinEquation& eq, const Tolerance& tol = {});

struct DareSolutions {
    SolutionSet set;  // isolated solutions, sorted by trace then entries
    bool exhaustive = true;
};

/// Enumerates the real symmetric solutions of a regular equation (R and
/// A - B R^-1 S^T nonsingular) through the invariant subspaces of the
/// associated 2k x 2k symplectic matrix. Exhaustive up to order 8; beyond
/// that only the stabilizing solution is attempted.
DareSolutions solve_regular_dare(const PopovTriple& sigma, const Tolerance& tol = {});

/// Iterates the Riccati map from X_init; returns the limit when the
/// iteration settles within max_iter, otherwise nothing.
std::optional<Matrix> dare_fixed_point_oracle(const PopovTriple& sigma,
                                              const Matrix& X_init, int max_iter,
                                              const Tolerance& tol = {});

}  // namespace riccati
