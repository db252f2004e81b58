#pragma once

#include <cstdint>
#include <optional>

#include "riccati/popov.hpp"
#include "riccati/solution_set.hpp"

namespace riccati {

/// A diagnosed triple broke the structural equivalence
/// N singular <=> (R singular or A0 singular); indicates a rank
/// misclassification at the working tolerance.
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Extended pencil N - z M of order 2n + m with
/// M = [[I,0,0],[0,-A^T,0],[0,-B^T,0]] and N = [[A,0,B],[Q,-I,S],[S^T,0,R]].
struct PencilPair {
    Matrix M;
    Matrix N;
};

struct Diagnosis {
    bool pencil_regular = false;
    bool N_singular = false;
    bool R_singular = false;
    bool A0_singular = false;
    std::optional<bool> closed_loop_singular_predicted;
    Index rank_R = 0;
    std::optional<Index> rank_RX;  // requires a verified solution
};

PencilPair build_pencil(const PopovTriple& sigma);

/// Whether det(N - z M) is not identically zero, decided by evaluating the
/// determinant at 2n + m + 2 random complex points (a nonzero polynomial of
/// degree <= 2n + m cannot vanish at all of them). `seed` fixes the sample
/// points; callers honoring the RICCATI_SEED environment variable pass it
/// through here.
bool is_regular(const PencilPair& p, const Tolerance& tol = {},
                std::uint64_t seed = 0);

/// Singularity diagnostics. When a verified solution is supplied, rank R_X
/// (solution-independent) and the closed-loop singularity predictor
/// (rank R < rank R_X) or A0 singular are filled in as well. Throws
/// InvariantViolation if N singular <=> (R singular or A0 singular) fails.
Diagnosis diagnose(const PopovTriple& sigma, const Tolerance& tol = {},
                   const std::optional<SolutionSet>& solutions = std::nullopt,
                   std::uint64_t seed = 0);

}  // namespace riccati
