#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "riccati/popov.hpp"
#include "riccati/solution_set.hpp"
#include "riccati/solvers.hpp"

namespace riccati {

struct NotApplicable : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when a lifted solution fails the residual check on the original
/// equation; signals an internal inconsistency, never a bad input.
struct LiftError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class StepKind { CrossElim, KernelA0, KernelR, InputSplit };

const char* to_string(StepKind kind);

/// One reduction step. state_transform is the orthogonal U (kernel of the
/// open-loop matrix) or V (preimage of B ker R); input_transform is the
/// input-space rotation of an InputSplit. q_offset is the cross-eliminated
/// Q of the triple the step was applied to; q11/q12/q22 are the blocks of
/// W^T q_offset W used when lifting solutions back.
struct ReductionStep {
    StepKind kind = StepKind::CrossElim;
    Matrix state_transform;  // n x n orthogonal
    Matrix input_transform;  // m x m orthogonal
    Matrix q_offset;         // n x n symmetric
    Matrix q11, q12, q22;    // empty for CrossElim / InputSplit
    Index reduced_order = 0;
};

/// Regular terminal equation: R nonsingular (hence positive definite) and
/// A - B R^-1 S^T nonsingular.
struct RegularDare {
    PopovTriple triple;
};

/// Order-zero terminal; the reduction pinned every entry of the solution.
struct EmptyEquation {};

using TerminalEquation = std::variant<RegularDare, SteinEquation, EmptyEquation>;

Index terminal_order(const TerminalEquation& term);

struct ReductionChain {
    PopovTriple original;
    std::vector<ReductionStep> steps;
    TerminalEquation terminal;
};

/// Order reduction aligned with ker(A - B pinv(R) S^T). Emits the reduced
/// triple of order n - dim(ker A0). Throws NotApplicable when A0 is
/// nonsingular. The overload takes a caller-chosen orthogonal U whose
/// trailing columns span ker A0.
std::pair<ReductionStep, PopovTriple> step_kernel_a0(const PopovTriple& sigma,
                                                     const Tolerance& tol = {});
std::pair<ReductionStep, PopovTriple> step_kernel_a0(const PopovTriple& sigma,
                                                     const Matrix& U,
                                                     const Tolerance& tol = {});

/// Order reduction aligned with A0^-1 B ker R, for triples with S = 0,
/// A0 nonsingular and R singular. Throws NotApplicable when the subspace is
/// trivial or the preconditions fail. The overload takes a caller-chosen
/// orthogonal V whose trailing columns span A0^-1 B ker R.
std::pair<ReductionStep, PopovTriple> step_kernel_r(const PopovTriple& sigma0,
                                                    const Tolerance& tol = {});
std::pair<ReductionStep, PopovTriple> step_kernel_r(const PopovTriple& sigma0,
                                                    const Matrix& V,
                                                    const Tolerance& tol = {});

/// Final input-space split for S = 0, A0 nonsingular, R singular and
/// B ker R = {0}: rotates the inputs so R becomes diag(R1, 0) with R1
/// positive definite and drops the dead input columns. Degenerates to a
/// Stein equation when no input survives.
std::pair<ReductionStep, TerminalEquation> split_input(const PopovTriple& sigma0,
                                                       const Tolerance& tol = {});

/// Full iterative reduction down to a regular equation, a Stein equation
/// or an empty terminal. At most n kernel steps.
ReductionChain reduce(const PopovTriple& sigma, const Tolerance& tol = {});

/// Reconstructs the reduced triple a recorded kernel step produced from
/// the triple it was applied to.
PopovTriple reduced_triple_for(const PopovTriple& sigma, const ReductionStep& step,
                               const Tolerance& tol = {});

/// Maps terminal solutions back to solutions of chain.original, walking the
/// steps in reverse. Every lifted family is residual-checked at sampled
/// parameter points; a failure throws LiftError.
SolutionSet lift(const ReductionChain& chain, const SolutionSet& terminal_solutions,
                 const Tolerance& tol = {});

/// Whether W^T A_X W has the block-triangular shape [[A_delta, 0], [*, 0]]
/// with top-left block equal to the reduced closed loop. Guaranteed for
/// KernelA0 steps; known to fail for KernelR steps in general.
bool check_closed_loop_structure(const PopovTriple& sigma, const Matrix& X,
                                 const ReductionStep& step, const Matrix& delta,
                                 const Tolerance& tol = {});

/// Solves the terminal equation of a chain. An inconsistent Stein terminal
/// or an exhausted enumeration yields an empty set.
SolutionSet solve_terminal(const TerminalEquation& term, const Tolerance& tol = {});

}  // namespace riccati
