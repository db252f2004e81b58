#include "riccati/reduction.hpp"

#include <Eigen/Eigenvalues>

namespace riccati {

namespace {

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

struct CrossData {
    Matrix a0;
    Matrix q0;
};

CrossData cross_data(const PopovTriple& sigma, const Tolerance& tol) {
    const Matrix r_pinv_st = pinv(sigma.R, tol) * sigma.S.transpose();
    return {sigma.A - sigma.B * r_pinv_st,
            symmetrized(sigma.Q - sigma.S * r_pinv_st)};
}

void require_s_zero(const PopovTriple& sigma, const Tolerance& tol, const char* who) {
    if (max_norm(sigma.S) > tol.abs_residual)
        throw NotApplicable(std::string(who) + ": requires S = 0");
}

ReductionStep identity_step(StepKind kind, Index n, Index m) {
    ReductionStep step;
    step.kind = kind;
    step.state_transform = Matrix::Identity(n, n);
    step.input_transform = Matrix::Identity(m, m);
    step.q_offset = Matrix::Zero(n, n);
    step.reduced_order = n;
    return step;
}

// Shared tail of both kernel reductions: rotate by W, store the Q blocks,
// build the reduced triple of order n - dropped.
std::pair<ReductionStep, PopovTriple> kernel_step(StepKind kind,
                                                  const PopovTriple& sigma,
                                                  const CrossData& cd,
                                                  const Matrix& W, Index dropped,
                                                  const Tolerance& tol) {
    const Index n = sigma.n(), m = sigma.m(), k = n - dropped;

    const Matrix a_w = W.transpose() * cd.a0 * W;
    const Matrix b_w = W.transpose() * sigma.B;
    const Matrix q_w = symmetrized(W.transpose() * cd.q0 * W);

    Matrix q1, s1, r1;
    if (kind == StepKind::KernelA0) {
        // A_W = [ A_tilde | 0 ]; the reduced cost comes from the full
        // A_tilde (n x k), not only its top block.
        const Matrix a_tilde = a_w.leftCols(k);
        q1 = symmetrized(a_tilde.transpose() * q_w * a_tilde);
        s1 = a_tilde.transpose() * q_w * b_w;
        r1 = symmetrized(sigma.R + b_w.transpose() * q_w * b_w);
    } else {
        q1 = symmetrized((a_w.transpose() * q_w * a_w).topLeftCorner(k, k));
        s1 = (a_w.transpose() * q_w * b_w).topRows(k);
        r1 = symmetrized(sigma.R + sigma.B.transpose() * cd.q0 * sigma.B);
    }
    const Matrix a1 = a_w.topLeftCorner(k, k);
    const Matrix b1 = b_w.topRows(k);

    ReductionStep step;
    step.kind = kind;
    step.state_transform = W;
    step.input_transform = Matrix::Identity(m, m);
    step.q_offset = cd.q0;
    step.q11 = q_w.topLeftCorner(k, k);
    step.q12 = q_w.topRightCorner(k, dropped);
    step.q22 = q_w.bottomRightCorner(dropped, dropped);
    step.reduced_order = k;

    return {step, make_triple(a1, b1, q1, r1, s1, tol)};
}

void require_orthogonal(const Matrix& W, Index n, const Tolerance& tol,
                        const char* who) {
    if (W.rows() != n || W.cols() != n)
        throw DimensionError(std::string(who) + ": transform must be n x n");
    if (max_norm(W.transpose() * W - Matrix::Identity(n, n)) > tol.abs_residual)
        throw NotApplicable(std::string(who) + ": transform not orthogonal");
}

// Trailing `k` columns of W must span the same subspace as `basis`.
void require_trailing_span(const Matrix& W, const Matrix& basis,
                           const Tolerance& tol, const char* who) {
    const Index k = basis.cols();
    const Matrix w2 = W.rightCols(k);
    const Matrix diff = w2 * w2.transpose() - basis * basis.transpose();
    if (max_norm(diff) > tol.abs_residual)
        throw NotApplicable(std::string(who) +
                            ": trailing columns do not span the required subspace");
}

// Orthonormal basis of A0^-1 B ker R (may be lower-dimensional than ker R).
Matrix kernel_r_subspace(const PopovTriple& sigma0, const Matrix& a0,
                         const Tolerance& tol) {
    const Matrix k_r = kernel_basis(sigma0.R, tol);
    if (k_r.cols() == 0) return Matrix(sigma0.n(), 0);
    const Matrix image = a0.partialPivLu().solve(sigma0.B * k_r);
    // Orthonormalize with rank truncation.
    if (max_norm(image) <= tol.abs_residual) return Matrix(sigma0.n(), 0);
    Eigen::JacobiSVD<Matrix> svd(image, Eigen::ComputeThinU);
    const double cutoff = tol.rel *
                          static_cast<double>(std::max(image.rows(), image.cols())) *
                          svd.singularValues()(0);
    Index r = 0;
    for (Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > cutoff) ++r;
    return svd.matrixU().leftCols(r);
}

}  // namespace

const char* to_string(StepKind kind) {
    switch (kind) {
        case StepKind::CrossElim: return "CrossElim";
        case StepKind::KernelA0: return "KernelA0";
        case StepKind::KernelR: return "KernelR";
        case StepKind::InputSplit: return "InputSplit";
    }
    return "?";
}

Index terminal_order(const TerminalEquation& term) {
    if (std::holds_alternative<EmptyEquation>(term)) return 0;
    if (const auto* stein = std::get_if<SteinEquation>(&term))
        return stein->A0.rows();
    return std::get<RegularDare>(term).triple.n();
}

std::pair<ReductionStep, PopovTriple> step_kernel_a0(const PopovTriple& sigma,
                                                     const Tolerance& tol) {
    const CrossData cd = cross_data(sigma, tol);
    const Matrix kernel = kernel_basis(cd.a0, tol);
    if (kernel.cols() == 0)
        throw NotApplicable("step_kernel_a0: open-loop matrix is nonsingular");
    return kernel_step(StepKind::KernelA0, sigma, cd,
                       orthonormal_extension(kernel, tol), kernel.cols(), tol);
}

std::pair<ReductionStep, PopovTriple> step_kernel_a0(const PopovTriple& sigma,
                                                     const Matrix& U,
                                                     const Tolerance& tol) {
    const CrossData cd = cross_data(sigma, tol);
    const Matrix kernel = kernel_basis(cd.a0, tol);
    if (kernel.cols() == 0)
        throw NotApplicable("step_kernel_a0: open-loop matrix is nonsingular");
    require_orthogonal(U, sigma.n(), tol, "step_kernel_a0");
    require_trailing_span(U, kernel, tol, "step_kernel_a0");
    return kernel_step(StepKind::KernelA0, sigma, cd, U, kernel.cols(), tol);
}

std::pair<ReductionStep, PopovTriple> step_kernel_r(const PopovTriple& sigma0,
                                                    const Tolerance& tol) {
    require_s_zero(sigma0, tol, "step_kernel_r");
    if (rank(sigma0.A, tol) < sigma0.n())
        throw NotApplicable("step_kernel_r: A0 singular");
    if (rank(sigma0.R, tol) == sigma0.m())
        throw NotApplicable("step_kernel_r: R nonsingular");
    const Matrix v2 = kernel_r_subspace(sigma0, sigma0.A, tol);
    if (v2.cols() == 0) throw NotApplicable("step_kernel_r: A0^-1 B ker R = {0}");
    const CrossData cd{sigma0.A, sigma0.Q};
    return kernel_step(StepKind::KernelR, sigma0, cd,
                       orthonormal_extension(v2, tol), v2.cols(), tol);
}

std::pair<ReductionStep, PopovTriple> step_kernel_r(const PopovTriple& sigma0,
                                                    const Matrix& V,
                                                    const Tolerance& tol) {
    require_s_zero(sigma0, tol, "step_kernel_r");
    if (rank(sigma0.A, tol) < sigma0.n())
        throw NotApplicable("step_kernel_r: A0 singular");
    if (rank(sigma0.R, tol) == sigma0.m())
        throw NotApplicable("step_kernel_r: R nonsingular");
    const Matrix v2 = kernel_r_subspace(sigma0, sigma0.A, tol);
    if (v2.cols() == 0) throw NotApplicable("step_kernel_r: A0^-1 B ker R = {0}");
    require_orthogonal(V, sigma0.n(), tol, "step_kernel_r");
    require_trailing_span(V, v2, tol, "step_kernel_r");
    const CrossData cd{sigma0.A, sigma0.Q};
    return kernel_step(StepKind::KernelR, sigma0, cd, V, v2.cols(), tol);
}

std::pair<ReductionStep, TerminalEquation> split_input(const PopovTriple& sigma0,
                                                       const Tolerance& tol) {
    require_s_zero(sigma0, tol, "split_input");
    const Index n = sigma0.n(), m = sigma0.m();
    if (rank(sigma0.A, tol) < n) throw NotApplicable("split_input: A0 singular");
    const Index r = rank(sigma0.R, tol);
    if (r == m) throw NotApplicable("split_input: R nonsingular");
    if (!ker_included(sigma0.R, sigma0.B, tol))
        throw NotApplicable("split_input: B ker R != {0}");

    ReductionStep step = identity_step(StepKind::InputSplit, n, m);

    if (r == 0) {
        // R = 0 and B ker R = {0} force B = 0.
        return {step, SteinEquation{sigma0.A, sigma0.Q}};
    }

    // Rotate inputs so R = diag(R1, 0) with R1 positive definite of order r.
    Eigen::SelfAdjointEigenSolver<Matrix> es(sigma0.R);
    Matrix omega(m, m);
    for (Index i = 0; i < m; ++i) omega.col(i) = es.eigenvectors().col(m - 1 - i);
    step.input_transform = omega;

    const Matrix r_rot = symmetrized(omega.transpose() * sigma0.R * omega);
    const Matrix b_rot = sigma0.B * omega;
    const Matrix r1 = r_rot.topLeftCorner(r, r);
    const Matrix b1 = b_rot.leftCols(r);

    if (max_norm(b1) <= tol.abs_residual)
        return {step, SteinEquation{sigma0.A, sigma0.Q}};
    return {step, TerminalEquation{RegularDare{make_triple(
                      sigma0.A, b1, sigma0.Q, r1, Matrix::Zero(n, r), tol)}}};
}

ReductionChain reduce(const PopovTriple& sigma, const Tolerance& tol) {
    ReductionChain chain{sigma, {}, EmptyEquation{}};
    PopovTriple cur = sigma;
    Index kernel_steps = 0;

    while (true) {
        ReductionStep cross = identity_step(StepKind::CrossElim, cur.n(), cur.m());
        PopovTriple cur0 = eliminate_cross(cur, tol);
        chain.steps.push_back(std::move(cross));

        if (cur0.n() == 0) {
            chain.terminal = EmptyEquation{};
            break;
        }
        if (rank(cur0.A, tol) < cur0.n()) {
            auto [step, next] = step_kernel_a0(cur0, tol);
            chain.steps.push_back(std::move(step));
            cur = std::move(next);
        } else if (rank(cur0.R, tol) < cur0.m()) {
            if (ker_included(cur0.R, cur0.B, tol)) {
                auto [step, term] = split_input(cur0, tol);
                chain.steps.push_back(std::move(step));
                chain.terminal = std::move(term);
                break;
            }
            auto [step, next] = step_kernel_r(cur0, tol);
            chain.steps.push_back(std::move(step));
            cur = std::move(next);
        } else {
            chain.terminal = RegularDare{cur0};
            break;
        }
        if (++kernel_steps > sigma.n())
            throw std::logic_error("reduce: more kernel steps than the state order");
        if (cur.n() == 0) {
            chain.terminal = EmptyEquation{};
            break;
        }
    }
    return chain;
}

PopovTriple reduced_triple_for(const PopovTriple& sigma, const ReductionStep& step,
                               const Tolerance& tol) {
    if (step.kind == StepKind::KernelA0) {
        const CrossData cd = cross_data(sigma, tol);
        return kernel_step(StepKind::KernelA0, sigma, cd, step.state_transform,
                           sigma.n() - step.reduced_order, tol)
            .second;
    }
    if (step.kind == StepKind::KernelR) {
        const CrossData cd{sigma.A, sigma.Q};
        return kernel_step(StepKind::KernelR, sigma, cd, step.state_transform,
                           sigma.n() - step.reduced_order, tol)
            .second;
    }
    throw NotApplicable("reduced_triple_for: not a kernel step");
}

namespace {

Matrix lift_base(const ReductionStep& step, const Matrix& delta) {
    const Index k = step.reduced_order;
    const Index dropped = step.state_transform.rows() - k;
    Matrix blocks(k + dropped, k + dropped);
    blocks.topLeftCorner(k, k) = delta + step.q11;
    blocks.topRightCorner(k, dropped) = step.q12;
    blocks.bottomLeftCorner(dropped, k) = step.q12.transpose();
    blocks.bottomRightCorner(dropped, dropped) = step.q22;
    return step.state_transform * blocks * step.state_transform.transpose();
}

Matrix lift_direction(const ReductionStep& step, const Matrix& h) {
    const Index k = step.reduced_order;
    const Index n = step.state_transform.rows();
    Matrix padded = Matrix::Zero(n, n);
    padded.topLeftCorner(k, k) = h;
    return step.state_transform * padded * step.state_transform.transpose();
}

}  // namespace

SolutionSet lift(const ReductionChain& chain, const SolutionSet& terminal_solutions,
                 const Tolerance& tol) {
    SolutionSet lifted = terminal_solutions;
    for (auto it = chain.steps.rbegin(); it != chain.steps.rend(); ++it) {
        const ReductionStep& step = *it;
        if (step.kind == StepKind::CrossElim || step.kind == StepKind::InputSplit)
            continue;
        for (SolutionFamily& family : lifted.families) {
            family.base = symmetrized(lift_base(step, family.base));
            for (Matrix& h : family.basis) h = symmetrized(lift_direction(step, h));
        }
    }
    canonicalize_signs(lifted);

    // Every lifted member must solve the original equation.
    const double samples[] = {-1.5, 0.5, 2.0};
    for (const SolutionFamily& family : lifted.families) {
        if (!gdare_residual(chain.original, family.base, tol).accepted(tol.abs_residual))
            throw LiftError("lift: base solution fails the residual check");
        for (Index i = 0; i < family.dim(); ++i) {
            for (double s : samples) {
                Eigen::VectorXd xi = Eigen::VectorXd::Zero(family.dim());
                xi(i) = s;
                if (!gdare_residual(chain.original, family.at(xi), tol)
                         .accepted(tol.abs_residual))
                    throw LiftError("lift: sampled family member fails the residual check");
            }
        }
    }
    return lifted;
}

bool check_closed_loop_structure(const PopovTriple& sigma, const Matrix& X,
                                 const ReductionStep& step, const Matrix& delta,
                                 const Tolerance& tol) {
    if (step.kind != StepKind::KernelA0 && step.kind != StepKind::KernelR)
        throw NotApplicable("check_closed_loop_structure: not a kernel step");
    const Index k = step.reduced_order;
    const Index dropped = sigma.n() - k;

    const Matrix a_x = derived(sigma, X, tol).A_X;
    const Matrix g =
        step.state_transform.transpose() * a_x * step.state_transform;

    if (k == 0) return max_norm(g.rightCols(dropped)) <= tol.abs_residual;

    const PopovTriple reduced = reduced_triple_for(sigma, step, tol);
    const Matrix a_delta = derived(reduced, delta, tol).A_X;

    return max_norm(g.topRightCorner(k, dropped)) <= tol.abs_residual &&
           max_norm(g.bottomRightCorner(dropped, dropped)) <= tol.abs_residual &&
           max_norm(g.topLeftCorner(k, k) - a_delta) <= tol.abs_residual;
}

SolutionSet solve_terminal(const TerminalEquation& term, const Tolerance& tol) {
    if (std::holds_alternative<EmptyEquation>(term)) {
        SolutionSet set;
        set.families.push_back({Matrix(0, 0), {}});
        return set;
    }
    if (const auto* stein = std::get_if<SteinEquation>(&term))
        return solve_stein(*stein, tol).solutions;
    return solve_regular_dare(std::get<RegularDare>(term).triple, tol).set;
}

}  // namespace riccati
