#include "riccati/solvers.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <vector>

namespace riccati {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Orthonormal half-vectorization: off-diagonal entries scaled by sqrt(2) so
// svec preserves the Frobenius inner product on symmetric matrices.
Eigen::VectorXd svec(const Matrix& h) {
    const Index k = h.rows();
    Eigen::VectorXd v(k * (k + 1) / 2);
    Index p = 0;
    for (Index j = 0; j < k; ++j) {
        v(p++) = h(j, j);
        for (Index i = j + 1; i < k; ++i) v(p++) = kSqrt2 * h(i, j);
    }
    return v;
}

Matrix smat(const Eigen::VectorXd& v, Index k) {
    Matrix h(k, k);
    Index p = 0;
    for (Index j = 0; j < k; ++j) {
        h(j, j) = v(p++);
        for (Index i = j + 1; i < k; ++i) {
            h(i, j) = v(p) / kSqrt2;
            h(j, i) = v(p++) / kSqrt2;
        }
    }
    return h;
}

// Matrix of H -> A0^T H A0 restricted to the symmetric subspace.
Matrix stein_operator(const Matrix& a0) {
    const Index k = a0.rows();
    const Index d = k * (k + 1) / 2;
    Matrix op(d, d);
    Index p = 0;
    for (Index j = 0; j < k; ++j) {
        for (Index i = j; i < k; ++i) {
            Matrix e = Matrix::Zero(k, k);
            e(i, j) = e(j, i) = (i == j) ? 1.0 : 1.0 / kSqrt2;
            op.col(p++) = svec(a0.transpose() * e * a0);
        }
    }
    return op;
}

bool nearly_equal(const Matrix& a, const Matrix& b, double tol) {
    return max_norm(a - b) <= tol;
}

}  // namespace

void canonicalize_signs(SolutionSet& set) {
    for (SolutionFamily& family : set.families) {
        for (Matrix& h : family.basis) {
            const double scale = max_norm(h);
            if (scale == 0.0) continue;
            for (Index i = 0; i < h.rows(); ++i) {
                bool decided = false;
                for (Index j = 0; j < h.cols(); ++j) {
                    if (std::abs(h(i, j)) > 1e-12 * scale) {
                        if (h(i, j) < 0.0) h = -h;
                        decided = true;
                        break;
                    }
                }
                if (decided) break;
            }
        }
    }
}

SteinSolveReport solve_stein(const SteinEquation& eq, const Tolerance& tol) {
    const Index k = eq.A0.rows();
    if (eq.A0.cols() != k || eq.Q0.rows() != k || eq.Q0.cols() != k)
        throw PreconditionViolated("solve_stein: dimension mismatch");
    if (max_norm(eq.Q0 - eq.Q0.transpose()) > tol.abs_residual)
        throw PreconditionViolated("solve_stein: Q0 asymmetric");

    SteinSolveReport report;
    if (k == 0) {
        report.status = SteinStatus::Unique;
        report.solutions.families.push_back({Matrix(0, 0), {}});
        return report;
    }

    const Index d = k * (k + 1) / 2;
    const Matrix op = Matrix::Identity(d, d) - stein_operator(eq.A0);
    const Eigen::VectorXd rhs = svec(0.5 * (eq.Q0 + eq.Q0.transpose()));

    Eigen::JacobiSVD<Matrix> svd(op, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double cutoff =
        tol.rel * static_cast<double>(d) * svd.singularValues()(0);
    Index r = 0;
    for (Index i = 0; i < d; ++i)
        if (svd.singularValues()(i) > cutoff) ++r;

    // Minimum-norm least-squares solution, then a consistency check.
    Eigen::VectorXd coeff = svd.matrixU().transpose() * rhs;
    Eigen::VectorXd scaled = Eigen::VectorXd::Zero(d);
    for (Index i = 0; i < r; ++i) scaled(i) = coeff(i) / svd.singularValues()(i);
    const Eigen::VectorXd x = svd.matrixV() * scaled;

    if ((op * x - rhs).lpNorm<Eigen::Infinity>() > tol.abs_residual) {
        report.status = SteinStatus::Inconsistent;
        return report;
    }

    SolutionFamily family;
    family.base = smat(x, k);
    for (Index i = r; i < d; ++i) family.basis.push_back(smat(svd.matrixV().col(i), k));

    report.status = (r == d) ? SteinStatus::Unique : SteinStatus::Family;
    report.family_dim = d - r;
    report.solutions.families.push_back(std::move(family));
    canonicalize_signs(report.solutions);
    return report;
}

namespace {

using ComplexMatrix = Eigen::MatrixXcd;

// Real basis of the span of conjugate-closed eigenvector columns.
Matrix realize_basis(const ComplexMatrix& vecs, const Eigen::VectorXcd& vals,
                     const std::vector<int>& pick,
                     const std::vector<int>& partner) {
    const Index rows = vecs.rows();
    Matrix basis(rows, static_cast<Index>(pick.size()));
    Index col = 0;
    std::vector<bool> done(partner.size(), false);
    for (int i : pick) {
        if (done[i]) continue;
        done[i] = true;
        if (partner[i] < 0) {
            // Real eigenvalue: rotate the phase out, keep the real part.
            Eigen::VectorXcd v = vecs.col(i);
            Index imax = 0;
            v.cwiseAbs().maxCoeff(&imax);
            v *= std::conj(v(imax)) / std::abs(v(imax));
            basis.col(col++) = v.real();
        } else {
            done[partner[i]] = true;
            basis.col(col++) = vecs.col(i).real();
            basis.col(col++) = vecs.col(i).imag();
        }
    }
    (void)vals;
    return basis;
}

}  // namespace

DareSolutions solve_regular_dare(const PopovTriple& sigma, const Tolerance& tol) {
    const Index k = sigma.n(), m = sigma.m();
    if (rank(sigma.R, tol) < m)
        throw PreconditionViolated("solve_regular_dare: R singular");

    const auto r_lu = sigma.R.partialPivLu();
    const Matrix a0 = sigma.A - sigma.B * r_lu.solve(sigma.S.transpose());
    if (rank(a0, tol) < k)
        throw PreconditionViolated("solve_regular_dare: open-loop matrix singular");

    DareSolutions out;
    if (k == 0) {
        out.set.families.push_back({Matrix(0, 0), {}});
        return out;
    }

    Matrix q0 = sigma.Q - sigma.S * r_lu.solve(sigma.S.transpose());
    q0 = 0.5 * (q0 + q0.transpose());
    const Matrix g = sigma.B * r_lu.solve(sigma.B.transpose());
    const Matrix a0_inv_t = a0.transpose().partialPivLu().inverse();

    Matrix z(2 * k, 2 * k);
    z.topLeftCorner(k, k) = a0 + g * a0_inv_t * q0;
    z.topRightCorner(k, k) = -g * a0_inv_t;
    z.bottomLeftCorner(k, k) = -a0_inv_t * q0;
    z.bottomRightCorner(k, k) = a0_inv_t;

    Eigen::EigenSolver<Matrix> es(z);
    const Eigen::VectorXcd vals = es.eigenvalues();
    const ComplexMatrix vecs = es.eigenvectors();
    const int total = static_cast<int>(2 * k);

    // Pair each nonreal eigenvalue with its conjugate.
    std::vector<int> partner(total, -1);
    const double eig_tol = 1e-8 * std::max(1.0, vals.cwiseAbs().maxCoeff());
    for (int i = 0; i < total; ++i) {
        if (partner[i] >= 0 || std::abs(vals(i).imag()) <= eig_tol) continue;
        for (int j = i + 1; j < total; ++j) {
            if (partner[j] >= 0) continue;
            if (std::abs(vals(j) - std::conj(vals(i))) <= eig_tol) {
                partner[i] = j;
                partner[j] = i;
                break;
            }
        }
    }

    std::vector<std::vector<int>> selections;
    if (k <= 8) {
        for (unsigned mask = 0; mask < (1u << total); ++mask) {
            if (std::popcount(mask) != static_cast<int>(k)) continue;
            bool closed = true;
            std::vector<int> pick;
            for (int i = 0; i < total; ++i) {
                if (!(mask >> i & 1u)) continue;
                if (partner[i] >= 0 && !(mask >> partner[i] & 1u)) {
                    closed = false;
                    break;
                }
                pick.push_back(i);
            }
            if (closed) selections.push_back(std::move(pick));
        }
    } else {
        // Too large to enumerate: attempt only the stabilizing selection.
        out.exhaustive = false;
        std::vector<int> order(total);
        for (int i = 0; i < total; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return std::abs(vals(a)) < std::abs(vals(b));
        });
        std::vector<int> pick(order.begin(), order.begin() + k);
        bool closed = true;
        for (int i : pick)
            if (partner[i] >= 0 &&
                std::find(pick.begin(), pick.end(), partner[i]) == pick.end())
                closed = false;
        if (closed) selections.push_back(std::move(pick));
    }

    std::vector<Matrix> found;
    for (const std::vector<int>& pick : selections) {
        const Matrix basis = realize_basis(vecs, vals, pick, partner);
        const Matrix x1 = basis.topRows(k);
        const Matrix x2 = basis.bottomRows(k);
        if (rank(x1, tol) < k) continue;
        Matrix x = x1.transpose()
                       .partialPivLu()
                       .solve(x2.transpose())
                       .transpose();
        if (!is_finite(x)) continue;
        if (max_norm(x - x.transpose()) > 1e-6 * std::max(1.0, max_norm(x)))
            continue;
        x = 0.5 * (x + x.transpose());
        if (!gdare_residual(sigma, x, tol).accepted(tol.abs_residual)) continue;
        bool dup = false;
        for (const Matrix& y : found)
            if (nearly_equal(x, y, 1e-6 * std::max(1.0, max_norm(x)))) dup = true;
        if (!dup) found.push_back(std::move(x));
    }

    std::sort(found.begin(), found.end(), [](const Matrix& a, const Matrix& b) {
        const double ta = a.trace(), tb = b.trace();
        if (std::abs(ta - tb) > 1e-9 * std::max(1.0, std::abs(ta) + std::abs(tb)))
            return ta < tb;
        for (Index i = 0; i < a.rows(); ++i)
            for (Index j = 0; j < a.cols(); ++j)
                if (std::abs(a(i, j) - b(i, j)) > 1e-9) return a(i, j) < b(i, j);
        return false;
    });

    for (Matrix& x : found) out.set.families.push_back({std::move(x), {}});
    return out;
}

std::optional<Matrix> dare_fixed_point_oracle(const PopovTriple& sigma,
                                              const Matrix& X_init, int max_iter,
                                              const Tolerance& tol) {
    Matrix x = 0.5 * (X_init + X_init.transpose());
    for (int iter = 0; iter < max_iter; ++iter) {
        const XDerived d = derived(sigma, x, tol);
        Matrix next = sigma.A.transpose() * x * sigma.A -
                      d.S_X * pinv(d.R_X, tol) * d.S_X.transpose() + sigma.Q;
        next = 0.5 * (next + next.transpose());
        if (!is_finite(next)) return std::nullopt;
        if (max_norm(next - x) <= tol.abs_residual) return next;
        x = std::move(next);
    }
    return std::nullopt;
}

}  // namespace riccati
