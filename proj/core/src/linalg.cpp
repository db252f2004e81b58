#include "riccati/linalg.hpp"

#include <stdexcept>

namespace riccati {

namespace {

double rank_cutoff(const Eigen::JacobiSVD<Matrix>& svd, Index rows, Index cols,
                   const Tolerance& tol) {
    const double smax = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
    return tol.rel * static_cast<double>(std::max(rows, cols)) * smax;
}

}  // namespace

double max_norm(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_finite(const Matrix& m) { return m.allFinite(); }

Matrix pinv(const Matrix& m, const Tolerance& tol) {
    if (!is_finite(m)) throw std::invalid_argument("pinv: non-finite entries");
    if (m.size() == 0) return Matrix::Zero(m.cols(), m.rows());
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double cutoff = rank_cutoff(svd, m.rows(), m.cols(), tol);
    Eigen::VectorXd inv_sigma = svd.singularValues();
    for (Index i = 0; i < inv_sigma.size(); ++i)
        inv_sigma(i) = inv_sigma(i) > cutoff ? 1.0 / inv_sigma(i) : 0.0;
    return svd.matrixV() * inv_sigma.asDiagonal() * svd.matrixU().transpose();
}

Index rank(const Matrix& m, const Tolerance& tol) {
    if (!is_finite(m)) throw std::invalid_argument("rank: non-finite entries");
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    const double cutoff = rank_cutoff(svd, m.rows(), m.cols(), tol);
    Index r = 0;
    for (Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > cutoff) ++r;
    return r;
}

Matrix kernel_basis(const Matrix& m, const Tolerance& tol) {
    if (!is_finite(m)) throw std::invalid_argument("kernel_basis: non-finite entries");
    if (m.size() == 0) return Matrix::Identity(m.cols(), m.cols());
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const double cutoff = rank_cutoff(svd, m.rows(), m.cols(), tol);
    Index r = 0;
    for (Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > cutoff) ++r;
    return svd.matrixV().rightCols(m.cols() - r);
}

Matrix orthonormal_extension(const Matrix& w, const Tolerance& tol) {
    const Index n = w.rows(), k = w.cols();
    if (k > n) throw std::invalid_argument("orthonormal_extension: more columns than rows");
    if (k > 0 &&
        max_norm(w.transpose() * w - Matrix::Identity(k, k)) > tol.abs_residual)
        throw std::invalid_argument("orthonormal_extension: columns not orthonormal");
    if (k == n) return w;
    if (k == 0) return Matrix::Identity(n, n);

    // Full Q of a QR factorization of w; its trailing n-k columns span the
    // orthogonal complement of im(w).
    Eigen::HouseholderQR<Matrix> qr(w);
    Matrix full_q = qr.householderQ();
    Matrix out(n, n);
    out.leftCols(n - k) = full_q.rightCols(n - k);
    out.rightCols(k) = w;
    return out;
}

bool ker_included(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    if (a.cols() != b.cols())
        throw std::invalid_argument("ker_included: column count mismatch");
    const Matrix proj = Matrix::Identity(a.cols(), a.cols()) - pinv(a, tol) * a;
    return max_norm(b * proj) <= tol.abs_residual;
}

bool is_psd(const Matrix& m, const Tolerance& tol) {
    if (m.rows() != m.cols()) throw std::invalid_argument("is_psd: non-square input");
    if (m.size() == 0) return true;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()),
                                             Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol.abs_residual;
}

}  // namespace riccati
