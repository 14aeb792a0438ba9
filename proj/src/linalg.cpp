#include "cpdmd/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace cpdmd {

namespace {

// Deterministic phase fix: rotate each column so its largest-magnitude
// component lands on the positive real axis, then renormalize.
void normalize_columns(ComplexMatrix& V) {
    for (Index j = 0; j < V.cols(); ++j) {
        Index imax = 0;
        double best = -1.0;
        for (Index i = 0; i < V.rows(); ++i) {
            double a = std::abs(V(i, j));
            if (a > best) {
                best = a;
                imax = i;
            }
        }
        if (best > 0.0) {
            std::complex<double> phase = V(imax, j) / best;
            V.col(j) /= phase;
        }
        double n = V.col(j).norm();
        if (n > 0.0) V.col(j) /= n;
    }
}

}  // namespace

SvdFactors truncated_svd(const RealMatrix& A, Index r) {
    if (!A.allFinite()) throw NonFinite();
    if (r < 1 || r > std::min(A.rows(), A.cols()))
        throw RankOutOfRange("truncated_svd: rank " + std::to_string(r) + " outside [1, min(rows, cols)]");

    Eigen::JacobiSVD<RealMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& sv = svd.singularValues();
    double cutoff = sv.size() > 0 ? sv_cutoff_factor * sv(0) : 0.0;

    Index eff = 0;
    while (eff < sv.size() && sv(eff) > cutoff && sv(eff) > 0.0) ++eff;
    Index k = std::min(r, eff);

    SvdFactors f;
    f.rank = k;
    f.U = svd.matrixU().leftCols(k);
    f.S = sv.head(k);
    f.V = svd.matrixV().leftCols(k);
    return f;
}

EigenPairs eig_general(const RealMatrix& A) {
    if (!A.allFinite()) throw NonFinite();
    if (A.rows() != A.cols()) throw ShapeMismatch("eig_general: matrix not square");

    Eigen::EigenSolver<RealMatrix> es;
    es.setMaxIterations(static_cast<int>(100 * A.rows()));
    es.compute(A, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success)
        throw ConvergenceFailure("eig_general: real Schur iteration exceeded 100*n sweeps");

    EigenPairs p;
    p.values = es.eigenvalues();
    p.vectors = es.eigenvectors();
    normalize_columns(p.vectors);
    return p;
}

EigenPairs eig_general(const ComplexMatrix& A) {
    if (!A.allFinite()) throw NonFinite();
    if (A.rows() != A.cols()) throw ShapeMismatch("eig_general: matrix not square");

    Eigen::ComplexEigenSolver<ComplexMatrix> es;
    es.setMaxIterations(static_cast<int>(100 * A.rows()));
    es.compute(A, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success)
        throw ConvergenceFailure("eig_general: complex Schur iteration exceeded 100*n sweeps");

    EigenPairs p;
    p.values = es.eigenvalues();
    p.vectors = es.eigenvectors();
    normalize_columns(p.vectors);
    return p;
}

namespace {

template <typename Matrix>
Matrix pinv_impl(const Matrix& A) {
    if (!A.allFinite()) throw NonFinite();
    Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& sv = svd.singularValues();
    double cutoff = sv.size() > 0 ? sv_cutoff_factor * sv(0) : 0.0;

    RealVector inv = RealVector::Zero(sv.size());
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff && sv(i) > 0.0) inv(i) = 1.0 / sv(i);

    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

}  // namespace

RealMatrix pinv(const RealMatrix& A) { return pinv_impl(A); }
ComplexMatrix pinv(const ComplexMatrix& A) { return pinv_impl(A); }

double norm2(const RealMatrix& A) {
    if (A.size() == 0) return 0.0;
    return Eigen::JacobiSVD<RealMatrix>(A).singularValues()(0);
}

double norm2(const ComplexMatrix& A) {
    if (A.size() == 0) return 0.0;
    return Eigen::JacobiSVD<ComplexMatrix>(A).singularValues()(0);
}

}  // namespace cpdmd
