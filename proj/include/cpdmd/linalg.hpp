#pragma once

#include <Eigen/Dense>

#include "cpdmd/errors.hpp"

namespace cpdmd {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Singular values below sv_cutoff_factor * sigma_max are treated as zero
// when inverting or counting rank; near-periodic windows are rank-deficient.
inline constexpr double sv_cutoff_factor = 1e-12;

// Modes with |lambda| below this carry no forward dynamics and are dropped.
inline constexpr double eig_zero_cutoff = 1e-12;

struct SvdFactors {
    RealMatrix U;   // p x rank
    RealVector S;   // rank, descending
    RealMatrix V;   // m x rank
    Index rank = 0; // effective rank actually returned (<= requested)
};

struct EigenPairs {
    ComplexVector values;  // n
    ComplexMatrix vectors; // n x n, unit columns, phase-normalized
};

// Leading-r SVD factors; effective rank may be smaller than r when trailing
// singular values fall below the cutoff. rank == 0 means a zero matrix.
SvdFactors truncated_svd(const RealMatrix& A, Index r);

// Eigenpairs of a general square matrix. Columns are unit 2-norm with the
// largest-magnitude component rotated to the positive real axis.
EigenPairs eig_general(const RealMatrix& A);
EigenPairs eig_general(const ComplexMatrix& A);

// Moore-Penrose pseudo-inverse via SVD with the cutoff above.
RealMatrix pinv(const RealMatrix& A);
ComplexMatrix pinv(const ComplexMatrix& A);

// Matrix 2-norm (largest singular value).
double norm2(const RealMatrix& A);
double norm2(const ComplexMatrix& A);

}  // namespace cpdmd
