#pragma once

#include "cpdmd/linalg.hpp"

namespace cpdmd {

struct DmdDecomposition {
    Index rank_used = 0;        // retained modes (<= requested rank)
    ComplexMatrix modes;        // Phi, n x rank_used
    ComplexVector discrete_eigs;// Lambda
    ComplexVector dynamics;     // Omega = log(Lambda) / dt, dt = 1, principal branch
    ComplexVector amplitudes;   // b = pinv(Phi) * x_1
    RealMatrix reconstruction;  // n x m, real part of the mode expansion
    double imag_residue = 0.0;  // Frobenius norm of the discarded imaginary part
};

// Rank-truncated exact DMD of a snapshot matrix: lagged split X/Y, truncated
// SVD of X, projected operator U* Y V S^-1, eigendecomposition, modes
// Phi = Y V S^-1 W, amplitudes from the first snapshot, and the forward
// reconstruction x_k = Re(Phi Lambda^{k-1} b). Modes with |lambda| below the
// zero cutoff are dropped.
DmdDecomposition dmd(const RealMatrix& snapshots, Index r);

// Full (unprojected) best-fit operator Y X^+.
RealMatrix dmd_operator_full(const RealMatrix& snapshots);

}  // namespace cpdmd
