#include "cpdmd/dmd.hpp"

#include <complex>

namespace cpdmd {

DmdDecomposition dmd(const RealMatrix& snapshots, Index r) {
    const Index n = snapshots.rows();
    const Index m = snapshots.cols();
    if (m < 2) throw ShapeMismatch("dmd: need at least two snapshots");
    if (r < 1 || r > std::min(n, m - 1))
        throw RankOutOfRange("dmd: rank " + std::to_string(r) + " outside [1, min(n, m-1)]");

    const auto X = snapshots.leftCols(m - 1);
    const auto Y = snapshots.rightCols(m - 1);

    SvdFactors f = truncated_svd(X, r);
    if (f.rank == 0) throw DegenerateWindow("dmd: window has effective rank zero");

    RealVector sinv = f.S.cwiseInverse();
    RealMatrix YVSinv = Y * f.V * sinv.asDiagonal();       // n x k
    RealMatrix Atilde = f.U.transpose() * YVSinv;          // k x k

    EigenPairs ep = eig_general(Atilde);

    // Zero eigenvalues carry no forward dynamics; drop their modes.
    std::vector<Index> keep;
    for (Index j = 0; j < ep.values.size(); ++j)
        if (std::abs(ep.values(j)) >= eig_zero_cutoff) keep.push_back(j);

    DmdDecomposition out;
    out.rank_used = static_cast<Index>(keep.size());
    out.discrete_eigs.resize(out.rank_used);
    out.dynamics.resize(out.rank_used);
    ComplexMatrix W(ep.vectors.rows(), out.rank_used);
    for (Index j = 0; j < out.rank_used; ++j) {
        out.discrete_eigs(j) = ep.values(keep[j]);
        out.dynamics(j) = std::log(ep.values(keep[j]));
        W.col(j) = ep.vectors.col(keep[j]);
    }

    if (out.rank_used == 0) {
        out.modes.resize(n, 0);
        out.amplitudes.resize(0);
        out.reconstruction = RealMatrix::Zero(n, m);
        return out;
    }

    out.modes = YVSinv.cast<std::complex<double>>() * W;   // n x k'
    out.amplitudes = pinv(out.modes) * snapshots.col(0).cast<std::complex<double>>();

    // x_k = Re(Phi diag(lambda^{k-1}) b); the power is accumulated stepwise.
    ComplexVector coeff = out.amplitudes;
    out.reconstruction.resize(n, m);
    double imag2 = 0.0;
    for (Index k = 0; k < m; ++k) {
        ComplexVector col = out.modes * coeff;
        out.reconstruction.col(k) = col.real();
        imag2 += col.imag().squaredNorm();
        coeff = coeff.cwiseProduct(out.discrete_eigs);
    }
    out.imag_residue = std::sqrt(imag2);
    return out;
}

RealMatrix dmd_operator_full(const RealMatrix& snapshots) {
    const Index m = snapshots.cols();
    if (m < 2) throw ShapeMismatch("dmd_operator_full: need at least two snapshots");
    const RealMatrix X = snapshots.leftCols(m - 1);
    const RealMatrix Y = snapshots.rightCols(m - 1);
    if (norm2(X) == 0.0) throw DegenerateWindow("dmd_operator_full: zero snapshot matrix");
    return Y * pinv(X);
}

}  // namespace cpdmd
