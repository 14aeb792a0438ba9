#pragma once

#include <vector>

#include "cpdmd/linalg.hpp"

namespace cpdmd {

struct PerturbationRecord {
    Index t = 0;
    double e_norm = 0.0;         // ||E||_2
    double cond_phi = 0.0;       // condition number of the eigenvector matrix of A
    double eig_gap = 0.0;        // min pairwise eigenvalue separation of A
    double max_eig_drift = 0.0;  // worst-case drift of the perturbed spectrum
    bool bound_ok = false;       // max_eig_drift <= cond_phi * e_norm * (1 + 1e-8)
};

// Operator perturbation E between the full (unprojected) linear operators
// of the Hankel windows ending at t and t+1. Computed two ways: directly as
// the operator difference, and through the closed form built on the
// incremental SVD factors of the slid window (column downdate + append).
// Returns the direct value; throws ClosedFormMismatch when the two disagree
// beyond 1e-6 * (1 + ||direct||_F). The closed form is exact only when the
// lagged snapshot matrix is square (p*d = w-d).
ComplexMatrix perturbation_matrix(const RealMatrix& stream, Index t, Index w, Index d);

// Spectral-drift record for the window pair at t/t+1 with E taken directly
// as the operator difference. Throws NonDiagonalisable when the eigenvector
// matrix of A has condition number >= 1e12.
PerturbationRecord check_bauer_fike(const RealMatrix& stream, Index t, Index w, Index d);

// First-order eigenvector diagnostic: eigenvectors of the two operators are
// paired greedily by |inner product|; returns the worst ratio of observed
// eigenvector drift to ||E||_2 / gap. Reported only, never asserted <= 1
// (the bound drops a second-order term).
double eigenvector_ratio(const RealMatrix& stream, Index t, Index w, Index d);

struct ComplexityRow {
    Index p = 0;
    Index w = 0;
    Index d = 0;
    double seconds_per_step = 0.0;
    double theoretical_cost = 0.0;  // p*d*(w-d)*min(p*d, w-d)
};

// Dominant flop count of one detector step on a (p*d) x (w-d+1) Hankel
// window: p*d*(w-d)*min(p*d, w-d).
inline double theoretical_cost(Index p, Index w, Index d) {
    const double pd = static_cast<double>(p * d);
    const double cols = static_cast<double>(w - d);
    return pd * cols * (pd < cols ? pd : cols);
}

// Wall time of one detector step (window error at the maximum valid rank)
// for every valid (p, w, d) combination, alongside the theoretical cost.
std::vector<ComplexityRow> complexity_bench(const std::vector<Index>& p_values,
                                            const std::vector<Index>& w_values,
                                            const std::vector<Index>& d_values,
                                            Index steps_per_config = 40);

// Spearman rank correlation; average ranks on ties.
double rank_correlation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace cpdmd
