#pragma once

#include <vector>

#include "cpdmd/detector.hpp"

namespace cpdmd {

struct GridSpec {
    std::vector<double> window_fractions = {0.4, 0.6, 0.8};
    std::vector<double> order_fractions = {0.05, 0.1, 0.2, 0.4};
    Index rank_multiplier = 2;  // 10 suits high-complexity streams
};

struct Candidate {
    Index w = 0;
    Index d = 0;
    Index r = 0;
};

struct CandidateScore {
    Candidate params;
    double avg_error = 0.0;  // +inf when the candidate failed on the burn-in
};

struct SelectionResult {
    Candidate best;
    std::vector<CandidateScore> scores;  // grid order
};

// Candidate triplets: w and d rounded half-up from fractions of T0, ranks
// rank_multiplier * {1..max(p,2)}, filtered to w <= T0, d <= w,
// r <= min(p*d, w-d+1), deduplicated, ascending lexicographic order.
std::vector<Candidate> generate_grid(Index T0, Index p, const GridSpec& spec = {});

// Average reconstruction error of each candidate over the window positions
// t = w..T0 of the burn-in (T0 = number of columns); returns the argmin,
// ties broken by lexicographically smaller (w,d,r). Candidates that throw
// anywhere on the burn-in score +inf.
SelectionResult select_hyperparams(const RealMatrix& burnin, const GridSpec& spec = {},
                                   unsigned jobs = 1);

}  // namespace cpdmd
