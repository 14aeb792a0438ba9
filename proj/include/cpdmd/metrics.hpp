#pragma once

#include <vector>

#include "cpdmd/linalg.hpp"

namespace cpdmd {

struct MarginSpec {
    Index mu_l = 0;   // tolerated early-detection lead
    Index mu_r = 30;  // tolerated detection delay
};

struct EvalResult {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    Index tp_count = 0;
    Index detection_count = 0;
    Index truth_count = 0;
};

// Margin-based precision/recall/F1. A truth time tau is correctly detected
// iff some detection lands in [tau - mu_l, tau + mu_r]. Matching is
// non-exclusive (one detection may validate several truths), so precision
// is clamped to 1. With no truths: P = R = F1 = 1 when there are also no
// detections, else P = F1 = 0, R = 1.
EvalResult prf1(const std::vector<Index>& truth, const std::vector<Index>& detections,
                const MarginSpec& margins);

struct RunLength {
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation; 0 for a single run
};

struct Arl1Run {
    Index tau = 0;
    bool detected = false;
    Index t_detect = 0;
};

// Mean/SD of the detection delay t_detect - tau over runs that detected at
// or after the change; undetected or pre-change runs are excluded.
RunLength arl1(const std::vector<Arl1Run>& runs);

// Mean/SD of no-change run lengths; censored runs enter at their
// truncation length (the caller substitutes it).
RunLength arl0(const std::vector<Index>& run_lengths);

// Covering metric of the predicted segmentation against the ground truth.
// Changepoint lists induce partitions of 1..T with segment j spanning
// tau_{j-1}..tau_j - 1 (tau_0 = 1, tau_{n+1} = T + 1); each truth segment
// contributes its length times its best Jaccard overlap.
double covering(const std::vector<Index>& truth, const std::vector<Index>& detections, Index T);

}  // namespace cpdmd
