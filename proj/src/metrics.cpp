#include "cpdmd/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "cpdmd/errors.hpp"

namespace cpdmd {

namespace {

RunLength mean_sd(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double sd = xs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    return RunLength{mean, sd};
}

}  // namespace

EvalResult prf1(const std::vector<Index>& truth, const std::vector<Index>& detections,
                const MarginSpec& margins) {
    EvalResult out;
    out.truth_count = static_cast<Index>(truth.size());
    out.detection_count = static_cast<Index>(detections.size());
    for (Index tau : truth) {
        const bool hit = std::any_of(detections.begin(), detections.end(), [&](Index det) {
            return det >= tau - margins.mu_l && det <= tau + margins.mu_r;
        });
        if (hit) ++out.tp_count;
    }

    if (truth.empty()) {
        out.recall = 1.0;
        out.precision = detections.empty() ? 1.0 : 0.0;
    } else {
        out.recall = static_cast<double>(out.tp_count) / static_cast<double>(out.truth_count);
        out.precision = detections.empty()
                            ? 0.0
                            : std::min(1.0, static_cast<double>(out.tp_count) /
                                                static_cast<double>(out.detection_count));
    }
    const double pr = out.precision + out.recall;
    out.f1 = pr > 0.0 ? 2.0 * out.precision * out.recall / pr : 0.0;
    return out;
}

RunLength arl1(const std::vector<Arl1Run>& runs) {
    std::vector<double> delays;
    for (const Arl1Run& run : runs)
        if (run.detected && run.t_detect >= run.tau)
            delays.push_back(static_cast<double>(run.t_detect - run.tau));
    if (delays.empty()) throw NoValidRuns();
    return mean_sd(delays);
}

RunLength arl0(const std::vector<Index>& run_lengths) {
    if (run_lengths.empty()) throw NoValidRuns("arl0: no runs given");
    std::vector<double> lengths(run_lengths.begin(), run_lengths.end());
    return mean_sd(lengths);
}

double covering(const std::vector<Index>& truth, const std::vector<Index>& detections, Index T) {
    struct Segment {
        Index lo, hi;  // inclusive
    };
    auto partition = [T](const std::vector<Index>& cps) {
        std::vector<Segment> segs;
        Index lo = 1;
        for (Index cp : cps) {
            if (cp > lo) segs.push_back({lo, cp - 1});
            lo = std::max(lo, cp);
        }
        segs.push_back({lo, T});
        return segs;
    };

    const auto g = partition(truth);
    const auto gp = partition(detections);
    double total = 0.0;
    for (const Segment& a : g) {
        const double len_a = static_cast<double>(a.hi - a.lo + 1);
        double best = 0.0;
        for (const Segment& b : gp) {
            const double inter =
                std::max<double>(0.0, static_cast<double>(std::min(a.hi, b.hi)) -
                                          static_cast<double>(std::max(a.lo, b.lo)) + 1.0);
            const double uni = len_a + static_cast<double>(b.hi - b.lo + 1) - inter;
            best = std::max(best, inter / uni);
        }
        total += len_a * best;
    }
    return total / static_cast<double>(T);
}

}  // namespace cpdmd
