#pragma once

#include <vector>

#include "cpdmd/embedding.hpp"

namespace cpdmd {

struct HyperParams {
    Index T0 = 100;        // burn-in length; alarms are suppressed for t <= T0
    Index w = 0;           // sliding window length
    Index d = 0;           // Hankel embedding order
    Index r = 0;           // DMD truncation rank
    double lambda = 0.05;  // EWMA smoothing weight
    double L = 4.5;        // control-limit width
};

// Squared Frobenius distance between a window and its reconstruction,
// normalised by p*w.
double reconstruction_error(const WindowedBatch& window, const WindowedBatch& fitted);

// Window-reconstruction error: Hankelise the window with order d, fit a
// rank-r DMD, unroll the reconstruction back to p x w, and return the
// squared Frobenius distance normalised by p*w.
double reconstruction_error(const WindowedBatch& window, Index d, Index r);

// epsilon[i] is the reconstruction error of the window ending at t = w + i.
struct ErrorSeries {
    Index w = 0;
    std::vector<double> epsilon;
};

// Errors for every window position t = w..T. Used where several monitor
// configurations scan the same stream: the series does not depend on
// lambda or L.
ErrorSeries error_series(const RealMatrix& history, Index w, Index d, Index r);

struct TraceRow {
    Index t = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    double z = 0.0;
    double mu = 0.0;
    double sigma_z = 0.0;
    bool alarm = false;
};

struct DetectionResult {
    bool detected = false;
    Index t_detect = 0;           // valid only when detected
    std::vector<TraceRow> trace;  // filled only when requested
};

// Running mean and population variance of a scalar sequence, updated one
// observation at a time.
struct Welford {
    Index count = 0;
    double mean = 0.0;
    double var = 0.0;

    void update(double y) {
        ++count;
        const double k = static_cast<double>(count);
        const double before = y - mean;
        mean += before / k;
        const double after = y - mean;
        var += (before * after - var) / k;
    }
};

// EWMA of the error increments with limits that adapt to the running
// moments of the increments themselves. The moments are updated before
// each comparison, so the first increment can never alarm.
class EwmaMonitor {
  public:
    EwmaMonitor(double lambda, double L) : lambda_(lambda), L_(L) {}

    // Consume one increment. The returned row has t and epsilon unset;
    // alarm is true iff z falls strictly outside the adaptive band.
    TraceRow step(double delta);

  private:
    double lambda_;
    double L_;
    Index n_ = 0;  // increments consumed
    double z_ = 0.0;
    Welford stats_;
};

// Monitor scan over a precomputed error series. Alarms are suppressed for
// t <= T0; the scan stops at the first alarm.
DetectionResult ewma_scan(const ErrorSeries& series, Index T0, double lambda, double L,
                          bool keep_trace = false);

// Single-changepoint detector: slide the window over the stream, monitor
// the error increments, stop at the first alarm past the burn-in. The
// stream must cover at least one full window.
DetectionResult single_cp(const RealMatrix& history, const HyperParams& hp,
                          bool keep_trace = false);

}  // namespace cpdmd
