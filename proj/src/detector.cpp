#include "cpdmd/detector.hpp"

#include <cmath>

#include "cpdmd/dmd.hpp"

namespace cpdmd {

double reconstruction_error(const WindowedBatch& window, const WindowedBatch& fitted) {
    if (window.p != fitted.p || window.w != fitted.w)
        throw ShapeMismatch("reconstruction_error: window shapes differ");
    const double pw = static_cast<double>(window.p) * static_cast<double>(window.w);
    return (window.data - fitted.data).squaredNorm() / pw;
}

double reconstruction_error(const WindowedBatch& window, Index d, Index r) {
    HankelBatch h = hankelize(window, d);
    DmdDecomposition dec = dmd(h.data, r);
    HankelBatch fitted{h.p, h.w, h.d, dec.reconstruction};
    return reconstruction_error(window, unroll(fitted));
}

ErrorSeries error_series(const RealMatrix& history, Index w, Index d, Index r) {
    const Index T = history.cols();
    if (T < w) throw InsufficientHistory("error_series: stream shorter than one window");
    ErrorSeries out;
    out.w = w;
    out.epsilon.reserve(static_cast<std::size_t>(T - w + 1));
    for (Index t = w; t <= T; ++t)
        out.epsilon.push_back(reconstruction_error(make_window(history, t, w), d, r));
    return out;
}

TraceRow EwmaMonitor::step(double delta) {
    ++n_;
    // delta == Z is a fixed point of the recursion; skipping it keeps the
    // equality exact in floating point, so constant streams never alarm.
    if (n_ == 1) z_ = delta;
    else if (delta != z_) z_ = (1.0 - lambda_) * z_ + lambda_ * delta;
    stats_.update(delta);
    const double spread =
        lambda_ / (2.0 - lambda_) * (1.0 - std::pow(1.0 - lambda_, 2.0 * static_cast<double>(n_)));
    const double sigma_z = std::sqrt(stats_.var) * std::sqrt(spread);

    TraceRow row;
    row.delta = delta;
    row.z = z_;
    row.mu = stats_.mean;
    row.sigma_z = sigma_z;
    row.alarm = z_ > stats_.mean + L_ * sigma_z || z_ < stats_.mean - L_ * sigma_z;
    return row;
}

namespace {

// Shared scan core: `next_eps(t)` yields the error of the window ending at t.
template <typename ErrFn>
DetectionResult scan_impl(ErrFn&& next_eps, Index w, Index T, Index T0, double lambda, double L,
                          bool keep_trace) {
    DetectionResult out;
    EwmaMonitor mon(lambda, L);
    double prev_eps = 0.0;
    for (Index t = w; t <= T; ++t) {
        const double eps = next_eps(t);
        if (t == w) {
            if (keep_trace) out.trace.push_back(TraceRow{t, eps, 0.0, 0.0, 0.0, 0.0, false});
            prev_eps = eps;
            continue;
        }
        TraceRow row = mon.step(eps - prev_eps);
        row.t = t;
        row.epsilon = eps;
        row.alarm = row.alarm && t > T0;
        if (keep_trace) out.trace.push_back(row);
        if (row.alarm) {
            out.detected = true;
            out.t_detect = t;
            return out;
        }
        prev_eps = eps;
    }
    return out;
}

}  // namespace

DetectionResult ewma_scan(const ErrorSeries& series, Index T0, double lambda, double L,
                          bool keep_trace) {
    const Index T = series.w + static_cast<Index>(series.epsilon.size()) - 1;
    auto lookup = [&](Index t) { return series.epsilon[static_cast<std::size_t>(t - series.w)]; };
    return scan_impl(lookup, series.w, T, T0, lambda, L, keep_trace);
}

DetectionResult single_cp(const RealMatrix& history, const HyperParams& hp, bool keep_trace) {
    const Index T = history.cols();
    if (T < hp.w) throw InsufficientHistory("single_cp: stream shorter than one window");
    auto compute = [&](Index t) {
        return reconstruction_error(make_window(history, t, hp.w), hp.d, hp.r);
    };
    return scan_impl(compute, hp.w, T, hp.T0, hp.lambda, hp.L, keep_trace);
}

}  // namespace cpdmd
