#include <cmath>

#include "cpdmd/baseline.hpp"
#include "cpdmd/synth.hpp"
#include "doctest.h"

using namespace cpdmd;

namespace {

// N(0,1) with a +4 mean shift at t = 300.
RealVector shifted_stream(std::uint64_t seed) {
    ChangeScenario sc;
    sc.pre.sigma = 1.0;
    sc.post.sigma = 1.0;
    sc.post.gamma = 4.0;
    sc.tau = 300;
    sc.T = 600;
    return generate(sc, seed).row(0).transpose();
}

}  // namespace

TEST_CASE("a wide-limit chart catches a large mean shift almost immediately") {
    // At L = 4.5 pre-change false alarms are rare enough that the first
    // alarm lands inside [300, 330] in well over 95% of runs.
    int hits = 0;
    const int seeds = 60;
    for (int s = 0; s < seeds; ++s) {
        BaselineResult res = ewma_detect(shifted_stream(700 + static_cast<std::uint64_t>(s)),
                                         EwmaBaselineParams{100, 0.05, 4.5});
        if (res.detected && res.t_detect >= 300 && res.t_detect <= 330) ++hits;
    }
    CHECK(hits >= 57);
}

TEST_CASE("a tight-limit chart detects the shift whenever it survives to it") {
    // At L = 2.5 the in-control run length is a few hundred steps, so many
    // seeds false-alarm during the 200 monitored pre-change steps; the
    // detection power conditional on reaching the change is what the
    // narrow limit can honestly promise.
    int survived = 0;
    int hits = 0;
    const int seeds = 60;
    for (int s = 0; s < seeds; ++s) {
        BaselineResult res = ewma_detect(shifted_stream(700 + static_cast<std::uint64_t>(s)),
                                         EwmaBaselineParams{100, 0.05, 2.5});
        if (res.detected && res.t_detect < 300) continue;
        ++survived;
        if (res.detected && res.t_detect >= 300 && res.t_detect <= 330) ++hits;
    }
    CHECK(survived >= 10);
    CHECK(hits * 100 >= survived * 95);
}

TEST_CASE("a constant burn-in cannot calibrate the chart") {
    RealVector flat = RealVector::Constant(200, 3.0);
    CHECK_THROWS_AS(ewma_detect(flat, EwmaBaselineParams{100, 0.05, 4.5}), DegenerateBurnIn);
}

TEST_CASE("an absurdly wide limit never alarms on bounded data") {
    RealVector stream = shifted_stream(1);
    BaselineResult res = ewma_detect(stream, EwmaBaselineParams{100, 1.0, 1.0e6});
    CHECK_FALSE(res.detected);
}

TEST_CASE("the statistic is the exact linear filter of the stream") {
    RealVector stream(12);
    stream << 0.3, -1.1, 0.4, 0.9, -0.2, 2.0, -0.7, 1.3, 0.1, -0.5, 0.8, 1.7;
    EwmaBaselineParams params{5, 0.3, 4.5};
    RealVector z = ewma_statistics(stream, params);
    const double mu = stream.head(5).mean();
    for (Index t = 1; t <= 12; ++t) {
        double direct = std::pow(0.7, static_cast<double>(t)) * mu;
        for (Index i = 1; i <= t; ++i)
            direct += 0.3 * std::pow(0.7, static_cast<double>(t - i)) * stream(i - 1);
        CHECK(std::abs(z(t - 1) - direct) <= 1e-12);
    }
}

TEST_CASE("the detector agrees with thresholds applied to the statistic series") {
    RealVector stream = shifted_stream(7);
    EwmaBaselineParams params{100, 0.05, 3.5};
    BaselineResult res = ewma_detect(stream, params);
    RealVector z = ewma_statistics(stream, params);

    const double mu = stream.head(100).mean();
    double ss = 0.0;
    for (Index i = 0; i < 100; ++i) ss += (stream(i) - mu) * (stream(i) - mu);
    const double sigma = std::sqrt(ss / 99.0);

    Index first = 0;
    for (Index t = 101; t <= stream.size(); ++t) {
        const double spread =
            0.05 / 1.95 * (1.0 - std::pow(0.95, 2.0 * static_cast<double>(t)));
        const double sigma_z = sigma * std::sqrt(spread);
        if (z(t - 1) > mu + 3.5 * sigma_z || z(t - 1) < mu - 3.5 * sigma_z) {
            first = t;
            break;
        }
    }
    CHECK(res.detected == (first != 0));
    if (res.detected) CHECK(res.t_detect == first);
}

TEST_CASE("the baseline validates its inputs") {
    RealVector tiny = RealVector::Constant(5, 1.0);
    CHECK_THROWS_AS(ewma_detect(tiny, EwmaBaselineParams{10, 0.05, 4.5}), InsufficientHistory);
    CHECK_THROWS_AS(ewma_detect(tiny, EwmaBaselineParams{1, 0.05, 4.5}), Error);
}
