#include "cpdmd/pipeline.hpp"
#include "cpdmd/synth.hpp"
#include "doctest.h"

using namespace cpdmd;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Location-change block: sine plus noise with an offset step at tau.
RealMatrix location_block(double gamma_pre, double gamma_post, std::uint64_t seed) {
    ChangeScenario sc;
    sc.pre.omegas = {4.0 * kPi / 75.0};
    sc.pre.alphas = {1.0};
    sc.pre.gamma = gamma_pre;
    sc.pre.sigma = 0.1;
    sc.post = sc.pre;
    sc.post.gamma = gamma_post;
    sc.tau = 300;
    sc.T = 600;
    return generate(sc, seed);
}

}  // namespace

TEST_CASE("a change-free stream yields an empty report") {
    RealMatrix stream = generate(find_scenario("null/location"), 77);
    ChangepointReport rep = detect_all(stream, 100, 0.05, 4.5);
    CHECK(rep.changepoints.empty());
    CHECK(rep.warnings.empty());
    REQUIRE(rep.segments.size() == 1);
    CHECK(rep.segments[0].start == 1);
    CHECK(rep.segments[0].end == 600);
}

TEST_CASE("consecutive offset steps are both found near their true times") {
    int both = 0;
    const int seeds = 20;
    for (int s = 0; s < seeds; ++s) {
        // Offsets line up at the block boundary, so the only changes are the
        // +1 step at 300 and the +2 step at 900; the second step is doubled
        // to stay unambiguous for whichever window the restart selects.
        RealMatrix a = location_block(0.0, 1.0, 500 + static_cast<std::uint64_t>(s));
        RealMatrix b = location_block(1.0, 3.0, 9500 + static_cast<std::uint64_t>(s));
        RealMatrix stream(1, 1200);
        stream << a, b;
        ChangepointReport rep = detect_all(stream, 100, 0.05, 4.5);
        bool near_300 = false;
        bool near_900 = false;
        for (Index cp : rep.changepoints) {
            if (cp >= 300 && cp <= 330) near_300 = true;
            if (cp >= 900 && cp <= 930) near_900 = true;
        }
        if (near_300 && near_900) ++both;
    }
    CHECK(both >= 18);
}

TEST_CASE("streams shorter than the burn-in produce an empty report") {
    RealMatrix stream = generate(find_scenario("null/mean", 50), 3);
    ChangepointReport rep = detect_all(stream, 100, 0.05, 4.5);
    CHECK(rep.changepoints.empty());
    CHECK(rep.segments.empty());
    CHECK(rep.warnings.empty());
}

TEST_CASE("each new segment starts at the previous detection time") {
    RealMatrix a = location_block(0.0, 1.0, 512);
    RealMatrix b = location_block(1.0, 2.0, 9512);
    RealMatrix stream(1, 1200);
    stream << a, b;
    ChangepointReport rep = detect_all(stream, 100, 0.05, 4.5, GridSpec{}, true);
    REQUIRE(rep.changepoints.size() >= 1);
    CHECK(rep.segments[0].start == 1);
    REQUIRE(rep.segments.size() >= rep.changepoints.size());
    for (std::size_t k = 0; k < rep.changepoints.size(); ++k) {
        CHECK(rep.segments[k].end == rep.changepoints[k]);
        if (k + 1 < rep.segments.size()) CHECK(rep.segments[k + 1].start == rep.changepoints[k]);
        CHECK(rep.changepoints[k] > rep.segments[k].start + 100);
    }
    for (std::size_t k = 1; k < rep.changepoints.size(); ++k)
        CHECK(rep.changepoints[k] > rep.changepoints[k - 1]);

    // Trace times are absolute: the first monitored window of a segment
    // ends w - 1 steps after its start.
    for (const SegmentInfo& seg : rep.segments) {
        if (seg.trace.empty()) continue;
        CHECK(seg.trace.front().t == seg.start + seg.params.w - 1);
        CHECK(seg.trace.back().t <= seg.end);
    }
}

TEST_CASE("reports are reproducible bit for bit") {
    RealMatrix a = location_block(0.0, 1.0, 600);
    RealMatrix b = location_block(1.0, 2.0, 9600);
    RealMatrix stream(1, 1200);
    stream << a, b;
    ChangepointReport first = detect_all(stream, 100, 0.05, 4.5);
    ChangepointReport second = detect_all(stream, 100, 0.05, 4.5);
    CHECK(first.changepoints == second.changepoints);
    REQUIRE(first.segments.size() == second.segments.size());
    for (std::size_t k = 0; k < first.segments.size(); ++k) {
        CHECK(first.segments[k].start == second.segments[k].start);
        CHECK(first.segments[k].end == second.segments[k].end);
        CHECK(first.segments[k].params.w == second.segments[k].params.w);
        CHECK(first.segments[k].params.d == second.segments[k].params.d);
        CHECK(first.segments[k].params.r == second.segments[k].params.r);
    }
}

TEST_CASE("selection failure on a segment is a warning, not a crash") {
    RealMatrix stream = RealMatrix::Zero(1, 300);
    ChangepointReport rep = detect_all(stream, 100, 0.05, 4.5);
    CHECK(rep.changepoints.empty());
    REQUIRE(rep.warnings.size() == 1);
    CHECK(rep.warnings[0].find("segment starting at t=1") != std::string::npos);
}

TEST_CASE("multi-changepoint detection is invariant to the stream's scale") {
    RealMatrix a = location_block(0.0, 1.0, 321);
    RealMatrix b = location_block(1.0, 2.0, 9321);
    RealMatrix stream(1, 1200);
    stream << a, b;
    ChangepointReport base = detect_all(stream, 100, 0.05, 4.5);
    for (double c : {0.01, 1000.0}) {
        ChangepointReport scaled = detect_all(RealMatrix(c * stream), 100, 0.05, 4.5);
        CHECK(scaled.changepoints == base.changepoints);
    }
}
