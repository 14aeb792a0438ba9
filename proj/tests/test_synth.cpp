#include <cmath>
#include <set>

#include "cpdmd/synth.hpp"
#include "doctest.h"

using namespace cpdmd;

TEST_CASE("a noiseless sine hits its zeros") {
    ChangeScenario sc;
    sc.pre.omegas = {6.0 * 3.14159265358979323846 / 75.0};
    sc.pre.alphas = {1.0};
    sc.post = sc.pre;
    sc.tau = 1;
    sc.T = 100;
    RealMatrix x = generate(sc, 0);
    // omega * 25 = 2 pi, one full period
    CHECK(std::abs(x(0, 24)) <= 1e-12);
    CHECK(std::abs(x(0, 49)) <= 1e-12);
}

TEST_CASE("a pure trend reproduces the time index") {
    ChangeScenario sc;
    sc.pre.beta = 1.0;
    sc.post = sc.pre;
    sc.tau = 1;
    sc.T = 50;
    RealMatrix x = generate(sc, 3);
    for (Index t = 1; t <= 50; ++t) CHECK(x(0, t - 1) == static_cast<double>(t));
}

TEST_CASE("post-change samples of the mean scenario average to the new level") {
    ChangeScenario sc = find_scenario("mean/3");
    double sum = 0.0;
    Index n = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        RealMatrix x = generate(sc, seed);
        for (Index t = 300; t <= 599; ++t) {
            sum += x(0, t - 1);
            ++n;
        }
    }
    const double mean = sum / static_cast<double>(n);
    CHECK(mean > 2.9);
    CHECK(mean < 3.1);
}

TEST_CASE("unit-variance noise is calibrated") {
    ChangeScenario sc;
    sc.pre.sigma = 1.0;
    sc.post = sc.pre;
    sc.tau = 1;
    sc.T = 100000;
    RealMatrix x = generate(sc, 11);
    const double mean = x.row(0).mean();
    double ss = 0.0;
    for (Index i = 0; i < sc.T; ++i) ss += (x(0, i) - mean) * (x(0, i) - mean);
    const double var = ss / static_cast<double>(sc.T);
    CHECK(var >= 0.98);
    CHECK(var <= 1.02);
}

TEST_CASE("generation is deterministic per seed and varies across seeds") {
    ChangeScenario sc = find_scenario("variance/0.3");
    RealMatrix a = generate(sc, 5);
    RealMatrix b = generate(sc, 5);
    RealMatrix c = generate(sc, 6);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a - c).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("the pre parameters stop exactly at the changepoint") {
    ChangeScenario sc;
    sc.pre.gamma = 0.0;
    sc.post.gamma = 10.0;
    sc.tau = 5;
    sc.T = 8;
    RealMatrix x = generate(sc, 0);
    for (Index t = 1; t < 5; ++t) CHECK(x(0, t - 1) == 0.0);
    for (Index t = 5; t <= 8; ++t) CHECK(x(0, t - 1) == 10.0);
}

TEST_CASE("the catalog lists every change type at the documented sizes") {
    std::vector<ChangeScenario> cat = scenario_catalog();
    CHECK(cat.size() == 28);

    std::set<std::string> names;
    for (const ChangeScenario& sc : cat) names.insert(sc.name);
    CHECK(names.size() == 28);
    CHECK(names.count("variance/0.3") == 1);
    CHECK(names.count("double/(9π/75,4π/75)") == 1);
    CHECK(names.count("null/trend") == 1);

    int changes = 0;
    for (const ChangeScenario& sc : cat) {
        if (sc.name.rfind("null/", 0) == 0) {
            CHECK(sc.tau == 1);
            CHECK(sc.pre.gamma == sc.post.gamma);
            CHECK(sc.pre.sigma == sc.post.sigma);
            CHECK(sc.pre.omegas == sc.post.omegas);
            continue;
        }
        ++changes;
        CHECK(sc.tau == 300);
        CHECK(sc.T == 600);
    }
    CHECK(changes == 21);
}

TEST_CASE("the variance scenario changes only the noise level") {
    ChangeScenario sc = find_scenario("variance/0.3");
    CHECK(sc.pre.sigma == doctest::Approx(0.1));
    CHECK(sc.post.sigma == doctest::Approx(0.3));
    CHECK(sc.pre.omegas == sc.post.omegas);
    CHECK(sc.pre.gamma == sc.post.gamma);
}

TEST_CASE("null variants take a configurable length") {
    ChangeScenario sc = find_scenario("null/mean", 5000);
    CHECK(sc.T == 5000);
    CHECK(sc.tau == 1);
}

TEST_CASE("unknown scenario names are rejected") {
    CHECK_THROWS_AS(find_scenario("nonsense/99"), UnknownScenario);
}

TEST_CASE("scenario validation rejects an out-of-range changepoint") {
    ChangeScenario sc;
    sc.tau = 0;
    sc.T = 10;
    CHECK_THROWS_AS(generate(sc, 0), Error);
    sc.tau = 11;
    CHECK_THROWS_AS(generate(sc, 0), Error);
}

TEST_CASE("the noise sequence does not depend on the changepoint position") {
    ChangeScenario early;
    early.pre.sigma = 1.0;
    early.post.sigma = 1.0;
    early.post.gamma = 2.0;
    early.tau = 3;
    early.T = 50;
    ChangeScenario late = early;
    late.tau = 40;
    RealMatrix a = generate(early, 9);
    RealMatrix b = generate(late, 9);
    // Both streams share the same noise; they differ only by the offset.
    for (Index t = 1; t <= 50; ++t) {
        const double offset_a = t >= 3 ? 2.0 : 0.0;
        const double offset_b = t >= 40 ? 2.0 : 0.0;
        CHECK(a(0, t - 1) - offset_a == doctest::Approx(b(0, t - 1) - offset_b).epsilon(1e-12));
    }
}
