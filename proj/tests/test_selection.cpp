#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "cpdmd/selection.hpp"
#include "cpdmd/synth.hpp"
#include "doctest.h"

using namespace cpdmd;

namespace {

constexpr double kPi = 3.14159265358979323846;

RealMatrix sine_burnin(Index T0) {
    RealMatrix out(1, T0);
    for (Index t = 1; t <= T0; ++t) out(0, t - 1) = std::sin(2.0 * kPi / 25.0 * static_cast<double>(t));
    return out;
}

bool contains(const std::vector<Candidate>& grid, Index w, Index d, Index r) {
    return std::any_of(grid.begin(), grid.end(), [&](const Candidate& c) {
        return c.w == w && c.d == d && c.r == r;
    });
}

}  // namespace

TEST_CASE("default grid for a univariate burn-in of 100") {
    std::vector<Candidate> grid = generate_grid(100, 1);
    CHECK(contains(grid, 40, 5, 2));
    CHECK(contains(grid, 80, 40, 2));
    for (const Candidate& c : grid) {
        CHECK(c.w <= 100);
        CHECK(c.d <= c.w);
        CHECK(c.r <= std::min(c.d, c.w - c.d + 1));
    }
    CHECK(std::is_sorted(grid.begin(), grid.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.w, a.d, a.r) < std::tie(b.w, b.d, b.r);
    }));
}

TEST_CASE("fractions are rounded half-up and filtered") {
    GridSpec spec;
    spec.window_fractions = {0.5};
    spec.order_fractions = {0.2};
    spec.rank_multiplier = 2;
    std::vector<Candidate> grid = generate_grid(10, 1, spec);
    REQUIRE(grid.size() == 1);
    CHECK(grid[0].w == 5);
    CHECK(grid[0].d == 2);
    CHECK(grid[0].r == 2);
}

TEST_CASE("a grid whose ranks all violate the constraints is empty") {
    GridSpec spec;
    spec.window_fractions = {0.5};
    spec.order_fractions = {0.05};
    spec.rank_multiplier = 2;
    CHECK_THROWS_AS(generate_grid(10, 1, spec), EmptyGrid);
}

TEST_CASE("grid generation needs a usable burn-in length") {
    CHECK_THROWS_AS(generate_grid(9, 1), Error);
}

TEST_CASE("selection on a noiseless sine finds a near-exact low-rank model") {
    RealMatrix burnin = sine_burnin(100);
    SelectionResult sel = select_hyperparams(burnin);
    CHECK(sel.best.r == 2);
    double best_score = std::numeric_limits<double>::infinity();
    for (const CandidateScore& s : sel.scores) best_score = std::min(best_score, s.avg_error);
    CHECK(best_score <= 1e-6);
    for (const CandidateScore& s : sel.scores) {
        if (s.params.w == sel.best.w && s.params.d == sel.best.d && s.params.r == sel.best.r)
            CHECK(s.avg_error == best_score);
        CHECK(s.avg_error >= best_score);
    }
}

TEST_CASE("a single-candidate grid is returned as-is") {
    GridSpec spec;
    spec.window_fractions = {0.5};
    spec.order_fractions = {0.2};
    spec.rank_multiplier = 2;
    RealMatrix burnin = sine_burnin(10);
    SelectionResult sel = select_hyperparams(burnin, spec);
    CHECK(sel.best.w == 5);
    CHECK(sel.best.d == 2);
    CHECK(sel.best.r == 2);
    CHECK(sel.scores.size() == 1);
}

TEST_CASE("equal averages break ties toward the lexicographically smaller candidate") {
    GridSpec spec;
    spec.window_fractions = {0.5};
    spec.order_fractions = {0.2};
    spec.rank_multiplier = 1;
    RealMatrix burnin = RealMatrix::Constant(1, 10, 7.0);
    std::vector<Candidate> grid = generate_grid(10, 1, spec);
    REQUIRE(grid.size() == 2);  // (5,2,1) and (5,2,2)
    SelectionResult sel = select_hyperparams(burnin, spec);
    CHECK(sel.scores[0].avg_error == sel.scores[1].avg_error);
    CHECK(sel.best.w == 5);
    CHECK(sel.best.d == 2);
    CHECK(sel.best.r == 1);
}

TEST_CASE("selection fails loudly when every candidate fails") {
    RealMatrix burnin = RealMatrix::Zero(1, 100);
    CHECK_THROWS_AS(select_hyperparams(burnin), AllCandidatesFailed);
}

TEST_CASE("selection is independent of worker count") {
    GaussianStream noise(17);
    RealMatrix burnin = sine_burnin(100);
    for (Index i = 0; i < 100; ++i) burnin(0, i) += 0.1 * noise.next();
    SelectionResult serial = select_hyperparams(burnin, GridSpec{}, 1);
    SelectionResult parallel = select_hyperparams(burnin, GridSpec{}, 4);
    CHECK(serial.best.w == parallel.best.w);
    CHECK(serial.best.d == parallel.best.d);
    CHECK(serial.best.r == parallel.best.r);
    REQUIRE(serial.scores.size() == parallel.scores.size());
    for (std::size_t i = 0; i < serial.scores.size(); ++i)
        CHECK(serial.scores[i].avg_error == parallel.scores[i].avg_error);
}

TEST_CASE("candidate averages cover window ends w through T0") {
    GridSpec spec;
    spec.window_fractions = {0.5};
    spec.order_fractions = {0.2};
    spec.rank_multiplier = 2;
    RealMatrix burnin = sine_burnin(10);
    SelectionResult sel = select_hyperparams(burnin, spec);
    ErrorSeries series = error_series(burnin, 5, 2, 2);
    REQUIRE(series.epsilon.size() == 6);
    double avg = 0.0;
    for (double e : series.epsilon) avg += e;
    avg /= 6.0;
    CHECK(sel.scores[0].avg_error == doctest::Approx(avg).epsilon(1e-12));
}
