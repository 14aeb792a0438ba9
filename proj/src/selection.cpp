#include "cpdmd/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <tuple>

namespace cpdmd {

namespace {

Index round_half_up(double x) { return static_cast<Index>(std::floor(x + 0.5)); }

}  // namespace

std::vector<Candidate> generate_grid(Index T0, Index p, const GridSpec& spec) {
    if (T0 < 10) throw Error("generate_grid: burn-in too short (need T0 >= 10)");

    std::vector<std::tuple<Index, Index, Index>> triplets;
    for (double fw : spec.window_fractions) {
        const Index w = std::max<Index>(1, round_half_up(fw * static_cast<double>(T0)));
        for (double fd : spec.order_fractions) {
            const Index d = std::max<Index>(1, round_half_up(fd * static_cast<double>(T0)));
            for (Index k = 1; k <= std::max<Index>(p, 2); ++k) {
                const Index r = spec.rank_multiplier * k;
                if (w > T0 || d > w) continue;
                if (r > std::min(p * d, w - d + 1)) continue;
                triplets.emplace_back(w, d, r);
            }
        }
    }
    std::sort(triplets.begin(), triplets.end());
    triplets.erase(std::unique(triplets.begin(), triplets.end()), triplets.end());
    if (triplets.empty()) throw EmptyGrid();

    std::vector<Candidate> out;
    out.reserve(triplets.size());
    for (const auto& [w, d, r] : triplets) out.push_back(Candidate{w, d, r});
    return out;
}

SelectionResult select_hyperparams(const RealMatrix& burnin, const GridSpec& spec, unsigned jobs) {
    const Index T0 = burnin.cols();
    const Index p = burnin.rows();
    const std::vector<Candidate> grid = generate_grid(T0, p, spec);

    std::vector<CandidateScore> scores(grid.size());
    auto evaluate = [&](std::size_t i) {
        const Candidate& c = grid[i];
        double avg = std::numeric_limits<double>::infinity();
        try {
            const ErrorSeries es = error_series(burnin, c.w, c.d, c.r);
            double sum = 0.0;
            for (double e : es.epsilon) sum += e;
            avg = sum / static_cast<double>(T0 - c.w + 1);
        } catch (const Error&) {
            // degenerate candidate on this burn-in; scored +inf
        }
        scores[i] = CandidateScore{c, avg};
    };

    if (jobs <= 1 || grid.size() < 2) {
        for (std::size_t i = 0; i < grid.size(); ++i) evaluate(i);
    } else {
        const unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(grid.size()));
        std::vector<std::thread> pool;
        pool.reserve(n);
        for (unsigned k = 0; k < n; ++k)
            pool.emplace_back([&, k] {
                for (std::size_t i = k; i < grid.size(); i += n) evaluate(i);
            });
        for (auto& th : pool) th.join();
    }

    std::size_t best = grid.size();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(scores[i].avg_error)) continue;
        if (best == grid.size() || scores[i].avg_error < scores[best].avg_error) best = i;
        // equal scores keep the earlier candidate: grid order is ascending lexicographic
    }
    if (best == grid.size()) throw AllCandidatesFailed();
    return SelectionResult{grid[best], std::move(scores)};
}

}  // namespace cpdmd
