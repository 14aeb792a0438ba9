#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cpdmd/linalg.hpp"

namespace cpdmd {

// Seeded standard-normal source. Box-Muller over raw 64-bit words with a
// fixed cost of two words per draw, so streams are bit-identical across
// standard libraries.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}
    double next();

  private:
    std::mt19937_64 rng_;
};

// x_t = sum_k alpha_k sin(omega_k t) + beta t + gamma + N(0, sigma^2)
struct SignalParams {
    std::vector<double> omegas;
    std::vector<double> alphas;
    double beta = 0.0;
    double gamma = 0.0;
    double sigma = 0.0;
};

struct ChangeScenario {
    std::string name;
    SignalParams pre;
    SignalParams post;  // active from t = tau on
    Index tau = 1;
    Index T = 600;
};

// Univariate stream of length T (returned as a 1 x T matrix), t = 1..T.
// The noise draw happens at every step regardless of sigma, so the noise
// sequence is invariant to where the changepoint sits.
RealMatrix generate(const ChangeScenario& scenario, std::uint64_t seed);

// The 21 single-change scenarios (7 change types x 3 sizes, change at
// tau = 300, T = 600) plus one no-change variant per type, named
// "null/<type>", with tau = 1 and the given length.
std::vector<ChangeScenario> scenario_catalog(Index null_length = 600);

// Catalog lookup by exact name.
ChangeScenario find_scenario(const std::string& name, Index null_length = 600);

}  // namespace cpdmd
