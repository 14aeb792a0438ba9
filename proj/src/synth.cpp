#include "cpdmd/synth.hpp"

#include <cmath>
#include <random>

#include "cpdmd/errors.hpp"

namespace cpdmd {

namespace {

constexpr double kPi = 3.14159265358979323846;

double to_unit(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;  // [0, 1)
}

double deterministic_part(const SignalParams& sp, double t) {
    double v = sp.beta * t + sp.gamma;
    for (std::size_t k = 0; k < sp.omegas.size(); ++k) v += sp.alphas[k] * std::sin(sp.omegas[k] * t);
    return v;
}

SignalParams sine(std::vector<double> omegas, std::vector<double> alphas, double beta,
                  double gamma, double sigma) {
    return SignalParams{std::move(omegas), std::move(alphas), beta, gamma, sigma};
}

}  // namespace

double GaussianStream::next() {
    const double u1 = to_unit(rng_());
    const double u2 = to_unit(rng_());
    return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * kPi * u2);
}

RealMatrix generate(const ChangeScenario& scenario, std::uint64_t seed) {
    if (scenario.tau < 1 || scenario.tau > scenario.T)
        throw Error("generate: changepoint outside [1, T]");
    if (scenario.pre.omegas.size() != scenario.pre.alphas.size() ||
        scenario.post.omegas.size() != scenario.post.alphas.size())
        throw Error("generate: omegas/alphas length mismatch");

    GaussianStream noise(seed);
    RealMatrix x(1, scenario.T);
    for (Index t = 1; t <= scenario.T; ++t) {
        const SignalParams& sp = (t < scenario.tau) ? scenario.pre : scenario.post;
        const double z = noise.next();  // drawn unconditionally; see header
        x(0, t - 1) = deterministic_part(sp, static_cast<double>(t)) + sp.sigma * z;
    }
    return x;
}

std::vector<ChangeScenario> scenario_catalog(Index null_length) {
    const double u = kPi / 75.0;  // frequency unit shared by the sine scenarios
    std::vector<ChangeScenario> cat;

    const SignalParams periodicity_pre = sine({6 * u}, {1.0}, 0.0, 0.0, 0.1);
    for (auto [k, tag] : {std::pair{5, "5π/75"}, {7, "7π/75"}, {8, "8π/75"}})
        cat.push_back({std::string("periodicity/") + tag, periodicity_pre,
                       sine({k * u}, {1.0}, 0.0, 0.0, 0.1), 300, 600});

    const SignalParams location_pre = sine({4 * u}, {1.0}, 0.0, 0.0, 0.1);
    for (auto [g, tag] : {std::pair{-0.5, "-0.5"}, {0.5, "0.5"}, {1.0, "1"}})
        cat.push_back({std::string("location/") + tag, location_pre,
                       sine({4 * u}, {1.0}, 0.0, g, 0.1), 300, 600});

    const SignalParams amplitude_pre = sine({13 * kPi / 150.0}, {1.0}, 0.0, 0.0, 0.1);
    for (auto [a, tag] : {std::pair{0.5, "0.5"}, {2.0, "2"}, {3.0, "3"}})
        cat.push_back({std::string("amplitude/") + tag, amplitude_pre,
                       sine({13 * kPi / 150.0}, {a}, 0.0, 0.0, 0.1), 300, 600});

    const SignalParams trend_pre = sine({10 * u}, {1.0}, 1.0 / 30.0, 0.0, 0.1);
    for (auto [b, tag] : {std::pair{-1.0 / 30.0, "-1/30"}, {0.0, "0"}, {2.0 / 30.0, "2/30"}})
        cat.push_back({std::string("trend/") + tag, trend_pre,
                       sine({10 * u}, {1.0}, b, 10.0, 0.1), 300, 600});

    const SignalParams mean_pre = sine({}, {}, 0.0, 0.0, 1.0);
    for (auto [g, tag] : {std::pair{-2.0, "-2"}, {3.0, "3"}, {4.0, "4"}})
        cat.push_back({std::string("mean/") + tag, mean_pre, sine({}, {}, 0.0, g, 1.0), 300, 600});

    const SignalParams variance_pre = sine({}, {}, 0.0, 0.0, 0.1);
    for (auto [s, tag] : {std::pair{0.2, "0.2"}, {0.3, "0.3"}, {0.4, "0.4"}})
        cat.push_back({std::string("variance/") + tag, variance_pre,
                       sine({}, {}, 0.0, 0.0, s), 300, 600});

    const SignalParams double_pre = sine({9 * u, 6 * u}, {1.0, 1.0}, 0.0, 0.0, 0.1);
    for (auto [pair, tag] : {std::pair{std::pair{3, 5}, "(3π/75,5π/75)"},
                             {{9, 3}, "(9π/75,3π/75)"},
                             {{9, 4}, "(9π/75,4π/75)"}})
        cat.push_back({std::string("double/") + tag, double_pre,
                       sine({pair.first * u, pair.second * u}, {1.0, 1.0}, 0.0, 0.0, 0.1), 300,
                       600});

    for (auto [type, pre] : {std::pair<const char*, SignalParams>{"periodicity", periodicity_pre},
                             {"location", location_pre},
                             {"amplitude", amplitude_pre},
                             {"trend", trend_pre},
                             {"mean", mean_pre},
                             {"variance", variance_pre},
                             {"double", double_pre}})
        cat.push_back({std::string("null/") + type, pre, pre, 1, null_length});

    return cat;
}

ChangeScenario find_scenario(const std::string& name, Index null_length) {
    for (auto& sc : scenario_catalog(null_length))
        if (sc.name == name) return sc;
    throw UnknownScenario("unknown scenario: " + name);
}

}  // namespace cpdmd
