#include "cpdmd/baseline.hpp"

#include <cmath>

#include "cpdmd/errors.hpp"

namespace cpdmd {

namespace {

// Burn-in sample moments shared by the detector and the statistic series.
void burnin_moments(const RealVector& stream, const EwmaBaselineParams& params, double& mu,
                    double& sigma) {
    const Index T0 = params.T0;
    if (T0 < 2) throw Error("ewma_detect: burn-in too short for a sample SD");
    if (stream.size() <= T0)
        throw InsufficientHistory("ewma_detect: stream not longer than the burn-in");

    mu = stream.head(T0).mean();
    double ss = 0.0;
    for (Index i = 0; i < T0; ++i) ss += (stream(i) - mu) * (stream(i) - mu);
    sigma = std::sqrt(ss / static_cast<double>(T0 - 1));
    if (sigma == 0.0) throw DegenerateBurnIn();
}

}  // namespace

BaselineResult ewma_detect(const RealVector& stream, const EwmaBaselineParams& params) {
    const Index T = stream.size();
    const Index T0 = params.T0;
    double mu = 0.0;
    double sigma = 0.0;
    burnin_moments(stream, params, mu, sigma);

    const double lam = params.lambda;
    double z = mu;  // Z_0
    for (Index t = 1; t <= T; ++t) {
        z = (1.0 - lam) * z + lam * stream(t - 1);
        if (t <= T0) continue;
        const double spread =
            lam / (2.0 - lam) * (1.0 - std::pow(1.0 - lam, 2.0 * static_cast<double>(t)));
        const double sigma_z = sigma * std::sqrt(spread);
        if (z > mu + params.L * sigma_z || z < mu - params.L * sigma_z)
            return BaselineResult{true, t};
    }
    return BaselineResult{false, 0};
}

RealVector ewma_statistics(const RealVector& stream, const EwmaBaselineParams& params) {
    double mu = 0.0;
    double sigma = 0.0;
    burnin_moments(stream, params, mu, sigma);

    const double lam = params.lambda;
    RealVector z_series(stream.size());
    double z = mu;  // Z_0
    for (Index t = 1; t <= stream.size(); ++t) {
        z = (1.0 - lam) * z + lam * stream(t - 1);
        z_series(t - 1) = z;
    }
    return z_series;
}

}  // namespace cpdmd
