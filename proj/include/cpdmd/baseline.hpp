#pragma once

#include "cpdmd/linalg.hpp"

namespace cpdmd {

struct EwmaBaselineParams {
    Index T0 = 100;
    double lambda = 0.05;
    double L = 4.5;
};

struct BaselineResult {
    bool detected = false;
    Index t_detect = 0;
};

// Classical EWMA control chart on the raw univariate stream: mu and sigma
// are the sample mean/SD of the burn-in prefix, Z_0 = mu, and an alarm
// fires at the first t > T0 with Z_t strictly outside mu +- L sigma_{Z_t}.
BaselineResult ewma_detect(const RealVector& stream, const EwmaBaselineParams& params);

// The control statistic of ewma_detect without the stopping rule:
// entry t-1 holds Z_t for t = 1..T.
RealVector ewma_statistics(const RealVector& stream, const EwmaBaselineParams& params);

}  // namespace cpdmd
