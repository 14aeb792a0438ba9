#pragma once

#include "cpdmd/linalg.hpp"

namespace cpdmd {

// The last w observations of a p-dimensional stream; column k holds x_{t-w+1+k}.
struct WindowedBatch {
    Index p = 0;
    Index w = 0;
    RealMatrix data;  // p x w
};

// Stacked per-component Hankel blocks of a window, in ascending component order.
struct HankelBatch {
    Index p = 0;
    Index w = 0;
    Index d = 0;
    RealMatrix data;  // (p*d) x (w-d+1)
};

// Window ending at time t (1-based) from a p x T history matrix whose column
// k holds observation x_{k+1}.
WindowedBatch make_window(const RealMatrix& history, Index t, Index w);

// Delay-embed a window: block j has entry (i,k) = x^{(j)}_{t-w+1 + i + k}.
HankelBatch hankelize(const WindowedBatch& X, Index d);

// Invert the embedding along the causal path: per component, the first row of
// the block followed by the last d-1 entries of its last column. Exact inverse
// of hankelize for true Hankel data; defined for any (p,w,d)-shaped matrix.
WindowedBatch unroll(const HankelBatch& H);

}  // namespace cpdmd
