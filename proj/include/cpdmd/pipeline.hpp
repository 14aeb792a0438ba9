#pragma once

#include <string>
#include <vector>

#include "cpdmd/selection.hpp"

namespace cpdmd {

struct SegmentInfo {
    Index start = 0;  // absolute time of the segment's first sample
    Index end = 0;    // absolute time of its last processed sample
    Candidate params;
    std::vector<TraceRow> trace;  // absolute times; kept only on request
};

struct ChangepointReport {
    std::vector<Index> changepoints;  // absolute detection times, ascending
    std::vector<SegmentInfo> segments;
    std::vector<std::string> warnings;
};

// Alternate hyperparameter selection and single-changepoint detection:
// select on the first T0 samples of the remaining stream, scan the rest,
// and restart at each detection time (the detection sample opens the next
// segment). Stops when fewer than T0 samples remain, when no alarm fires,
// or when selection fails on a segment (recorded as a warning).
ChangepointReport detect_all(const RealMatrix& stream, Index T0, double lambda, double L,
                             const GridSpec& spec = {}, bool keep_traces = false,
                             unsigned jobs = 1);

}  // namespace cpdmd
