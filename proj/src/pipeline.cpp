#include "cpdmd/pipeline.hpp"

#include <sstream>

namespace cpdmd {

ChangepointReport detect_all(const RealMatrix& stream, Index T0, double lambda, double L,
                             const GridSpec& spec, bool keep_traces, unsigned jobs) {
    const Index T = stream.cols();
    ChangepointReport report;

    Index s = 1;
    while (T - s + 1 >= T0) {
        SelectionResult sel;
        try {
            sel = select_hyperparams(stream.middleCols(s - 1, T0), spec, jobs);
        } catch (const AllCandidatesFailed& e) {
            std::ostringstream msg;
            msg << "segment starting at t=" << s << ": " << e.what();
            report.warnings.push_back(msg.str());
            break;
        }

        HyperParams hp;
        hp.T0 = T0;
        hp.w = sel.best.w;
        hp.d = sel.best.d;
        hp.r = sel.best.r;
        hp.lambda = lambda;
        hp.L = L;
        const DetectionResult det = single_cp(stream.middleCols(s - 1, T - s + 1), hp, keep_traces);

        SegmentInfo seg;
        seg.start = s;
        seg.params = sel.best;
        seg.end = det.detected ? s + det.t_detect - 1 : T;
        if (keep_traces) {
            seg.trace = det.trace;
            for (TraceRow& row : seg.trace) row.t += s - 1;  // relative -> absolute
        }
        report.segments.push_back(std::move(seg));

        if (!det.detected) break;
        const Index cp = s + det.t_detect - 1;
        report.changepoints.push_back(cp);
        s = cp;  // the detection sample opens the next segment
    }
    return report;
}

}  // namespace cpdmd
