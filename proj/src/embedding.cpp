#include "cpdmd/embedding.hpp"

namespace cpdmd {

WindowedBatch make_window(const RealMatrix& history, Index t, Index w) {
    if (w < 1) throw InsufficientHistory("make_window: window length must be >= 1");
    if (t < w || t > history.cols())
        throw InsufficientHistory("make_window: need observations 1.." + std::to_string(t) +
                                  " with t >= w = " + std::to_string(w));
    WindowedBatch b;
    b.p = history.rows();
    b.w = w;
    b.data = history.middleCols(t - w, w);
    return b;
}

HankelBatch hankelize(const WindowedBatch& X, Index d) {
    if (d < 1 || d > X.w) throw OrderOutOfRange("hankelize: need 1 <= d <= w");
    const Index m = X.w - d + 1;
    HankelBatch h;
    h.p = X.p;
    h.w = X.w;
    h.d = d;
    h.data.resize(X.p * d, m);
    for (Index c = 0; c < X.p; ++c)
        for (Index i = 0; i < d; ++i)
            h.data.row(c * d + i) = X.data.row(c).segment(i, m);
    return h;
}

WindowedBatch unroll(const HankelBatch& H) {
    const Index m = H.w - H.d + 1;
    if (H.p < 1 || H.d < 1 || H.d > H.w || H.data.rows() != H.p * H.d || H.data.cols() != m)
        throw ShapeMismatch("unroll: data shape inconsistent with (p,w,d)");
    WindowedBatch b;
    b.p = H.p;
    b.w = H.w;
    b.data.resize(H.p, H.w);
    for (Index c = 0; c < H.p; ++c) {
        b.data.row(c).head(m) = H.data.row(c * H.d);
        if (H.d > 1)
            b.data.row(c).tail(H.d - 1) = H.data.col(m - 1).segment(c * H.d + 1, H.d - 1).transpose();
    }
    return b;
}

}  // namespace cpdmd
