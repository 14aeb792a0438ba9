#include "cpdmd/theory.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "cpdmd/detector.hpp"
#include "cpdmd/dmd.hpp"
#include "cpdmd/embedding.hpp"
#include "cpdmd/synth.hpp"

namespace cpdmd {

namespace {

RealMatrix hankel_at(const RealMatrix& stream, Index t, Index w, Index d) {
    return hankelize(make_window(stream, t, w), d).data;
}

// Thin SVD at full min-dimension; zero singular values are kept so the
// factor shapes stay rigid through the downdate/append chain.
struct FullSvd {
    RealMatrix U;
    RealVector S;
    RealMatrix V;
};

FullSvd full_svd(const RealMatrix& A) {
    Eigen::JacobiSVD<RealMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return FullSvd{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

// Closed-form E from the incremental SVD factors of the slid lagged matrix:
// the first column of X is zeroed out through a rank-one update of the
// singular-value core, the new column is appended through an augmented
// core, and the perturbation is (y_new - A x_new) times the last row of
// the resulting pseudo-inverse factors.
RealMatrix closed_form_E(const RealMatrix& X1, const RealMatrix& X2, const RealMatrix& Y2,
                         const RealMatrix& A1) {
    const FullSvd f = full_svd(X1);
    const RealVector x_old = X1.col(0);
    const RealVector x_new = X2.col(X2.cols() - 1);
    const RealVector y_new = Y2.col(Y2.cols() - 1);

    RealMatrix sacute = RealMatrix(f.S.asDiagonal());
    sacute.noalias() -= (f.U.transpose() * x_old) * f.V.row(0);
    const FullSvd fd = full_svd(sacute);
    const RealMatrix u_down = f.U * fd.U;

    RealMatrix shat(fd.S.size(), fd.S.size() + 1);
    shat.leftCols(fd.S.size()) = RealMatrix(fd.S.asDiagonal());
    shat.col(fd.S.size()) = u_down.transpose() * x_new;
    const FullSvd fa = full_svd(shat);
    const RealMatrix u_new = u_down * fa.U;
    // The last row of the slid V factor is the appended-coordinate row of
    // the augmented core's V; the downdated block never reaches it.
    const RealVector last_row_v = fa.V.row(fa.V.rows() - 1).transpose();

    const double cutoff = (fa.S.size() > 0 ? fa.S(0) : 0.0) * sv_cutoff_factor;
    RealVector sinv = RealVector::Zero(fa.S.size());
    for (Index i = 0; i < fa.S.size(); ++i)
        if (fa.S(i) > cutoff) sinv(i) = 1.0 / fa.S(i);

    const RealVector tail = u_new * sinv.cwiseProduct(last_row_v);  // (row of pinv)^T
    return (y_new - A1 * x_new) * tail.transpose();
}

struct OperatorPair {
    RealMatrix A1;
    RealMatrix A2;
    RealMatrix E;  // A2 - A1
};

OperatorPair operator_pair(const RealMatrix& stream, Index t, Index w, Index d) {
    const RealMatrix H1 = hankel_at(stream, t, w, d);
    const RealMatrix H2 = hankel_at(stream, t + 1, w, d);
    OperatorPair out;
    out.A1 = dmd_operator_full(H1);
    out.A2 = dmd_operator_full(H2);
    out.E = out.A2 - out.A1;
    return out;
}

double cond2(const ComplexMatrix& A) {
    Eigen::JacobiSVD<ComplexMatrix> svd(A);
    const RealVector s = svd.singularValues();
    if (s.size() == 0 || s(s.size() - 1) == 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / (s(s.size() - 1));
}

double min_gap(const ComplexVector& values) {
    double gap = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < values.size(); ++j)
        for (Index k = j + 1; k < values.size(); ++k)
            gap = std::min(gap, std::abs(values(j) - values(k)));
    return gap;
}

}  // namespace

ComplexMatrix perturbation_matrix(const RealMatrix& stream, Index t, Index w, Index d) {
    const RealMatrix H1 = hankel_at(stream, t, w, d);
    const RealMatrix H2 = hankel_at(stream, t + 1, w, d);
    const RealMatrix A1 = dmd_operator_full(H1);
    const RealMatrix A2 = dmd_operator_full(H2);
    const RealMatrix direct = A2 - A1;

    const Index m = H1.cols();
    const RealMatrix closed =
        closed_form_E(H1.leftCols(m - 1), H2.leftCols(m - 1), H2.rightCols(m - 1), A1);

    const double resid = (direct - closed).norm();
    const double tol = 1e-6 * (1.0 + direct.norm());
    if (resid > tol) {
        std::ostringstream msg;
        msg << "perturbation_matrix: closed form deviates from the operator difference by "
            << resid << " (tolerance " << tol << "); the closed form is exact only when "
            << "p*d equals w-d (here p*d=" << H1.rows() << ", w-d=" << m - 1 << ")";
        throw ClosedFormMismatch(msg.str());
    }
    return direct.cast<std::complex<double>>();
}

PerturbationRecord check_bauer_fike(const RealMatrix& stream, Index t, Index w, Index d) {
    const OperatorPair ops = operator_pair(stream, t, w, d);
    const EigenPairs ea = eig_general(ops.A1);
    const double cond = cond2(ea.vectors);
    if (!(cond < 1e12)) throw NonDiagonalisable();

    const EigenPairs eb = eig_general(ops.A2);
    double drift = 0.0;
    for (Index j = 0; j < eb.values.size(); ++j) {
        double nearest = std::numeric_limits<double>::infinity();
        for (Index k = 0; k < ea.values.size(); ++k)
            nearest = std::min(nearest, std::abs(eb.values(j) - ea.values(k)));
        drift = std::max(drift, nearest);
    }

    PerturbationRecord rec;
    rec.t = t;
    rec.e_norm = norm2(ops.E);
    rec.cond_phi = cond;
    rec.eig_gap = min_gap(ea.values);
    rec.max_eig_drift = drift;
    rec.bound_ok = drift <= cond * rec.e_norm * (1.0 + 1e-8);
    return rec;
}

double eigenvector_ratio(const RealMatrix& stream, Index t, Index w, Index d) {
    const OperatorPair ops = operator_pair(stream, t, w, d);
    const double e_norm = norm2(ops.E);
    const EigenPairs ea = eig_general(ops.A1);
    const EigenPairs eb = eig_general(ops.A2);
    const double gap = min_gap(ea.values);
    const Index n = ea.values.size();

    // Greedy pairing on descending |inner product| of unit eigenvectors.
    struct Overlap {
        double value;
        Index j, k;
    };
    std::vector<Overlap> overlaps;
    overlaps.reserve(static_cast<std::size_t>(n * n));
    for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k)
            overlaps.push_back({std::abs(eb.vectors.col(j).dot(ea.vectors.col(k))), j, k});
    std::sort(overlaps.begin(), overlaps.end(),
              [](const Overlap& a, const Overlap& b) { return a.value > b.value; });

    std::vector<bool> used_j(static_cast<std::size_t>(n)), used_k(static_cast<std::size_t>(n));
    const double denom = gap == 0.0 ? std::numeric_limits<double>::infinity() : e_norm / gap;
    double worst = 0.0;
    for (const Overlap& o : overlaps) {
        if (used_j[static_cast<std::size_t>(o.j)] || used_k[static_cast<std::size_t>(o.k)])
            continue;
        used_j[static_cast<std::size_t>(o.j)] = used_k[static_cast<std::size_t>(o.k)] = true;
        const double drift = (eb.vectors.col(o.j) - ea.vectors.col(o.k)).norm();
        if (drift <= 1e-14) continue;
        worst = std::max(worst, denom == 0.0 ? std::numeric_limits<double>::infinity()
                                             : drift / denom);
    }
    return worst;
}

std::vector<ComplexityRow> complexity_bench(const std::vector<Index>& p_values,
                                            const std::vector<Index>& w_values,
                                            const std::vector<Index>& d_values,
                                            Index steps_per_config) {
    std::vector<ComplexityRow> rows;
    for (Index p : p_values)
        for (Index w : w_values)
            for (Index d : d_values) {
                if (d < 1 || d >= w) continue;
                const Index r = std::min(p * d, w - d);
                if (r < 1) continue;

                const Index T = w + steps_per_config;
                RealMatrix stream(p, T);
                for (Index i = 0; i < p; ++i) {
                    GaussianStream noise(1000 + static_cast<std::uint64_t>(i));
                    const double omega = (6.0 + static_cast<double>(i)) * 3.14159265358979323846 / 75.0;
                    for (Index t = 1; t <= T; ++t)
                        stream(i, t - 1) = std::sin(omega * static_cast<double>(t)) + 0.05 * noise.next();
                }

                const auto start = std::chrono::steady_clock::now();
                for (Index t = w; t < w + steps_per_config; ++t)
                    reconstruction_error(make_window(stream, t, w), d, r);
                const auto stop = std::chrono::steady_clock::now();
                const double secs = std::chrono::duration<double>(stop - start).count() /
                                    static_cast<double>(steps_per_config);

                rows.push_back({p, w, d, secs, theoretical_cost(p, w, d)});
            }
    return rows;
}

double rank_correlation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw Error("rank_correlation: need two equally sized samples");
    auto ranks = [](const std::vector<double>& xs) {
        const std::size_t n = xs.size();
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t i, std::size_t j) { return xs[i] < xs[j]; });
        std::vector<double> rk(n);
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
            const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // ties share the mean rank
            for (std::size_t k = i; k <= j; ++k) rk[order[k]] = avg;
            i = j + 1;
        }
        return rk;
    };
    const std::vector<double> ra = ranks(a);
    const std::vector<double> rb = ranks(b);
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += ra[i];
        mb += rb[i];
    }
    ma /= n;
    mb /= n;
    double num = 0.0, da = 0.0, db = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (ra[i] - ma) * (rb[i] - mb);
        da += (ra[i] - ma) * (ra[i] - ma);
        db += (rb[i] - mb) * (rb[i] - mb);
    }
    if (da == 0.0 || db == 0.0) throw Error("rank_correlation: degenerate ranking");
    return num / std::sqrt(da * db);
}

}  // namespace cpdmd
