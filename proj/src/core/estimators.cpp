#include "estimators.hpp"

#include <cmath>

#include "error.hpp"
#include "util.hpp"

namespace radtrim {

namespace {

void check_weights(const WeightedSample& sample, const TrimWeights& w) {
    if (w.w.size() != sample.n()) throw_invalid("weight count must match sample size");
    if (w.kept == 0 || !(w.total > 0.0)) throw_degenerate("all weights are zero");
}

}  // namespace

Eigen::VectorXd trimmed_mean(const WeightedSample& sample, const TrimWeights& w) {
    check_weights(sample, w);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sample.p()));
    for (std::size_t i = 0; i < sample.n(); ++i) {
        if (w.w[i] == 0.0) continue;  // skipping exactly removes trimmed rows
        acc += w.w[i] * sample.values().row(static_cast<Eigen::Index>(i)).transpose();
    }
    return acc / w.total;
}

GramPcs gram_pcs(const Eigen::MatrixXd& rows, const Eigen::VectorXd& quad_weights,
                 std::size_t K) {
    if (K == 0) throw_invalid("component count must be positive");
    const Eigen::Index m = rows.rows();
    const Eigen::Index p = rows.cols();
    const GramMatrix g = gram_matrix(WeightedSample(rows, quad_weights));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.inner);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::internal, "eigensolver failed");
    const Eigen::VectorXd& evals = es.eigenvalues();  // ascending
    const double top = evals[m - 1];
    const double floor = 1e-12 * std::max(top, 0.0);

    std::vector<Eigen::Index> kept_idx;  // descending eigenvalue order
    for (Eigen::Index r = m - 1; r >= 0 && kept_idx.size() < K; --r) {
        if (evals[r] <= floor) break;
        kept_idx.push_back(r);
    }
    const std::size_t kcount = kept_idx.size();

    GramPcs out;
    out.truncated = kcount < K;
    out.eigenvalues.resize(static_cast<Eigen::Index>(kcount));
    out.coeffs.resize(static_cast<Eigen::Index>(kcount), m);
    out.values.resize(static_cast<Eigen::Index>(kcount), p);
    out.repeated.assign(kcount, 0);

    for (std::size_t k = 0; k < kcount; ++k) {
        const double l = evals[kept_idx[k]];
        const double inv_root = 1.0 / std::sqrt(l);
        const Eigen::VectorXd c = es.eigenvectors().col(kept_idx[k]);
        Eigen::RowVectorXd phi = inv_root * (c.transpose() * rows);
        // Sign rule: largest-magnitude coordinate positive, first index wins ties.
        Eigen::Index arg = 0;
        for (Eigen::Index j = 1; j < p; ++j)
            if (std::abs(phi[j]) > std::abs(phi[arg])) arg = j;
        const double s = (phi[arg] < 0.0) ? -1.0 : 1.0;
        out.eigenvalues[static_cast<Eigen::Index>(k)] = l;
        out.values.row(static_cast<Eigen::Index>(k)) = s * phi;
        out.coeffs.row(static_cast<Eigen::Index>(k)) = (s * inv_root) * c.transpose();
    }
    for (std::size_t k = 0; k + 1 < kcount; ++k) {
        const double gap = out.eigenvalues[static_cast<Eigen::Index>(k)] -
                           out.eigenvalues[static_cast<Eigen::Index>(k + 1)];
        if (gap < 1e-8 * std::max(top, 1e-300)) {
            out.repeated[k] = 1;
            out.repeated[k + 1] = 1;
        }
    }
    return out;
}

TrimmedFit trimmed_cov_pcs(const WeightedSample& sample, const TrimWeights& w,
                           std::size_t K) {
    check_weights(sample, w);
    if (K == 0) throw_invalid("component count must be positive");
    const std::size_t requested = K;
    if (K > w.kept - 1 && w.kept > 1)
        K = w.kept - 1;  // at most kept-1 non-null directions about the mean
    const Eigen::Index p = static_cast<Eigen::Index>(sample.p());
    const Eigen::Index n = static_cast<Eigen::Index>(sample.n());

    TrimmedFit fit;
    fit.weights = w;
    fit.mean = trimmed_mean(sample, w);

    // Compact to positive-weight rows so a zero-weight observation leaves no
    // floating-point trace at all.
    std::vector<Eigen::Index> keep;
    keep.reserve(w.kept);
    for (Eigen::Index i = 0; i < n; ++i)
        if (w.w[static_cast<std::size_t>(i)] > 0.0) keep.push_back(i);
    const Eigen::Index m = static_cast<Eigen::Index>(keep.size());

    Eigen::MatrixXd rooted(m, p);  // rows sqrt(w_i/total) * (X_i - mean)
    Eigen::VectorXd root_rel(m);
    for (Eigen::Index r = 0; r < m; ++r) {
        const double rel = w.w[static_cast<std::size_t>(keep[r])] / w.total;
        root_rel[r] = std::sqrt(rel);
        rooted.row(r) =
            root_rel[r] *
            (sample.values().row(keep[r]) - fit.mean.transpose());
    }

    GramPcs pcs = gram_pcs(rooted, sample.quad_weights(), K);
    const std::size_t kcount = pcs.eigenvalues.size();
    fit.truncated = pcs.truncated || kcount < requested;
    fit.eigenvalues = std::move(pcs.eigenvalues);
    fit.pc_values = std::move(pcs.values);
    fit.repeated = std::move(pcs.repeated);
    fit.pc_coeffs.setZero(static_cast<Eigen::Index>(kcount), n);
    for (std::size_t k = 0; k < kcount; ++k)
        for (Eigen::Index r = 0; r < m; ++r)
            fit.pc_coeffs(static_cast<Eigen::Index>(k), keep[r]) =
                pcs.coeffs(static_cast<Eigen::Index>(k), r) * root_rel[r];
    return fit;
}

Eigen::MatrixXd scores(const WeightedSample& sample, const TrimmedFit& fit) {
    const Eigen::Index n = static_cast<Eigen::Index>(sample.n());
    const Eigen::Index kcount = fit.eigenvalues.size();
    if (fit.mean.size() != static_cast<Eigen::Index>(sample.p()))
        throw_invalid("fit does not match the sample's coordinate count");
    Eigen::MatrixXd s(n, kcount);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::VectorXd dev =
            sample.values().row(i).transpose() - fit.mean;
        for (Eigen::Index k = 0; k < kcount; ++k) {
            s(i, k) = sample.ip(dev, fit.pc_values.row(k).transpose()) /
                      std::sqrt(fit.eigenvalues[k]);
        }
    }
    return s;
}

Eigen::VectorXd complement_mean(const WeightedSample& sample, const TrimWeights& w) {
    if (w.w.size() != sample.n()) throw_invalid("weight count must match sample size");
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sample.p()));
    std::size_t count = 0;
    for (std::size_t i = 0; i < sample.n(); ++i) {
        if (w.w[i] != 0.0) continue;
        acc += sample.values().row(static_cast<Eigen::Index>(i)).transpose();
        ++count;
    }
    if (count == 0) throw_invalid("no observation was trimmed away");
    return acc / static_cast<double>(count);
}

BreakdownPoint breakdown_point(std::size_t n, double alpha, double beta) {
    if (n < 1) throw_invalid("breakdown point needs n >= 1");
    if (!(alpha > 0.0 && alpha <= 0.5))
        throw_invalid("breakdown formula needs 0 < alpha <= 0.5");
    if (!(beta >= 0.0 && beta <= 0.5))
        throw_invalid("breakdown formula needs 0 <= beta <= 0.5");
    const long radius_order = snap_ceil(alpha * static_cast<double>(n));
    if (radius_order < 3)
        throw_invalid("breakdown formula needs ceil(alpha n) >= 3");
    const long trim_bound = snap_floor(beta * static_cast<double>(n)) + 2;
    BreakdownPoint bp;
    bp.numerator = std::min(radius_order, trim_bound);
    bp.denominator = static_cast<long>(n);
    return bp;
}

}  // namespace radtrim
