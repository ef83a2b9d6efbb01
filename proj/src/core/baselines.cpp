#include "baselines.hpp"

#include <cmath>

#include "error.hpp"

namespace radtrim {

namespace {

constexpr double kCoincident = 1e-12;

TrimWeights all_ones(std::size_t n) {
    TrimWeights w;
    w.w.assign(n, 1.0);
    w.kept = n;
    w.total = static_cast<double>(n);
    return w;
}

}  // namespace

TrimmedFit sample_mean_and_pcs(const WeightedSample& sample, std::size_t K) {
    if (sample.n() < 2) throw_invalid("principal components need n >= 2");
    return trimmed_cov_pcs(sample, all_ones(sample.n()), K);
}

MedianResult spatial_median(const WeightedSample& sample, double tol,
                            std::size_t max_iter) {
    if (!(tol > 0.0)) throw_invalid("tolerance must be positive");
    const Eigen::Index n = static_cast<Eigen::Index>(sample.n());
    const Eigen::Index p = static_cast<Eigen::Index>(sample.p());

    MedianResult res;
    res.median = sample.values().colwise().mean().transpose();

    Eigen::VectorXd dev(p), pull(p), next(p);
    for (std::size_t it = 0; it < max_iter; ++it) {
        pull.setZero();
        next.setZero();
        double inv_sum = 0.0;
        std::size_t coincident = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            dev = sample.values().row(i).transpose() - res.median;
            const double d = sample.norm(dev);
            if (d < kCoincident) {
                ++coincident;
                continue;
            }
            pull += dev / d;
            next += sample.values().row(i).transpose() / d;
            inv_sum += 1.0 / d;
        }
        if (coincident > 0) {
            // Subgradient check at a data point: stationary when the unit
            // pulls of the other points cannot overcome the multiplicity.
            if (sample.norm(pull) <= static_cast<double>(coincident)) {
                res.converged = true;
                res.final_step = 0.0;
                return res;
            }
        }
        if (inv_sum == 0.0) {  // every observation coincides with m
            res.converged = true;
            res.final_step = 0.0;
            return res;
        }
        next /= inv_sum;
        res.final_step = sample.norm(next - res.median);
        res.median = next;
        ++res.iterations;

        double objective = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            objective += sample.norm(sample.values().row(i).transpose() - res.median);
        res.objective_trace.push_back(objective);

        if (res.final_step <= tol * (1.0 + sample.norm(res.median))) {
            res.converged = true;
            return res;
        }
    }
    res.converged = false;
    return res;
}

TrimmedFit spherical_pcs_at(const WeightedSample& sample,
                            const Eigen::VectorXd& center, std::size_t K) {
    if (sample.n() < 2) throw_invalid("principal components need n >= 2");
    if (center.size() != static_cast<Eigen::Index>(sample.p()))
        throw_invalid("center length must match coordinate count");
    const Eigen::Index n = static_cast<Eigen::Index>(sample.n());
    const Eigen::Index p = static_cast<Eigen::Index>(sample.p());

    std::vector<Eigen::Index> keep;
    keep.reserve(static_cast<std::size_t>(n));
    std::vector<double> dist(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::VectorXd dev = sample.values().row(i).transpose() - center;
        const double d = sample.norm(dev);
        if (d < kCoincident) continue;
        dist[static_cast<std::size_t>(i)] = d;
        keep.push_back(i);
    }
    if (keep.empty()) throw_degenerate("every observation coincides with the center");
    const Eigen::Index m = static_cast<Eigen::Index>(keep.size());

    // Unit deviations, pre-scaled by 1/sqrt(m); gram_pcs then yields the
    // eigenpairs of their covariance about the origin.
    const double root_m = std::sqrt(static_cast<double>(m));
    Eigen::MatrixXd rows(m, p);
    for (Eigen::Index r = 0; r < m; ++r) {
        const Eigen::Index i = keep[static_cast<std::size_t>(r)];
        rows.row(r) = (sample.values().row(i) - center.transpose()) /
                      (dist[static_cast<std::size_t>(i)] * root_m);
    }

    GramPcs pcs = gram_pcs(rows, sample.quad_weights(), K);
    const Eigen::Index kcount = pcs.eigenvalues.size();

    TrimmedFit fit;
    fit.weights = all_ones(sample.n());
    fit.mean = center;
    fit.truncated = pcs.truncated;
    fit.eigenvalues = std::move(pcs.eigenvalues);
    fit.pc_values = std::move(pcs.values);
    fit.repeated = std::move(pcs.repeated);
    fit.pc_coeffs.setZero(kcount, n);
    for (Eigen::Index k = 0; k < kcount; ++k)
        for (Eigen::Index r = 0; r < m; ++r) {
            const Eigen::Index i = keep[static_cast<std::size_t>(r)];
            fit.pc_coeffs(k, i) =
                pcs.coeffs(k, r) / (dist[static_cast<std::size_t>(i)] * root_m);
        }
    return fit;
}

TrimmedFit spherical_pcs(const WeightedSample& sample, std::size_t K) {
    const MedianResult med = spatial_median(sample);
    return spherical_pcs_at(sample, med.median, K);
}

}  // namespace radtrim
