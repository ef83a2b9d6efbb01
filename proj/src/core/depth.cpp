#include "depth.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "util.hpp"

namespace radtrim {

RadiusProfile alpha_radii(const DistanceMatrix& dist, double alpha) {
    const Eigen::Index n = dist.d.rows();
    if (n < 1 || dist.d.cols() != n) throw_invalid("distance matrix must be square");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw_invalid("alpha must lie in (0, 1]");
    const long order = snap_ceil(alpha * static_cast<double>(n));
    if (order < 1 || order > n) throw_invalid("alpha leaves no neighbor order in [1, n]");

    RadiusProfile prof;
    prof.alpha = alpha;
    prof.order = static_cast<std::size_t>(order);
    prof.radius.resize(static_cast<std::size_t>(n));

    std::vector<double> row(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = dist.d(i, j);
        // k-th order statistic of the row, self distance 0 included.
        std::nth_element(row.begin(), row.begin() + (order - 1), row.end());
        prof.radius[static_cast<std::size_t>(i)] = row[static_cast<std::size_t>(order - 1)];
    }

    // Max rank: ties share the highest position, so tied boundary points are
    // all kept or all dropped together.
    std::vector<double> sorted = prof.radius;
    std::sort(sorted.begin(), sorted.end());
    prof.rank.resize(prof.radius.size());
    for (std::size_t i = 0; i < prof.radius.size(); ++i) {
        prof.rank[i] = static_cast<std::size_t>(
            std::upper_bound(sorted.begin(), sorted.end(), prof.radius[i]) - sorted.begin());
    }
    return prof;
}

void TrimConfig::validate(std::size_t n) const {
    if (n < 1) throw_invalid("trim config needs a non-empty sample");
    if (!(alpha > 0.0 && alpha <= 0.5)) throw_invalid("alpha must lie in (0, 0.5]");
    if (!(beta >= 0.0 && beta <= 0.5)) throw_invalid("beta must lie in [0, 0.5]");
    if (mode == TrimMode::soft && beta > 0.0) {
        if (!(beta1 > beta && beta1 <= 1.0))
            throw_invalid("soft trimming needs beta < beta1 <= 1");
    }
}

double soft_weight_g(double t, double beta, double beta1) {
    if (!(beta >= 0.0 && beta1 > beta && beta1 <= 1.0))
        throw_invalid("soft weight needs 0 <= beta < beta1 <= 1");
    const double a = 1.0 - beta1;
    const double b = 1.0 - beta;
    if (t <= a) return 1.0;
    if (t >= b) return 0.0;
    const double cubic = (t - a) * (2.0 * t - (a + b)) / ((b - a) * (b - a) * (b - a));
    return (t - b) * (1.0 / (a - b) + cubic);
}

TrimWeights trim_weights(const RadiusProfile& profile, const TrimConfig& config) {
    const std::size_t n = profile.radius.size();
    if (profile.rank.size() != n) throw_invalid("radius profile ranks out of step");
    config.validate(n);

    TrimWeights tw;
    tw.w.assign(n, 0.0);

    if (config.beta == 0.0) {
        // No trimming requested; ranks are irrelevant, everything stays.
        std::fill(tw.w.begin(), tw.w.end(), 1.0);
        tw.kept = n;
        tw.total = static_cast<double>(n);
        return tw;
    }

    if (config.mode == TrimMode::hard) {
        // rank/n < 1 - beta, evaluated in integers: rank <= ceil((1-beta)n) - 1.
        const long keep_max = snap_ceil((1.0 - config.beta) * static_cast<double>(n)) - 1;
        for (std::size_t i = 0; i < n; ++i)
            tw.w[i] = (static_cast<long>(profile.rank[i]) <= keep_max) ? 1.0 : 0.0;
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(profile.rank[i]) / static_cast<double>(n);
            tw.w[i] = soft_weight_g(t, config.beta, config.beta1);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (tw.w[i] > 0.0) ++tw.kept;
        tw.total += tw.w[i];
    }
    if (tw.kept == 0 || !(tw.total > 0.0))
        throw_degenerate("trimming left no observation with positive weight");
    return tw;
}

}  // namespace radtrim
