#include "pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace radtrim {

RadiiResult compute_radii(const WeightedSample& sample,
                          const std::vector<double>& alphas) {
    if (alphas.empty()) throw_invalid("alpha list must not be empty");
    const DistanceMatrix dm = distance_matrix(gram_matrix(sample));
    RadiiResult out;
    out.rows.reserve(alphas.size() * sample.n());
    for (const double alpha : alphas) {
        const RadiusProfile prof = alpha_radii(dm, alpha);
        for (std::size_t i = 0; i < sample.n(); ++i)
            out.rows.push_back({i + 1, alpha, prof.radius[i], prof.rank[i]});
    }
    return out;
}

TrimResult run_trim(const WeightedSample& sample, const TrimConfig& config,
                    std::size_t components) {
    TrimResult res;
    const DistanceMatrix dm = distance_matrix(gram_matrix(sample));
    res.profile = alpha_radii(dm, config.alpha);
    const TrimWeights w = trim_weights(res.profile, config);
    res.fit = trimmed_cov_pcs(sample, w, components);
    res.score_matrix = scores(sample, res.fit);
    res.has_complement = w.kept < sample.n();
    if (res.has_complement) res.complement = complement_mean(sample, w);
    return res;
}

Histogram histogram(const std::vector<double>& values, std::size_t bins) {
    if (values.empty()) throw_invalid("histogram needs at least one value");
    if (bins < 1) throw_invalid("histogram needs at least one bin");
    Histogram h;
    h.lo = *std::min_element(values.begin(), values.end());
    h.hi = *std::max_element(values.begin(), values.end());
    h.counts.assign(bins, 0);
    if (h.hi <= h.lo) {  // all values equal: one occupied bin
        h.counts[0] = values.size();
        return h;
    }
    const double width = (h.hi - h.lo) / static_cast<double>(bins);
    for (const double v : values) {
        std::size_t k = static_cast<std::size_t>((v - h.lo) / width);
        if (k >= bins) k = bins - 1;  // the max lands in the last bin
        ++h.counts[k];
    }
    return h;
}

ScreenResult run_screen(const WeightedSample& sample,
                        const std::vector<double>& alphas, std::size_t bins) {
    ScreenResult out;
    out.radii = compute_radii(sample, alphas);
    for (const double alpha : alphas) {
        std::vector<double> vals;
        vals.reserve(sample.n());
        for (const RadiiResult::Row& row : out.radii.rows)
            if (row.alpha == alpha) vals.push_back(row.radius);
        out.histograms.emplace_back(alpha, histogram(vals, bins));
    }
    return out;
}

}  // namespace radtrim
