#ifndef RADTRIM_PIPELINE_HPP
#define RADTRIM_PIPELINE_HPP

#include <vector>

#include "baselines.hpp"
#include "depth.hpp"
#include "estimators.hpp"
#include "hilbert.hpp"

namespace radtrim {

// Long-form radii listing, ordered by (alpha, observation id).
struct RadiiResult {
    struct Row {
        std::size_t id = 0;  // 1-based observation index
        double alpha = 0.0;
        double radius = 0.0;
        std::size_t rank = 0;
    };
    std::vector<Row> rows;
};

RadiiResult compute_radii(const WeightedSample& sample,
                          const std::vector<double>& alphas);

// Everything the trim command reports in one pass: the radius profile, the
// fit, standardized scores, and the mean of what was trimmed away.
struct TrimResult {
    RadiusProfile profile;
    TrimmedFit fit;
    Eigen::MatrixXd score_matrix;   // n x K
    Eigen::VectorXd complement;     // mean of zero-weight rows
    bool has_complement = false;    // false when nothing was trimmed
};

TrimResult run_trim(const WeightedSample& sample, const TrimConfig& config,
                    std::size_t components);

// Equal-width binning over [min, max]; the top edge is inclusive.
struct Histogram {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::size_t> counts;
};

Histogram histogram(const std::vector<double>& values, std::size_t bins);

struct ScreenResult {
    RadiiResult radii;
    std::vector<std::pair<double, Histogram>> histograms;  // per alpha
};

ScreenResult run_screen(const WeightedSample& sample,
                        const std::vector<double>& alphas, std::size_t bins);

}  // namespace radtrim

#endif
