#ifndef RADTRIM_BASELINES_HPP
#define RADTRIM_BASELINES_HPP

#include "estimators.hpp"

namespace radtrim {

struct MedianResult {
    Eigen::VectorXd median;
    std::size_t iterations = 0;
    bool converged = false;
    double final_step = 0.0;
    // Objective sum_i ||X_i - m|| after each update; non-increasing.
    std::vector<double> objective_trace;
};

// Ordinary mean and principal components: the no-trimming path.
TrimmedFit sample_mean_and_pcs(const WeightedSample& sample, std::size_t K);

// Minimizer of sum_i ||X_i - m|| under the quadrature norm. Fixed-point
// iteration m <- sum(X_i/d_i) / sum(1/d_i) over points with d_i >= 1e-12,
// started at the coordinatewise mean. When m sits on a data point and the
// pull of the others is no larger than the multiplicity of that point, m is
// the minimizer and iteration stops there.
MedianResult spatial_median(const WeightedSample& sample, double tol = 1e-8,
                            std::size_t max_iter = 500);

// Principal components of the direction vectors (X_i - center)/||X_i - center||,
// covariance taken about the origin. Deviations shorter than 1e-12 are
// dropped. Eigenvalues describe the normalized data, so only the
// eigenfunctions (directions) are meaningful estimates.
TrimmedFit spherical_pcs_at(const WeightedSample& sample,
                            const Eigen::VectorXd& center, std::size_t K);

// spherical_pcs_at with the spatial median as the center.
TrimmedFit spherical_pcs(const WeightedSample& sample, std::size_t K);

}  // namespace radtrim

#endif
