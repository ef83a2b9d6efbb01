#ifndef RADTRIM_ESTIMATORS_HPP
#define RADTRIM_ESTIMATORS_HPP

#include <cstdint>
#include <vector>

#include "depth.hpp"
#include "hilbert.hpp"

namespace radtrim {

// Weighted location estimate plus the leading eigenpairs of the weighted
// covariance, obtained from the n x n weighted Gram matrix rather than the
// p x p covariance (cheap when p >> n, and exact for discretized data).
struct TrimmedFit {
    Eigen::VectorXd mean;        // p
    Eigen::VectorXd eigenvalues; // K kept, descending, > 0
    // Row k applied to the centered observations reproduces eigenfunction k:
    // pc_values.row(k) = sum_i pc_coeffs(k, i) * (X_i - mean).
    Eigen::MatrixXd pc_coeffs;   // K x n
    Eigen::MatrixXd pc_values;   // K x p
    TrimWeights weights;
    bool truncated = false;               // fewer positive eigenvalues than asked
    std::vector<std::uint8_t> repeated;   // 1 if eigenvalue k sits in a near-tie

    std::size_t n_components() const { return static_cast<std::size_t>(eigenvalues.size()); }
};

// Weighted mean sum(w_i X_i) / sum(w_i), coordinatewise.
Eigen::VectorXd trimmed_mean(const WeightedSample& sample, const TrimWeights& w);

// Eigenpairs of the operator sum_i r_i (x) r_i for pre-scaled rows r_i,
// found through the m x m Gram matrix. The caller picks the row scaling
// (e.g. sqrt(w_i/total) * centered rows gives the weighted covariance).
// coeffs row k applied to the rows reproduces values row k.
struct GramPcs {
    Eigen::VectorXd eigenvalues;          // descending, > 0
    Eigen::MatrixXd coeffs;               // K x m
    Eigen::MatrixXd values;               // K x p, unit quadrature norm
    bool truncated = false;
    std::vector<std::uint8_t> repeated;
};

GramPcs gram_pcs(const Eigen::MatrixXd& rows, const Eigen::VectorXd& quad_weights,
                 std::size_t K);

// Weighted mean and up to K leading eigenpairs. Components with eigenvalue
// <= 1e-12 of the largest are dropped (truncated flag, not an error). Signs
// are fixed so each eigenfunction's largest-magnitude coordinate is positive.
TrimmedFit trimmed_cov_pcs(const WeightedSample& sample, const TrimWeights& w,
                           std::size_t K);

// Standardized component scores s_ik = <X_i - mean, phi_k> / eigenvalue_k^{1/2}.
Eigen::MatrixXd scores(const WeightedSample& sample, const TrimmedFit& fit);

// Unweighted mean of the observations that were trimmed away (w_i = 0).
Eigen::VectorXd complement_mean(const WeightedSample& sample, const TrimWeights& w);

// Exact fraction of the sample that must be corrupted to break the estimate.
struct BreakdownPoint {
    long numerator = 0;
    long denominator = 1;
    double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

// min(ceil(alpha n), floor(beta n) + 2) / n, valid for alpha <= 1/2,
// ceil(alpha n) >= 3, beta <= 1/2.
BreakdownPoint breakdown_point(std::size_t n, double alpha, double beta);

}  // namespace radtrim

#endif
