#ifndef RADTRIM_HILBERT_HPP
#define RADTRIM_HILBERT_HPP

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace radtrim {

// Abscissae of one channel (e.g. t in [0,1]). Strictly increasing, >= 2 knots.
struct Grid {
    std::vector<double> knots;

    void validate() const;
    static Grid uniform(double lo, double hi, std::size_t points);
};

// Composite trapezoid weights on the grid: q_1 = (t_2-t_1)/2,
// q_j = (t_{j+1}-t_{j-1})/2 inside, q_m = (t_m-t_{m-1})/2. Sum = t_m - t_1.
std::vector<double> trapezoid_weights(const Grid& grid);

// Weighted dot product sum_j q_j x_j y_j; the discretized inner product.
double inner_product(std::span<const double> x, std::span<const double> y,
                     std::span<const double> q);

struct ChannelInfo {
    std::string name;
    std::size_t offset = 0;
    std::size_t size = 0;
    std::optional<Grid> grid;  // absent for plain Euclidean coordinates
};

// A sample of n observations in a (possibly multi-channel) inner-product
// space, discretized to p coordinates with positive quadrature weights.
// Channels are concatenated; the inner product is the weighted dot product,
// which for several channels equals the sum of the per-channel integrals.
class WeightedSample {
  public:
    WeightedSample(Eigen::MatrixXd values, Eigen::VectorXd quad_weights,
                   std::vector<ChannelInfo> channels = {});

    // All-ones weights (plain R^p data).
    static WeightedSample euclidean(Eigen::MatrixXd values);
    // Single functional channel with trapezoid quadrature on `grid`.
    static WeightedSample on_grid(Eigen::MatrixXd values, Grid grid, std::string name = "t");

    std::size_t n() const { return static_cast<std::size_t>(values_.rows()); }
    std::size_t p() const { return static_cast<std::size_t>(values_.cols()); }
    const Eigen::MatrixXd& values() const { return values_; }
    const Eigen::VectorXd& quad_weights() const { return quad_; }
    const std::vector<ChannelInfo>& channels() const { return channels_; }

    double ip(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
    double norm(const Eigen::VectorXd& x) const;

  private:
    Eigen::MatrixXd values_;  // n x p, row i = observation i
    Eigen::VectorXd quad_;    // p, strictly positive
    std::vector<ChannelInfo> channels_;
};

// n x n matrix of pairwise inner products <X_i, X_j>.
struct GramMatrix {
    Eigen::MatrixXd inner;

    // Symmetry, non-negative diagonal, and (optionally, it costs an
    // eigendecomposition) positive semidefiniteness up to 1e-8 * max(diag).
    void validate(bool check_psd = false) const;
};

// n x n matrix of interdistances ||X_i - X_j||. Zero diagonal, symmetric.
struct DistanceMatrix {
    Eigen::MatrixXd d;
};

// Upper triangle computed with a fixed per-entry summation order, mirrored.
GramMatrix gram_matrix(const WeightedSample& sample);

// d_ij = sqrt(max(0, (g_ii + g_jj) - 2 g_ij)); negative round-off clamps to 0.
DistanceMatrix distance_matrix(const GramMatrix& gram);

}  // namespace radtrim

#endif
