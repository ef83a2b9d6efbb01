#include "hilbert.hpp"

#include <cmath>
#include <utility>

#include "error.hpp"

namespace radtrim {

void Grid::validate() const {
    if (knots.size() < 2) throw_invalid("grid needs at least two knots");
    for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
        if (!(knots[j] < knots[j + 1]))
            throw_invalid("grid knots must be strictly increasing");
    }
    for (double t : knots) {
        if (!std::isfinite(t)) throw_invalid("grid knots must be finite");
    }
}

Grid Grid::uniform(double lo, double hi, std::size_t points) {
    if (points < 2) throw_invalid("grid needs at least two knots");
    if (!(lo < hi)) throw_invalid("grid range must satisfy lo < hi");
    Grid g;
    g.knots.resize(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t j = 0; j < points; ++j)
        g.knots[j] = lo + step * static_cast<double>(j);
    g.knots.back() = hi;  // exact endpoint regardless of rounding in step
    return g;
}

std::vector<double> trapezoid_weights(const Grid& grid) {
    grid.validate();
    const std::size_t m = grid.knots.size();
    std::vector<double> q(m);
    q[0] = (grid.knots[1] - grid.knots[0]) / 2.0;
    for (std::size_t j = 1; j + 1 < m; ++j)
        q[j] = (grid.knots[j + 1] - grid.knots[j - 1]) / 2.0;
    q[m - 1] = (grid.knots[m - 1] - grid.knots[m - 2]) / 2.0;
    return q;
}

double inner_product(std::span<const double> x, std::span<const double> y,
                     std::span<const double> q) {
    if (x.size() != y.size() || x.size() != q.size())
        throw_invalid("inner_product arguments must share one length");
    double acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += q[j] * x[j] * y[j];
    return acc;
}

WeightedSample::WeightedSample(Eigen::MatrixXd values, Eigen::VectorXd quad_weights,
                               std::vector<ChannelInfo> channels)
    : values_(std::move(values)), quad_(std::move(quad_weights)),
      channels_(std::move(channels)) {
    if (values_.rows() < 1) throw_invalid("sample needs at least one observation");
    if (values_.cols() < 1) throw_invalid("sample needs at least one coordinate");
    if (quad_.size() != values_.cols())
        throw_invalid("quadrature weight count must match coordinate count");
    for (Eigen::Index j = 0; j < quad_.size(); ++j) {
        if (!(quad_[j] > 0.0) || !std::isfinite(quad_[j]))
            throw_invalid("quadrature weights must be positive and finite");
    }
    if (!values_.allFinite()) throw_invalid("sample values must be finite");
    if (channels_.empty()) {
        channels_.push_back(ChannelInfo{"x", 0, static_cast<std::size_t>(values_.cols()), {}});
    }
    std::size_t expect = 0;
    for (const ChannelInfo& c : channels_) {
        if (c.offset != expect || c.size == 0)
            throw_invalid("channels must tile the coordinates in order");
        if (c.grid && c.grid->knots.size() != c.size)
            throw_invalid("channel grid size must match channel width");
        expect += c.size;
    }
    if (expect != static_cast<std::size_t>(values_.cols()))
        throw_invalid("channels must cover every coordinate");
}

WeightedSample WeightedSample::euclidean(Eigen::MatrixXd values) {
    const Eigen::Index p = values.cols();
    return WeightedSample(std::move(values), Eigen::VectorXd::Ones(p));
}

WeightedSample WeightedSample::on_grid(Eigen::MatrixXd values, Grid grid, std::string name) {
    grid.validate();
    const std::vector<double> q = trapezoid_weights(grid);
    if (static_cast<Eigen::Index>(q.size()) != values.cols())
        throw_invalid("grid size must match coordinate count");
    Eigen::VectorXd qv = Eigen::Map<const Eigen::VectorXd>(q.data(), static_cast<Eigen::Index>(q.size()));
    std::vector<ChannelInfo> ch{ChannelInfo{std::move(name), 0, q.size(), std::move(grid)}};
    return WeightedSample(std::move(values), std::move(qv), std::move(ch));
}

double WeightedSample::ip(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    if (x.size() != values_.cols() || y.size() != values_.cols())
        throw_invalid("vector length must match coordinate count");
    double acc = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) acc += quad_[j] * x[j] * y[j];
    return acc;
}

double WeightedSample::norm(const Eigen::VectorXd& x) const {
    return std::sqrt(std::max(0.0, ip(x, x)));
}

void GramMatrix::validate(bool check_psd) const {
    if (inner.rows() != inner.cols()) throw_invalid("gram matrix must be square");
    const Eigen::Index n = inner.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (inner(i, i) < 0.0) throw_invalid("gram diagonal must be non-negative");
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (inner(i, j) != inner(j, i)) throw_invalid("gram matrix must be symmetric");
        }
    }
    if (check_psd && n > 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(inner, Eigen::EigenvaluesOnly);
        const double floor = -1e-8 * std::max(1.0, inner.diagonal().maxCoeff());
        if (es.eigenvalues().minCoeff() < floor)
            throw_invalid("gram matrix must be positive semidefinite");
    }
}

GramMatrix gram_matrix(const WeightedSample& sample) {
    const Eigen::Index n = static_cast<Eigen::Index>(sample.n());
    const Eigen::Index p = static_cast<Eigen::Index>(sample.p());
    // Pre-scale one side by q once; each entry then runs the same fused
    // (q_k * x_ik) * x_jk accumulation as inner_product, so gram entries in
    // the upper triangle match ip(row_i, row_j) bit for bit.
    const Eigen::MatrixXd plain = sample.values().transpose();  // p x n
    Eigen::MatrixXd scaled = plain;
    for (Eigen::Index i = 0; i < n; ++i)
        scaled.col(i) = scaled.col(i).cwiseProduct(sample.quad_weights());
    GramMatrix g;
    g.inner.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double* xi = scaled.col(i).data();
        for (Eigen::Index j = i; j < n; ++j) {
            const double* xj = plain.col(j).data();
            double acc = 0.0;  // fixed ascending-k order keeps entries reproducible
            for (Eigen::Index k = 0; k < p; ++k) acc += xi[k] * xj[k];
            g.inner(i, j) = acc;
            g.inner(j, i) = acc;
        }
    }
    return g;
}

DistanceMatrix distance_matrix(const GramMatrix& gram) {
    gram.validate(false);
    const Eigen::Index n = gram.inner.rows();
    DistanceMatrix dm;
    dm.d.setZero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            // (g_ii + g_jj) first: the expression is symmetric in i and j,
            // so the entry does not depend on which triangle was computed.
            const double sq =
                (gram.inner(i, i) + gram.inner(j, j)) - 2.0 * gram.inner(i, j);
            const double d = std::sqrt(std::max(0.0, sq));
            dm.d(i, j) = d;
            dm.d(j, i) = d;
        }
    }
    return dm;
}

}  // namespace radtrim
