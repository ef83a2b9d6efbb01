#ifndef RADTRIM_TESTS_HELPERS_HPP
#define RADTRIM_TESTS_HELPERS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "core/depth.hpp"
#include "core/hilbert.hpp"

namespace testkit {

// std::mt19937 with explicit distributions implemented inline, so every
// platform draws the same matrices for a given seed.
inline double unit_uniform(std::mt19937_64& gen) {
    return (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53;
}

inline Eigen::MatrixXd random_matrix(std::size_t n, std::size_t p, std::uint64_t seed,
                                     double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 gen(seed);
    Eigen::MatrixXd m(n, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j)
            m(i, j) = lo + (hi - lo) * unit_uniform(gen);
    return m;
}

inline Eigen::MatrixXd random_integer_matrix(std::size_t n, std::size_t p,
                                             std::uint64_t seed, long lo = -512,
                                             long hi = 512) {
    std::mt19937_64 gen(seed);
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    Eigen::MatrixXd m(n, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j)
            m(i, j) = static_cast<double>(lo + static_cast<long>(gen() % span));
    return m;
}

inline Eigen::MatrixXd rows2(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t n = rows.size();
    const std::size_t p = rows.begin()->size();
    Eigen::MatrixXd m(n, p);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

inline Eigen::VectorXd vec(std::initializer_list<double> values) {
    Eigen::VectorXd v(values.size());
    std::size_t i = 0;
    for (double x : values) v(i++) = x;
    return v;
}

inline radtrim::TrimWeights make_weights(std::initializer_list<double> values) {
    radtrim::TrimWeights w;
    w.w.assign(values);
    for (double x : w.w) {
        if (x > 0.0) ++w.kept;
        w.total += x;
    }
    return w;
}

inline radtrim::TrimWeights make_weights(const std::vector<double>& values) {
    radtrim::TrimWeights w;
    w.w = values;
    for (double x : w.w) {
        if (x > 0.0) ++w.kept;
        w.total += x;
    }
    return w;
}

// Random orthogonal matrix via QR of a Gaussian draw, sign-fixed.
inline Eigen::MatrixXd random_orthogonal(std::size_t p, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    Eigen::MatrixXd a(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            const double u1 = unit_uniform(gen);
            const double u2 = unit_uniform(gen);
            a(i, j) = std::sqrt(-2.0 * std::log(u1)) *
                      std::cos(6.283185307179586 * u2);
        }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (std::size_t j = 0; j < p; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    return q;
}

// Map that preserves the weighted inner product <x, y>_q: U = Q^{-1/2} O Q^{1/2}.
inline Eigen::MatrixXd quad_orthogonal(const Eigen::VectorXd& q, std::uint64_t seed) {
    const auto p = static_cast<std::size_t>(q.size());
    const Eigen::VectorXd root = q.array().sqrt();
    const Eigen::MatrixXd o = random_orthogonal(p, seed);
    return root.cwiseInverse().asDiagonal() * o * root.asDiagonal();
}

}  // namespace testkit

#endif
