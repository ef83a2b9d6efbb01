#ifndef RADTRIM_DEPTH_HPP
#define RADTRIM_DEPTH_HPP

#include <cstdint>
#include <vector>

#include "hilbert.hpp"

namespace radtrim {

// Radius-based outlyingness of each observation. radius[i] is the distance
// from X_i to its ceil(alpha*n)-th nearest sample point, counting X_i itself
// (distance zero) among the candidates. Small radius = deep point.
struct RadiusProfile {
    double alpha = 0.0;
    std::size_t order = 0;              // ceil(alpha * n)
    std::vector<double> radius;         // n entries
    std::vector<std::size_t> rank;      // max rank: #{j : radius_j <= radius_i}
};

RadiusProfile alpha_radii(const DistanceMatrix& dist, double alpha);

enum class TrimMode : std::uint8_t { hard, soft };

struct TrimConfig {
    double alpha = 0.5;
    double beta = 0.0;    // trimmed fraction; 0 disables trimming
    double beta1 = 0.0;   // soft mode ramp start fraction; beta1 > beta
    TrimMode mode = TrimMode::hard;

    void validate(std::size_t n) const;
};

struct TrimWeights {
    std::vector<double> w;   // n entries in [0, 1]
    std::size_t kept = 0;    // #{i : w_i > 0}
    double total = 0.0;      // sum of w
};

// Smooth descent from 1 to 0 used by soft trimming: with a = 1 - beta1 and
// b = 1 - beta, g(t) = 1 for t <= a, 0 for t >= b, and in between
//   g(t) = (t - b) * [ 1/(a-b) + (t - a)(2t - (a+b)) / (b-a)^3 ],
// which is C^1 across both joins.
double soft_weight_g(double t, double beta, double beta1);

// Hard mode: w_i = 1 iff rank_i / n < 1 - beta. Soft mode: w_i = g(rank_i/n).
// beta = 0 short-circuits to all-ones in either mode. All-zero weights is an
// over-trimmed configuration and raises a degenerate-config error.
TrimWeights trim_weights(const RadiusProfile& profile, const TrimConfig& config);

}  // namespace radtrim

#endif
