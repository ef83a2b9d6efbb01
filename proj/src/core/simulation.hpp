#ifndef RADTRIM_SIMULATION_HPP
#define RADTRIM_SIMULATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "depth.hpp"
#include "hilbert.hpp"
#include "rng.hpp"

namespace radtrim {

// Synthetic curve model: X(t) = sum_k Z_k lambda_k^{1/2} sqrt(2) sin(pi k t)
// with Z_k standard normal. Model 1 decays slowly (lambda_k = 1/(k(k+1)),
// 1000 terms); model 2 decays fast (lambda_k = 2^-k, 10 terms). Either
// truncation retains at least 99.9% of the total variance.
struct SimModel {
    int id = 1;
    std::size_t truncation = 1000;

    static SimModel by_id(int id);
    double eigenvalue(std::size_t k) const;  // k is 1-based
    double retained_mass() const;
    void validate() const;
};

enum class EstimatorKind : std::uint8_t {
    mean,          // coordinatewise average, location target
    median,        // spatial median, location target
    hard_trim,     // hard-rejection trimmed mean
    soft_trim,     // soft-rejection trimmed mean
    sample_pc,     // ordinary first principal component
    spherical_pc,  // first principal component of unit deviations
    hard_pc,       // first trimmed principal component, hard weights
    soft_pc,       // first trimmed principal component, soft weights
};

struct EstimatorSpec {
    EstimatorKind kind = EstimatorKind::mean;
    double alpha = 0.5;
    double beta = 0.0;
    double beta1 = 0.0;

    bool targets_pc() const;
    bool uses_trim_params() const;
    // Display name, e.g. "Mean", "Hard(.50,.50)", "Sample p.c.".
    std::string label() const;
};

enum class Contamination : std::uint8_t { mean_shift, pc_inflate };

struct SimConfig {
    SimModel model;
    std::size_t n = 100;
    std::size_t grid_points = 50;  // equally spaced on [0, 1]
    std::vector<double> epsilons;
    Contamination contamination = Contamination::mean_shift;
    std::vector<EstimatorSpec> estimators;
    std::size_t replications = 500;
    std::uint64_t seed = 0;

    void validate() const;
    // Deterministic flat rendering of every field; hashing it identifies the run.
    std::string canonical_string() const;
};

struct SimRow {
    std::string estimator;
    int model = 0;
    double epsilon = 0.0;
    double rmse = 0.0;
    std::size_t reps_used = 0;
    std::size_t failures = 0;
};

struct SimReport {
    std::vector<SimRow> rows;
    std::uint64_t seed = 0;
    std::string config_hash;
    std::size_t replications = 0;
    // Wall-clock seconds; informational only and never serialized, so a
    // rerun from a manifest stays byte-identical.
    double elapsed_seconds = 0.0;
};

// Basis curve sqrt(2) sin(pi k t) evaluated on the grid.
Eigen::VectorXd sin_basis(std::size_t k, const Grid& grid);

// n random curves on the grid; Z drawn observation-major, component-minor.
WeightedSample generate_sample(const SimModel& model, std::size_t n,
                               const Grid& grid, RngStream& rng);

// Adds 3 sqrt(2) sin(pi t) to the first n*eps rows. n*eps must be integral.
WeightedSample contaminate_mean(const WeightedSample& sample, double eps);

// Adds 3 sqrt(2) sin(2 pi t) to the first n*eps/2 rows and subtracts it from
// the next n*eps/2, leaving the mean untouched. n*eps/2 must be integral.
WeightedSample contaminate_pc(const WeightedSample& sample, double eps);

// Norm of the location estimate under the quadrature (true mean is zero).
double mean_error(const Eigen::VectorXd& estimate, const Eigen::VectorXd& quad);

// Sign-aligned distance min(||e - t||, ||e + t||); orthogonal unit vectors
// score sqrt(2), the conventional breakdown level for directions.
double pc_error(const Eigen::VectorXd& estimate, const Eigen::VectorXd& truth,
                const Eigen::VectorXd& quad);

// Full crossed study: per replication draw one sample from the dedicated
// substream, contaminate per epsilon, run every estimator, and aggregate
// rmse = sqrt(mean squared error) over the replications that succeeded.
// Failed fits are excluded and counted. Worker threads (RADTRIM_THREADS,
// default all cores) split replications; aggregation order is fixed by
// replication index, so the thread count never changes the numbers.
SimReport run_study(const SimConfig& config);

}  // namespace radtrim

#endif
