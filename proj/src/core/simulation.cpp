#include "simulation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <thread>

#include "baselines.hpp"
#include "error.hpp"
#include "estimators.hpp"
#include "util.hpp"

namespace radtrim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string frac2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    if (s.size() > 1 && s[0] == '0') s.erase(0, 1);  // "0.50" -> ".50"
    return s;
}

std::size_t integral_count(double x, const char* what) {
    const double r = std::round(x);
    if (!(r >= 0.0) || std::abs(x - r) > 1e-9 * std::max(1.0, std::abs(x)))
        throw_invalid(what);
    return static_cast<std::size_t>(r);
}

const Grid& functional_grid(const WeightedSample& sample) {
    if (sample.channels().size() != 1 || !sample.channels()[0].grid)
        throw_invalid("contamination needs a single on-grid channel");
    return *sample.channels()[0].grid;
}

std::size_t thread_count(std::size_t cap) {
    std::size_t t = 0;
    if (const char* env = std::getenv("RADTRIM_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) t = static_cast<std::size_t>(v);
    }
    if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
    return std::min(t, std::max<std::size_t>(cap, 1));
}

}  // namespace

SimModel SimModel::by_id(int id) {
    SimModel m;
    m.id = id;
    m.truncation = (id == 1) ? 1000 : 10;
    m.validate();
    return m;
}

double SimModel::eigenvalue(std::size_t k) const {
    if (k < 1) throw_invalid("eigenvalue index is 1-based");
    if (id == 1) {
        const double kd = static_cast<double>(k);
        return 1.0 / (kd * (kd + 1.0));
    }
    return std::ldexp(1.0, -static_cast<int>(k));
}

double SimModel::retained_mass() const {
    double acc = 0.0;
    for (std::size_t k = truncation; k >= 1; --k) acc += eigenvalue(k);
    return acc;
}

void SimModel::validate() const {
    if (id != 1 && id != 2) throw_invalid("model id must be 1 or 2");
    if (truncation < 1) throw_invalid("truncation must be positive");
    if (retained_mass() < 0.999)
        throw_invalid("truncation keeps less than 99.9% of the variance");
}

bool EstimatorSpec::targets_pc() const {
    switch (kind) {
        case EstimatorKind::sample_pc:
        case EstimatorKind::spherical_pc:
        case EstimatorKind::hard_pc:
        case EstimatorKind::soft_pc:
            return true;
        default:
            return false;
    }
}

bool EstimatorSpec::uses_trim_params() const {
    switch (kind) {
        case EstimatorKind::hard_trim:
        case EstimatorKind::soft_trim:
        case EstimatorKind::hard_pc:
        case EstimatorKind::soft_pc:
            return true;
        default:
            return false;
    }
}

std::string EstimatorSpec::label() const {
    switch (kind) {
        case EstimatorKind::mean: return "Mean";
        case EstimatorKind::median: return "Median";
        case EstimatorKind::sample_pc: return "Sample p.c.";
        case EstimatorKind::spherical_pc: return "Spherical p.c.";
        case EstimatorKind::hard_trim:
        case EstimatorKind::hard_pc:
            return "Hard(" + frac2(alpha) + "," + frac2(beta) + ")";
        case EstimatorKind::soft_trim:
        case EstimatorKind::soft_pc:
            return "Soft(" + frac2(alpha) + "," + frac2(beta) + ")";
    }
    throw_invalid("unknown estimator kind");
}

void SimConfig::validate() const {
    model.validate();
    if (n < 2) throw_invalid("simulation needs n >= 2");
    if (grid_points < 2) throw_invalid("grid needs at least two points");
    if (epsilons.empty()) throw_invalid("epsilon list must not be empty");
    for (double eps : epsilons) {
        if (!(eps >= 0.0 && eps < 1.0)) throw_invalid("epsilon must lie in [0, 1)");
        integral_count(eps * static_cast<double>(n), "n*epsilon must be integral");
        if (contamination == Contamination::pc_inflate)
            integral_count(eps * static_cast<double>(n) / 2.0,
                           "n*epsilon/2 must be integral");
    }
    if (estimators.empty()) throw_invalid("estimator list must not be empty");
    for (const EstimatorSpec& est : estimators) {
        if (!est.uses_trim_params()) continue;
        TrimConfig tc;
        tc.alpha = est.alpha;
        tc.beta = est.beta;
        tc.beta1 = est.beta1;
        tc.mode = (est.kind == EstimatorKind::soft_trim ||
                   est.kind == EstimatorKind::soft_pc)
                      ? TrimMode::soft
                      : TrimMode::hard;
        tc.validate(n);
    }
    if (replications < 1) throw_invalid("replications must be positive");
}

std::string SimConfig::canonical_string() const {
    std::string s = "v1;model=" + std::to_string(model.id);
    s += ";trunc=" + std::to_string(model.truncation);
    s += ";n=" + std::to_string(n);
    s += ";grid=" + std::to_string(grid_points);
    s += ";contam=";
    s += (contamination == Contamination::mean_shift) ? "mean_shift" : "pc_inflate";
    s += ";eps=";
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (i) s += ",";
        s += format_double(epsilons[i]);
    }
    s += ";est=";
    for (std::size_t i = 0; i < estimators.size(); ++i) {
        if (i) s += "|";
        s += std::to_string(static_cast<int>(estimators[i].kind)) + ":" +
             format_double(estimators[i].alpha) + ":" +
             format_double(estimators[i].beta) + ":" +
             format_double(estimators[i].beta1);
    }
    s += ";reps=" + std::to_string(replications);
    s += ";seed=" + std::to_string(seed);
    return s;
}

Eigen::VectorXd sin_basis(std::size_t k, const Grid& grid) {
    const Eigen::Index p = static_cast<Eigen::Index>(grid.knots.size());
    Eigen::VectorXd v(p);
    const double root2 = std::numbers::sqrt2;
    for (Eigen::Index j = 0; j < p; ++j)
        v[j] = root2 * std::sin(std::numbers::pi * static_cast<double>(k) *
                                grid.knots[static_cast<std::size_t>(j)]);
    return v;
}

WeightedSample generate_sample(const SimModel& model, std::size_t n,
                               const Grid& grid, RngStream& rng) {
    model.validate();
    grid.validate();
    if (n < 1) throw_invalid("sample size must be positive");
    const Eigen::Index p = static_cast<Eigen::Index>(grid.knots.size());
    const Eigen::Index trunc = static_cast<Eigen::Index>(model.truncation);

    Eigen::MatrixXd basis(trunc, p);
    for (Eigen::Index k = 0; k < trunc; ++k) {
        const double scale = std::sqrt(model.eigenvalue(static_cast<std::size_t>(k) + 1));
        basis.row(k) = (scale * sin_basis(static_cast<std::size_t>(k) + 1, grid)).transpose();
    }
    Eigen::MatrixXd z(static_cast<Eigen::Index>(n), trunc);
    for (Eigen::Index i = 0; i < z.rows(); ++i)
        for (Eigen::Index k = 0; k < trunc; ++k) z(i, k) = rng.normal();
    return WeightedSample::on_grid(z * basis, grid);
}

WeightedSample contaminate_mean(const WeightedSample& sample, double eps) {
    if (!(eps >= 0.0 && eps < 1.0)) throw_invalid("epsilon must lie in [0, 1)");
    const std::size_t m =
        integral_count(eps * static_cast<double>(sample.n()), "n*epsilon must be integral");
    if (m > sample.n()) throw_invalid("epsilon exceeds the sample");
    if (m == 0) return sample;
    const Grid& grid = functional_grid(sample);
    const Eigen::VectorXd shift = 3.0 * sin_basis(1, grid);
    Eigen::MatrixXd v = sample.values();
    for (std::size_t i = 0; i < m; ++i)
        v.row(static_cast<Eigen::Index>(i)) += shift.transpose();
    return WeightedSample(std::move(v), sample.quad_weights(), sample.channels());
}

WeightedSample contaminate_pc(const WeightedSample& sample, double eps) {
    if (!(eps >= 0.0 && eps < 1.0)) throw_invalid("epsilon must lie in [0, 1)");
    const std::size_t half = integral_count(
        eps * static_cast<double>(sample.n()) / 2.0, "n*epsilon/2 must be integral");
    if (2 * half > sample.n()) throw_invalid("epsilon exceeds the sample");
    if (half == 0) return sample;
    const Grid& grid = functional_grid(sample);
    const Eigen::VectorXd shift = 3.0 * sin_basis(2, grid);
    Eigen::MatrixXd v = sample.values();
    for (std::size_t i = 0; i < half; ++i)
        v.row(static_cast<Eigen::Index>(i)) += shift.transpose();
    for (std::size_t i = half; i < 2 * half; ++i)
        v.row(static_cast<Eigen::Index>(i)) -= shift.transpose();
    return WeightedSample(std::move(v), sample.quad_weights(), sample.channels());
}

double mean_error(const Eigen::VectorXd& estimate, const Eigen::VectorXd& quad) {
    if (estimate.size() != quad.size())
        throw_invalid("estimate length must match quadrature length");
    double acc = 0.0;
    for (Eigen::Index j = 0; j < quad.size(); ++j)
        acc += quad[j] * estimate[j] * estimate[j];
    return std::sqrt(std::max(0.0, acc));
}

double pc_error(const Eigen::VectorXd& estimate, const Eigen::VectorXd& truth,
                const Eigen::VectorXd& quad) {
    if (estimate.size() != quad.size() || truth.size() != quad.size())
        throw_invalid("estimate, truth and quadrature lengths must agree");
    double minus = 0.0, plus = 0.0;
    for (Eigen::Index j = 0; j < quad.size(); ++j) {
        const double a = estimate[j] - truth[j];
        const double b = estimate[j] + truth[j];
        minus += quad[j] * a * a;
        plus += quad[j] * b * b;
    }
    return std::sqrt(std::max(0.0, std::min(minus, plus)));
}

SimReport run_study(const SimConfig& config) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();

    const Grid grid = Grid::uniform(0.0, 1.0, config.grid_points);
    const std::vector<double> qv = trapezoid_weights(grid);
    const Eigen::VectorXd quad =
        Eigen::Map<const Eigen::VectorXd>(qv.data(), static_cast<Eigen::Index>(qv.size()));
    Eigen::VectorXd truth = sin_basis(1, grid);
    truth /= mean_error(truth, quad);  // unit quadrature norm

    const std::size_t est_count = config.estimators.size();
    const std::size_t eps_count = config.epsilons.size();
    const std::size_t cells = est_count * eps_count;
    std::vector<std::vector<double>> per_rep(config.replications,
                                             std::vector<double>(cells, kNaN));

    auto worker = [&](std::size_t rep_lo, std::size_t rep_hi) {
        for (std::size_t rep = rep_lo; rep < rep_hi; ++rep) {
            RngStream rng = RngStream::substream(config.seed, rep);
            const WeightedSample base = generate_sample(config.model, config.n, grid, rng);
            for (std::size_t ci = 0; ci < eps_count; ++ci) {
                const double eps = config.epsilons[ci];
                const WeightedSample s =
                    (eps == 0.0) ? base
                    : (config.contamination == Contamination::mean_shift)
                        ? contaminate_mean(base, eps)
                        : contaminate_pc(base, eps);

                // Radius profiles depend only on alpha; share across estimators.
                std::optional<DistanceMatrix> dm;
                std::map<double, RadiusProfile> profiles;
                auto profile_for = [&](double alpha) -> const RadiusProfile& {
                    auto it = profiles.find(alpha);
                    if (it == profiles.end()) {
                        if (!dm) dm = distance_matrix(gram_matrix(s));
                        it = profiles.emplace(alpha, alpha_radii(*dm, alpha)).first;
                    }
                    return it->second;
                };
                auto weights_for = [&](const EstimatorSpec& est, TrimMode mode) {
                    TrimConfig tc;
                    tc.alpha = est.alpha;
                    tc.beta = est.beta;
                    tc.beta1 = est.beta1;
                    tc.mode = mode;
                    return trim_weights(profile_for(est.alpha), tc);
                };

                for (std::size_t ei = 0; ei < est_count; ++ei) {
                    const EstimatorSpec& est = config.estimators[ei];
                    double err = kNaN;
                    try {
                        switch (est.kind) {
                            case EstimatorKind::mean:
                                err = mean_error(s.values().colwise().mean().transpose(), quad);
                                break;
                            case EstimatorKind::median: {
                                const MedianResult mr = spatial_median(s);
                                if (mr.converged) err = mean_error(mr.median, quad);
                                break;
                            }
                            case EstimatorKind::hard_trim:
                                err = mean_error(
                                    trimmed_mean(s, weights_for(est, TrimMode::hard)), quad);
                                break;
                            case EstimatorKind::soft_trim:
                                err = mean_error(
                                    trimmed_mean(s, weights_for(est, TrimMode::soft)), quad);
                                break;
                            case EstimatorKind::sample_pc: {
                                const TrimmedFit f = sample_mean_and_pcs(s, 1);
                                if (f.n_components() >= 1)
                                    err = pc_error(f.pc_values.row(0).transpose(), truth, quad);
                                break;
                            }
                            case EstimatorKind::spherical_pc: {
                                const TrimmedFit f = spherical_pcs(s, 1);
                                if (f.n_components() >= 1)
                                    err = pc_error(f.pc_values.row(0).transpose(), truth, quad);
                                break;
                            }
                            case EstimatorKind::hard_pc: {
                                const TrimmedFit f =
                                    trimmed_cov_pcs(s, weights_for(est, TrimMode::hard), 1);
                                if (f.n_components() >= 1)
                                    err = pc_error(f.pc_values.row(0).transpose(), truth, quad);
                                break;
                            }
                            case EstimatorKind::soft_pc: {
                                const TrimmedFit f =
                                    trimmed_cov_pcs(s, weights_for(est, TrimMode::soft), 1);
                                if (f.n_components() >= 1)
                                    err = pc_error(f.pc_values.row(0).transpose(), truth, quad);
                                break;
                            }
                        }
                    } catch (const Error&) {
                        // leave NaN: counted as a failed replication below
                    }
                    per_rep[rep][ei * eps_count + ci] = err;
                }
            }
        }
    };

    const std::size_t threads = thread_count(config.replications);
    if (threads <= 1) {
        worker(0, config.replications);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        const std::size_t chunk = (config.replications + threads - 1) / threads;
        for (std::size_t t = 0; t < threads; ++t) {
            const std::size_t lo = t * chunk;
            const std::size_t hi = std::min(config.replications, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(worker, lo, hi);
        }
        for (std::thread& th : pool) th.join();
    }

    SimReport report;
    report.seed = config.seed;
    report.replications = config.replications;
    const std::string canon = config.canonical_string();
    report.config_hash = hex64(fnv1a64(canon.data(), canon.size()));
    report.rows.reserve(cells);
    for (std::size_t ei = 0; ei < est_count; ++ei) {
        for (std::size_t ci = 0; ci < eps_count; ++ci) {
            SimRow row;
            row.estimator = config.estimators[ei].label();
            row.model = config.model.id;
            row.epsilon = config.epsilons[ci];
            double acc = 0.0;
            std::size_t used = 0;
            for (std::size_t rep = 0; rep < config.replications; ++rep) {
                const double e = per_rep[rep][ei * eps_count + ci];
                if (std::isnan(e)) continue;
                acc += e * e;
                ++used;
            }
            row.reps_used = used;
            row.failures = config.replications - used;
            row.rmse = (used > 0) ? std::sqrt(acc / static_cast<double>(used)) : kNaN;
            report.rows.push_back(std::move(row));
        }
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace radtrim
