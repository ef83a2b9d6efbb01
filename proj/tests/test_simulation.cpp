#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "core/error.hpp"
#include "core/simulation.hpp"
#include "support/helpers.hpp"

using namespace radtrim;

namespace {

SimConfig tiny_config() {
    SimConfig config;
    config.model = SimModel::by_id(2);
    config.n = 20;
    config.grid_points = 21;
    config.epsilons = {0.0, 0.1};
    config.contamination = Contamination::mean_shift;
    config.replications = 8;
    config.seed = 123;
    config.estimators = {
        EstimatorSpec{EstimatorKind::mean, 0.5, 0.0, 0.0},
        EstimatorSpec{EstimatorKind::hard_trim, 0.5, 0.2, 0.0},
    };
    return config;
}

}  // namespace

TEST_CASE("model catalog") {
    const SimModel m1 = SimModel::by_id(1);
    CHECK(m1.truncation == 1000);
    CHECK(m1.eigenvalue(1) == 0.5);
    CHECK(m1.eigenvalue(2) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(m1.retained_mass() == doctest::Approx(1.0 - 1.0 / 1001.0).epsilon(1e-12));
    CHECK(m1.retained_mass() >= 0.999);

    const SimModel m2 = SimModel::by_id(2);
    CHECK(m2.truncation == 10);
    CHECK(m2.eigenvalue(1) == 0.5);
    CHECK(m2.eigenvalue(10) == std::ldexp(1.0, -10));
    CHECK(m2.retained_mass() == 0.9990234375);

    CHECK_THROWS_AS(SimModel::by_id(3), Error);
    CHECK_THROWS_AS(m1.eigenvalue(0), Error);

    SimModel starved = m2;
    starved.truncation = 5;  // keeps only ~96.9% of the variance
    CHECK_THROWS_AS(starved.validate(), Error);
}

TEST_CASE("sine basis values") {
    const Grid g = Grid::uniform(0.0, 1.0, 3);  // knots 0, 0.5, 1
    const Eigen::VectorXd b1 = sin_basis(1, g);
    CHECK(b1[0] == 0.0);
    CHECK(b1[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(std::fabs(b1[2]) <= 1e-15);
    const Eigen::VectorXd b2 = sin_basis(2, g);
    CHECK(std::fabs(b2[1]) <= 1e-15);
}

TEST_CASE("estimator labels") {
    CHECK(EstimatorSpec{EstimatorKind::mean, 0, 0, 0}.label() == "Mean");
    CHECK(EstimatorSpec{EstimatorKind::median, 0, 0, 0}.label() == "Median");
    CHECK(EstimatorSpec{EstimatorKind::hard_trim, 0.5, 0.5, 0.0}.label() ==
          "Hard(.50,.50)");
    CHECK(EstimatorSpec{EstimatorKind::soft_trim, 0.5, 0.2, 0.5}.label() ==
          "Soft(.50,.20)");
    CHECK(EstimatorSpec{EstimatorKind::hard_pc, 0.2, 0.2, 0.0}.label() ==
          "Hard(.20,.20)");
    CHECK(EstimatorSpec{EstimatorKind::sample_pc, 0, 0, 0}.label() == "Sample p.c.");
    CHECK(EstimatorSpec{EstimatorKind::spherical_pc, 0, 0, 0}.label() ==
          "Spherical p.c.");
}

TEST_CASE("sample generation is reproducible and stream-isolated") {
    const Grid g = Grid::uniform(0.0, 1.0, 11);
    const SimModel m = SimModel::by_id(2);
    RngStream a = RngStream::substream(9, 0);
    RngStream b = RngStream::substream(9, 0);
    const WeightedSample sa = generate_sample(m, 5, g, a);
    const WeightedSample sb = generate_sample(m, 5, g, b);
    CHECK(sa.values() == sb.values());

    RngStream c = RngStream::substream(9, 1);
    const WeightedSample sc = generate_sample(m, 5, g, c);
    CHECK(sa.values() != sc.values());

    // observation-major draws: a shorter sample shares its leading rows up to
    // the product's accumulation order, which may vary with the matrix shape
    RngStream d = RngStream::substream(9, 0);
    const WeightedSample sd = generate_sample(m, 2, g, d);
    CHECK(sa.values().topRows(2).isApprox(sd.values(), 1e-12));
}

TEST_CASE("generated curves have mean zero and the advertised variance") {
    const Grid g = Grid::uniform(0.0, 1.0, 51);  // 0.5 is knot 25
    const SimModel m = SimModel::by_id(2);
    RngStream rng(31415);
    const WeightedSample s = generate_sample(m, 20000, g, rng);

    // empirical variance at t = 0.5; odd components contribute 2 * 2^-k
    const Eigen::VectorXd col = s.values().col(25);
    const double mean = col.mean();
    const double var = (col.array() - mean).square().sum() / (col.size() - 1.0);
    CHECK(var == doctest::Approx(341.0 / 256.0).epsilon(0.04));

    // column means stay within four standard errors
    for (Eigen::Index j = 0; j < 51; ++j) {
        double vj = 0.0;
        for (std::size_t k = 1; k <= m.truncation; ++k) {
            const double b = std::sqrt(2.0) *
                             std::sin(3.141592653589793 * static_cast<double>(k) *
                                      g.knots[static_cast<std::size_t>(j)]);
            vj += m.eigenvalue(k) * b * b;
        }
        const double se = std::sqrt(vj / 20000.0);
        CHECK(std::fabs(s.values().col(j).mean()) <= 4.0 * se + 1e-12);
    }
}

TEST_CASE("mean contamination shifts exactly the first rows") {
    const Grid g = Grid::uniform(0.0, 1.0, 21);
    RngStream rng(5);
    const WeightedSample clean = generate_sample(SimModel::by_id(2), 20, g, rng);

    const WeightedSample same = contaminate_mean(clean, 0.0);
    CHECK(same.values() == clean.values());

    const WeightedSample dirty = contaminate_mean(clean, 0.2);
    const Eigen::VectorXd shift = 3.0 * sin_basis(1, g);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 21; ++j)
            CHECK(dirty.values()(i, j) == clean.values()(i, j) + shift[j]);
    for (int i = 4; i < 20; ++i)
        for (int j = 0; j < 21; ++j)
            CHECK(dirty.values()(i, j) == clean.values()(i, j));

    CHECK_THROWS_AS(contaminate_mean(clean, 0.15001), Error);  // 3.0002 rows
    CHECK_THROWS_AS(contaminate_mean(clean, 1.0), Error);
}

TEST_CASE("component contamination inflates symmetrically") {
    const Grid g = Grid::uniform(0.0, 1.0, 21);
    RngStream rng(6);
    const WeightedSample clean = generate_sample(SimModel::by_id(2), 20, g, rng);

    const WeightedSample dirty = contaminate_pc(clean, 0.2);
    const Eigen::VectorXd shift = 3.0 * sin_basis(2, g);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 21; ++j)
            CHECK(dirty.values()(i, j) == clean.values()(i, j) + shift[j]);
    for (int i = 2; i < 4; ++i)
        for (int j = 0; j < 21; ++j)
            CHECK(dirty.values()(i, j) == clean.values()(i, j) - shift[j]);
    for (int i = 4; i < 20; ++i)
        for (int j = 0; j < 21; ++j)
            CHECK(dirty.values()(i, j) == clean.values()(i, j));

    // the paired shifts cancel in the column means
    for (int j = 0; j < 21; ++j)
        CHECK(dirty.values().col(j).mean() ==
              doctest::Approx(clean.values().col(j).mean()).epsilon(1e-12));

    CHECK_THROWS_AS(contaminate_pc(clean, 0.05), Error);  // half-count 0.5
}

TEST_CASE("error metrics") {
    const Grid g = Grid::uniform(0.0, 1.0, 50);
    const auto qv = trapezoid_weights(g);
    const Eigen::VectorXd quad =
        Eigen::Map<const Eigen::VectorXd>(qv.data(), static_cast<Eigen::Index>(qv.size()));

    CHECK(mean_error(Eigen::VectorXd::Zero(50), quad) == 0.0);
    const Eigen::VectorXd phi1 = sin_basis(1, g);
    CHECK(mean_error(phi1, quad) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(mean_error(3.0 * phi1, quad) ==
          doctest::Approx(3.0 * mean_error(phi1, quad)).epsilon(1e-12));

    Eigen::VectorXd t1 = phi1;
    t1 /= mean_error(t1, quad);
    Eigen::VectorXd t2 = sin_basis(2, g);
    t2 /= mean_error(t2, quad);
    CHECK(pc_error(t1, t1, quad) == 0.0);
    CHECK(pc_error(-t1, t1, quad) == 0.0);  // sign never counts as error
    CHECK(pc_error(t2, t1, quad) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));

    CHECK_THROWS_AS(mean_error(Eigen::VectorXd::Zero(3), quad), Error);
}

TEST_CASE("study configs are validated") {
    SimConfig config = tiny_config();
    CHECK_NOTHROW(config.validate());

    config.epsilons = {0.15001};  // 3.0002 contaminated rows
    CHECK_THROWS_AS(config.validate(), Error);

    config = tiny_config();
    config.contamination = Contamination::pc_inflate;
    config.epsilons = {0.1};  // n*eps/2 = 1 works for n = 20
    CHECK_NOTHROW(config.validate());
    config.epsilons = {0.05};  // half-count 0.5
    CHECK_THROWS_AS(config.validate(), Error);

    config = tiny_config();
    config.estimators.clear();
    CHECK_THROWS_AS(config.validate(), Error);

    config = tiny_config();
    config.estimators[1].beta = 0.7;
    CHECK_THROWS_AS(config.validate(), Error);

    config = tiny_config();
    config.replications = 0;
    CHECK_THROWS_AS(config.validate(), Error);
}

TEST_CASE("study runs are bit-reproducible") {
    const SimConfig config = tiny_config();
    const SimReport a = run_study(config);
    const SimReport b = run_study(config);
    REQUIRE(a.rows.size() == 4);  // 2 estimators x 2 epsilons
    CHECK(a.config_hash == b.config_hash);
    CHECK(a.seed == 123);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].estimator == b.rows[i].estimator);
        CHECK(a.rows[i].rmse == b.rows[i].rmse);
        CHECK(a.rows[i].reps_used == 8);
        CHECK(a.rows[i].failures == 0);
    }
    CHECK(a.rows[0].estimator == "Mean");
    CHECK(a.rows[0].epsilon == 0.0);
    CHECK(a.rows[1].epsilon == 0.1);
    CHECK(a.rows[2].estimator == "Hard(.50,.20)");
    CHECK(a.elapsed_seconds >= 0.0);

    SimConfig other = config;
    other.seed = 124;
    CHECK(run_study(other).config_hash != a.config_hash);
}

TEST_CASE("thread count never changes the numbers") {
    const SimConfig config = tiny_config();
    setenv("RADTRIM_THREADS", "1", 1);
    const SimReport serial = run_study(config);
    setenv("RADTRIM_THREADS", "3", 1);
    const SimReport parallel = run_study(config);
    unsetenv("RADTRIM_THREADS");
    for (std::size_t i = 0; i < serial.rows.size(); ++i)
        CHECK(serial.rows[i].rmse == parallel.rows[i].rmse);
}

TEST_CASE("failed fits are excluded and audited") {
    SimConfig config;
    config.model = SimModel::by_id(2);
    config.n = 3;  // trimming to one kept row leaves no component to estimate
    config.grid_points = 11;
    config.epsilons = {0.0};
    config.replications = 3;
    config.seed = 7;
    config.estimators = {EstimatorSpec{EstimatorKind::hard_pc, 0.5, 0.5, 0.0}};
    const SimReport rep = run_study(config);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].failures == 3);
    CHECK(rep.rows[0].reps_used == 0);
    CHECK(std::isnan(rep.rows[0].rmse));
}

TEST_CASE("mean degrades with contamination as the shift predicts") {
    SimConfig config;
    config.model = SimModel::by_id(1);
    config.n = 100;
    config.grid_points = 50;
    config.epsilons = {0.0, 0.2, 0.4};
    config.contamination = Contamination::mean_shift;
    config.replications = 60;
    config.seed = 20260825;
    config.estimators = {EstimatorSpec{EstimatorKind::mean, 0, 0, 0}};
    const SimReport rep = run_study(config);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[0].rmse < rep.rows[1].rmse);
    CHECK(rep.rows[1].rmse < rep.rows[2].rmse);
    // a 3 phi shift on a fraction eps biases the mean by 3 eps
    const double anchor =
        std::sqrt(9.0 * 0.16 + rep.rows[0].rmse * rep.rows[0].rmse);
    CHECK(rep.rows[2].rmse == doctest::Approx(anchor).epsilon(0.08));
}

TEST_CASE("trimming costs little on clean data") {
    SimConfig config;
    config.model = SimModel::by_id(1);
    config.n = 100;
    config.grid_points = 50;
    config.epsilons = {0.0};
    config.replications = 60;
    config.seed = 99;
    config.estimators = {
        EstimatorSpec{EstimatorKind::mean, 0, 0, 0},
        EstimatorSpec{EstimatorKind::hard_trim, 0.5, 0.5, 0.0},
        EstimatorSpec{EstimatorKind::soft_trim, 0.5, 0.2, 0.5},
    };
    const SimReport rep = run_study(config);
    REQUIRE(rep.rows.size() == 3);
    const double mean_rmse = rep.rows[0].rmse;
    CHECK(rep.rows[1].rmse <= 2.0 * mean_rmse);
    CHECK(rep.rows[2].rmse <= 2.0 * mean_rmse);
}
