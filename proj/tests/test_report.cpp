#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gpcal/errors.hpp"
#include "gpcal/infer/diagnostics.hpp"
#include "gpcal/model/linear_gaussian.hpp"
#include "gpcal/report/predictive.hpp"
#include "gpcal/report/quantiles.hpp"
#include "gpcal/report/summary.hpp"
#include "gpcal/rng.hpp"
#include "oracles.hpp"

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Archive with hand-filled columns: chain ids cycle 0..chains-1 within each
// generation block, generation counts up, logp is a placeholder.
gpcal::PosteriorArchive blank_archive(gpcal::Scenario scenario, int chains,
                                      Index rows_per_chain,
                                      std::vector<std::string> theta_names,
                                      std::vector<std::string> stream_names) {
  gpcal::PosteriorArchive a;
  a.scenario = scenario;
  a.chains = chains;
  a.model_name = "hand-built";
  a.theta_names = std::move(theta_names);
  a.stream_names = std::move(stream_names);
  const Index rows = rows_per_chain * chains;
  a.samples = MatrixXd::Zero(rows, a.n_columns());
  for (Index r = 0; r < rows; ++r) {
    a.samples(r, gpcal::PosteriorArchive::kChainColumn) =
        static_cast<double>(r % chains);
    a.samples(r, gpcal::PosteriorArchive::kGenerationColumn) =
        static_cast<double>(r / chains + 1);
  }
  return a;
}

}  // namespace

TEST_CASE("type-7 quantiles at pinned points") {
  std::vector<double> ten;
  for (int i = 1; i <= 10; ++i) ten.push_back(static_cast<double>(i));
  CHECK(gpcal::quantile_type7(ten, 0.25) == 3.25);  // h = 9/4, between 3 and 4
  CHECK(gpcal::quantile_type7(ten, 0.0) == 1.0);
  CHECK(gpcal::quantile_type7(ten, 1.0) == 10.0);
  CHECK(gpcal::quantile_type7(ten, 0.5) == 5.5);

  CHECK(gpcal::quantile_type7({7.5}, 0.0) == 7.5);
  CHECK(gpcal::quantile_type7({7.5}, 0.62) == 7.5);
  CHECK(gpcal::quantile_type7({7.5}, 1.0) == 7.5);

  // input order must not matter
  CHECK(gpcal::quantile_type7({3.0, 1.0, 2.0}, 1.0) == 3.0);
  CHECK(gpcal::quantile_type7({4.0, 1.0, 3.0, 2.0}, 0.5) == 2.5);
}

TEST_CASE("quantile input validation") {
  CHECK_THROWS_AS(gpcal::quantile_type7({}, 0.5), gpcal::ConfigError);
  CHECK_THROWS_AS(gpcal::quantile_type7({1.0}, -0.1), gpcal::ConfigError);
  CHECK_THROWS_AS(gpcal::quantile_type7({1.0}, 1.5), gpcal::ConfigError);
  CHECK_THROWS_AS(gpcal::quantile_type7({1.0}, std::nan("")), gpcal::ConfigError);
  CHECK_THROWS_AS(gpcal::quantiles_type7(VectorXd(), {0.5}), gpcal::ConfigError);
}

TEST_CASE("quantiles agree with the order-statistic definition") {
  auto rng = gpcal::make_rng(31);
  std::uniform_real_distribution<double> unif(-4.0, 9.0);
  VectorXd values(37);
  for (Index i = 0; i < values.size(); ++i) values(i) = unif(rng);
  const std::vector<double> probs{0.0, 0.025, 0.31, 0.5, 0.77, 0.975, 1.0};
  const VectorXd q = gpcal::quantiles_type7(values, probs);
  REQUIRE(q.size() == static_cast<Index>(probs.size()));
  std::vector<double> raw(values.data(), values.data() + values.size());
  for (std::size_t j = 0; j < probs.size(); ++j) {
    CHECK(q(static_cast<Index>(j)) ==
          doctest::Approx(oracle::quantile_reference(raw, probs[j])).epsilon(1e-14));
  }
  // monotone in the probability
  for (Index j = 1; j < q.size(); ++j) CHECK(q(j) >= q(j - 1));
}

TEST_CASE("parameter summary over a hand-built archive") {
  auto archive = blank_archive(gpcal::Scenario::ignore, 2, 12, {"a", "b"}, {});
  auto rng = gpcal::make_rng(8);
  std::normal_distribution<double> n01(0.0, 1.0);
  for (Index r = 0; r < archive.n_rows(); ++r) {
    const bool second_chain =
        archive.samples(r, gpcal::PosteriorArchive::kChainColumn) == 1.0;
    archive.samples(r, archive.theta_column(0)) = 3.0 + n01(rng);
    // chains exploring disjoint regions: the diagnostic must blow up
    archive.samples(r, archive.theta_column(1)) =
        (second_chain ? 40.0 : 0.0) + 0.1 * n01(rng);
    archive.samples(r, archive.logp_column()) = -1.0;
  }

  const auto summary = gpcal::parameter_summary(archive);
  CHECK(summary.names == std::vector<std::string>{"a", "b"});
  REQUIRE(summary.stats.rows() == 2);
  REQUIRE(summary.stats.cols() == 6);
  CHECK(gpcal::ParameterSummary::stat_names() ==
        std::vector<std::string>{"mean", "sd", "q025", "q500", "q975", "psrf"});

  const VectorXd col_a = archive.samples.col(archive.theta_column(0));
  const double mean = col_a.mean();
  const double sd = std::sqrt((col_a.array() - mean).square().sum() /
                              static_cast<double>(col_a.size() - 1));
  CHECK(summary.stats(0, 0) == doctest::Approx(mean).epsilon(1e-14));
  CHECK(summary.stats(0, 1) == doctest::Approx(sd).epsilon(1e-14));
  std::vector<double> raw(col_a.data(), col_a.data() + col_a.size());
  CHECK(summary.stats(0, 2) ==
        doctest::Approx(oracle::quantile_reference(raw, 0.025)).epsilon(1e-14));
  CHECK(summary.stats(0, 3) ==
        doctest::Approx(oracle::quantile_reference(raw, 0.5)).epsilon(1e-14));
  CHECK(summary.stats(0, 4) ==
        doctest::Approx(oracle::quantile_reference(raw, 0.975)).epsilon(1e-14));

  // the psrf column matches the diagnostic run on the same archive
  const auto psrf = gpcal::gelman_rubin(archive);
  CHECK(summary.stats(0, 5) == psrf.values(0));
  CHECK(summary.stats(1, 5) == psrf.values(1));
  CHECK(summary.stats(0, 5) < 1.2);
  CHECK(summary.stats(1, 5) > 3.0);
}

TEST_CASE("parameter summary degenerate shapes") {
  SUBCASE("single chain leaves the diagnostic undefined") {
    auto archive = blank_archive(gpcal::Scenario::ignore, 1, 12, {"a"}, {});
    for (Index r = 0; r < archive.n_rows(); ++r) {
      archive.samples(r, archive.theta_column(0)) = static_cast<double>(r);
    }
    const auto summary = gpcal::parameter_summary(archive);
    CHECK(std::isnan(summary.stats(0, 5)));
    CHECK(summary.stats(0, 0) == doctest::Approx(5.5));
  }
  SUBCASE("one retained row has zero spread") {
    auto archive = blank_archive(gpcal::Scenario::ignore, 1, 1, {"a"}, {});
    archive.samples(0, archive.theta_column(0)) = 2.5;
    const auto summary = gpcal::parameter_summary(archive);
    CHECK(summary.stats(0, 0) == 2.5);
    CHECK(summary.stats(0, 1) == 0.0);
    CHECK(summary.stats(0, 2) == 2.5);
    CHECK(summary.stats(0, 4) == 2.5);
    CHECK(std::isnan(summary.stats(0, 5)));
  }
  SUBCASE("empty archive is rejected") {
    const auto archive = blank_archive(gpcal::Scenario::ignore, 2, 0, {"a"}, {});
    CHECK_THROWS_AS(gpcal::parameter_summary(archive), gpcal::ConfigError);
  }
}

TEST_CASE("parameter summary names the hyperparameters per stream") {
  auto archive =
      blank_archive(gpcal::Scenario::gp, 2, 10, {"t"}, {"sparse", "rich"});
  for (Index r = 0; r < archive.n_rows(); ++r) {
    archive.samples(r, archive.theta_column(0)) = static_cast<double>(r);
    for (Index k = 0; k < 2; ++k) {
      archive.samples(r, archive.psi_column(k)) = 1.0 + static_cast<double>(k);
      archive.samples(r, archive.sigma2_column(k)) = 0.5;
    }
  }
  const auto summary = gpcal::parameter_summary(archive);
  CHECK(summary.names ==
        std::vector<std::string>{"t", "psi_sparse", "sigma2_sparse", "psi_rich",
                                 "sigma2_rich"});
  REQUIRE(summary.stats.rows() == 5);
  CHECK(summary.stats(1, 0) == 1.0);  // constant psi column
  CHECK(summary.stats(3, 0) == 2.0);
  CHECK(summary.stats(1, 1) == 0.0);
}

TEST_CASE("discrepancy summary quantiles and variance ratios") {
  auto archive =
      blank_archive(gpcal::Scenario::gp, 2, 10, {"t"}, {"sparse", "rich"});
  for (Index r = 0; r < archive.n_rows(); ++r) {
    archive.samples(r, archive.psi_column(0)) = 1.0;
    archive.samples(r, archive.psi_column(1)) = 2.0;
    archive.samples(r, archive.sigma2_column(0)) = 1.0;
    archive.samples(r, archive.sigma2_column(1)) = 2.0;
  }
  const auto summary = gpcal::discrepancy_summary(archive);
  CHECK(summary.streams == std::vector<std::string>{"sparse", "rich"});
  REQUIRE(summary.sigma2_quantiles.rows() == 2);
  REQUIRE(summary.sigma2_quantiles.cols() == 3);
  // constant columns pin every quantile exactly
  CHECK((summary.sigma2_quantiles.row(0).array() == 1.0).all());
  CHECK((summary.sigma2_quantiles.row(1).array() == 2.0).all());
  CHECK((summary.log_sigma2_quantiles.row(0).array() == 0.0).all());
  CHECK(summary.log_sigma2_quantiles(1, 1) == doctest::Approx(std::log(2.0)));

  REQUIRE(summary.ratio_pairs.size() == 2);
  CHECK(summary.ratio_pairs[0] == std::make_pair(std::string("sparse"),
                                                 std::string("rich")));
  CHECK(summary.ratio_pairs[1] == std::make_pair(std::string("rich"),
                                                 std::string("sparse")));
  REQUIRE(summary.ratio_quantiles.rows() == 2);
  CHECK((summary.ratio_quantiles.row(0).array() == 0.5).all());
  CHECK((summary.ratio_quantiles.row(1).array() == 2.0).all());
}

TEST_CASE("discrepancy summary sorts across chains") {
  auto archive = blank_archive(gpcal::Scenario::gp, 2, 10, {"t"}, {"s"});
  // 1..20 scattered over the two chains in row order
  for (Index r = 0; r < archive.n_rows(); ++r) {
    archive.samples(r, archive.psi_column(0)) = 1.0;
    archive.samples(r, archive.sigma2_column(0)) = static_cast<double>(20 - r);
  }
  const auto summary = gpcal::discrepancy_summary(archive);
  std::vector<double> raw;
  for (int v = 1; v <= 20; ++v) raw.push_back(static_cast<double>(v));
  CHECK(summary.sigma2_quantiles(0, 1) ==
        doctest::Approx(oracle::quantile_reference(raw, 0.5)).epsilon(1e-14));
  CHECK(summary.sigma2_quantiles(0, 0) ==
        doctest::Approx(oracle::quantile_reference(raw, 0.025)).epsilon(1e-14));
  CHECK(summary.ratio_pairs.empty());  // a single stream has no pairs
  CHECK(summary.ratio_quantiles.rows() == 0);
}

TEST_CASE("discrepancy summary rejects unsuitable archives") {
  const auto ignore = blank_archive(gpcal::Scenario::ignore, 2, 10, {"t"}, {});
  CHECK_THROWS_AS(gpcal::discrepancy_summary(ignore), gpcal::ConfigError);
  const auto empty = blank_archive(gpcal::Scenario::gp, 2, 0, {"t"}, {"s"});
  CHECK_THROWS_AS(gpcal::discrepancy_summary(empty), gpcal::ConfigError);
}

TEST_CASE("model band of a point-mass archive is the model curve") {
  const Index n = 12;
  const auto model = gpcal::linear_gaussian_test_model(
      2, [&] {
        MatrixXd d(n, 2);
        d.col(0) = VectorXd::Ones(n);
        d.col(1) = VectorXd::LinSpaced(n, 0.0, 1.0);
        return d;
      }());
  auto data_rng = gpcal::make_rng(21, 0);
  const auto stream =
      gpcal::linear_gaussian_generate(*model, Eigen::Vector2d(0.7, -0.3), 0.2,
                                      data_rng);

  auto archive = blank_archive(gpcal::Scenario::ignore, 2, 5,
                               model->theta_names(), model->stream_names());
  for (Index r = 0; r < archive.n_rows(); ++r) {
    archive.samples(r, archive.theta_column(0)) = 0.7;
    archive.samples(r, archive.theta_column(1)) = -0.3;
  }

  auto rng = gpcal::make_rng(77);
  const auto bands = gpcal::predictive_bands(archive, *model, {stream}, rng);
  REQUIRE(bands.size() == 1);
  const auto& band = bands[0];
  CHECK(band.stream == "y");
  CHECK(band.locations == stream.locations);
  REQUIRE(band.model_band.rows() == n);
  REQUIRE(band.model_band.cols() == 3);
  const VectorXd g = model->predict(Eigen::Vector2d(0.7, -0.3), stream);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < 3; ++j) CHECK(band.model_band(i, j) == g(i));
  }
  // no discrepancy model, no process band
  CHECK(band.process_band.size() == 0);
}

TEST_CASE("zero signal variance collapses the process band onto the model band") {
  const Index n = 15;
  MatrixXd design(n, 2);
  design.col(0) = VectorXd::Ones(n);
  design.col(1) = VectorXd::LinSpaced(n, 0.0, 1.0);
  const auto model = gpcal::linear_gaussian_test_model(2, design);
  auto data_rng = gpcal::make_rng(22, 0);
  const auto stream =
      gpcal::linear_gaussian_generate(*model, Eigen::Vector2d(1.0, 2.0), 0.3,
                                      data_rng);

  auto archive = blank_archive(gpcal::Scenario::gp, 2, 6, model->theta_names(),
                               model->stream_names());
  auto fill_rng = gpcal::make_rng(9);
  std::normal_distribution<double> n01(0.0, 1.0);
  for (Index r = 0; r < archive.n_rows(); ++r) {
    archive.samples(r, archive.theta_column(0)) = 1.0 + 0.2 * n01(fill_rng);
    archive.samples(r, archive.theta_column(1)) = 2.0 + 0.2 * n01(fill_rng);
    archive.samples(r, archive.psi_column(0)) = 3.0;
    archive.samples(r, archive.sigma2_column(0)) = 0.0;
  }

  auto rng = gpcal::make_rng(78);
  const auto bands = gpcal::predictive_bands(archive, *model, {stream}, rng);
  REQUIRE(bands.size() == 1);
  REQUIRE(bands[0].process_band.rows() == n);
  CHECK((bands[0].process_band - bands[0].model_band).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("band columns follow the requested probabilities") {
  const Index n = 10;
  MatrixXd design(n, 2);
  design.col(0) = VectorXd::Ones(n);
  design.col(1) = VectorXd::LinSpaced(n, 0.0, 1.0);
  const auto model = gpcal::linear_gaussian_test_model(2, design);
  auto data_rng = gpcal::make_rng(23, 0);
  const auto stream =
      gpcal::linear_gaussian_generate(*model, Eigen::Vector2d(0.5, 1.5), 0.25,
                                      data_rng);

  auto archive = blank_archive(gpcal::Scenario::ignore, 2, 20,
                               model->theta_names(), model->stream_names());
  auto fill_rng = gpcal::make_rng(10);
  std::normal_distribution<double> n01(0.0, 1.0);
  for (Index r = 0; r < archive.n_rows(); ++r) {
    archive.samples(r, archive.theta_column(0)) = 0.5 + 0.3 * n01(fill_rng);
    archive.samples(r, archive.theta_column(1)) = 1.5 + 0.3 * n01(fill_rng);
  }

  auto rng = gpcal::make_rng(79);
  const auto bands = gpcal::predictive_bands(archive, *model, {stream}, rng,
                                             {0.1, 0.9, 0.5});
  REQUIRE(bands.size() == 1);
  const auto& band = bands[0].model_band;
  REQUIRE(band.cols() == 3);
  for (Index i = 0; i < n; ++i) {
    CHECK(band(i, 0) <= band(i, 2));  // 10% below the median
    CHECK(band(i, 2) <= band(i, 1));  // median below 90%
  }
}

TEST_CASE("gp bands are reproducible for a fixed generator state") {
  const Index n = 14;
  MatrixXd design(n, 2);
  design.col(0) = VectorXd::Ones(n);
  design.col(1) = VectorXd::LinSpaced(n, 0.0, 1.0);
  const auto model = gpcal::linear_gaussian_test_model(2, design);
  auto data_rng = gpcal::make_rng(24, 0);
  const auto stream =
      gpcal::linear_gaussian_generate(*model, Eigen::Vector2d(1.0, -1.0), 0.2,
                                      data_rng);

  auto archive = blank_archive(gpcal::Scenario::gp, 2, 8, model->theta_names(),
                               model->stream_names());
  auto fill_rng = gpcal::make_rng(11);
  std::normal_distribution<double> n01(0.0, 1.0);
  for (Index r = 0; r < archive.n_rows(); ++r) {
    archive.samples(r, archive.theta_column(0)) = 1.0 + 0.1 * n01(fill_rng);
    archive.samples(r, archive.theta_column(1)) = -1.0 + 0.1 * n01(fill_rng);
    archive.samples(r, archive.psi_column(0)) = 2.0 + std::abs(n01(fill_rng));
    archive.samples(r, archive.sigma2_column(0)) = 1.5;
  }

  auto rng_a = gpcal::make_rng(101);
  auto rng_b = gpcal::make_rng(101);
  const auto bands_a = gpcal::predictive_bands(archive, *model, {stream}, rng_a);
  const auto bands_b = gpcal::predictive_bands(archive, *model, {stream}, rng_b);
  REQUIRE(bands_a.size() == bands_b.size());
  CHECK((bands_a[0].model_band - bands_b[0].model_band).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK((bands_a[0].process_band - bands_b[0].process_band)
            .cwiseAbs()
            .maxCoeff() == 0.0);

  // a different state moves the conditional draws but not the model part
  auto rng_c = gpcal::make_rng(102);
  const auto bands_c = gpcal::predictive_bands(archive, *model, {stream}, rng_c);
  CHECK((bands_a[0].model_band - bands_c[0].model_band).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK((bands_a[0].process_band - bands_c[0].process_band)
            .cwiseAbs()
            .maxCoeff() > 0.0);
}

TEST_CASE("predictive band validation") {
  const Index n = 8;
  MatrixXd design(n, 2);
  design.col(0) = VectorXd::Ones(n);
  design.col(1) = VectorXd::LinSpaced(n, 0.0, 1.0);
  const auto model = gpcal::linear_gaussian_test_model(2, design);
  auto data_rng = gpcal::make_rng(25, 0);
  const auto stream =
      gpcal::linear_gaussian_generate(*model, Eigen::Vector2d(0.0, 1.0), 0.2,
                                      data_rng);
  auto archive = blank_archive(gpcal::Scenario::ignore, 2, 5,
                               model->theta_names(), model->stream_names());
  auto rng = gpcal::make_rng(80);

  SUBCASE("empty archive") {
    const auto empty = blank_archive(gpcal::Scenario::ignore, 2, 0,
                                     model->theta_names(), model->stream_names());
    CHECK_THROWS_AS(gpcal::predictive_bands(empty, *model, {stream}, rng),
                    gpcal::ConfigError);
  }
  SUBCASE("stream count mismatch") {
    CHECK_THROWS_AS(gpcal::predictive_bands(archive, *model, {stream, stream}, rng),
                    gpcal::ConfigError);
  }
  SUBCASE("stream name mismatch") {
    auto renamed = stream;
    renamed.name = "z";
    CHECK_THROWS_AS(gpcal::predictive_bands(archive, *model, {renamed}, rng),
                    gpcal::ConfigError);
  }
  SUBCASE("model dimension mismatch") {
    const auto narrow = gpcal::linear_gaussian_test_model(1, design.col(0));
    CHECK_THROWS_AS(gpcal::predictive_bands(archive, *narrow, {stream}, rng),
                    gpcal::ConfigError);
  }
  SUBCASE("no probabilities") {
    CHECK_THROWS_AS(gpcal::predictive_bands(archive, *model, {stream}, rng, {}),
                    gpcal::ConfigError);
  }
}
