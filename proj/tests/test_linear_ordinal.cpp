#include <cmath>

#include <gtest/gtest.h>

#include "ivord/error.hpp"
#include "ivord/frank_hall.hpp"
#include "ivord/lda_id.hpp"
#include "ivord/model.hpp"
#include "ivord/polr.hpp"
#include "support/generators.hpp"

namespace ivord {
namespace {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Draws y from the proportional-odds model by inverting the cumulative link.
std::vector<int> simulate_polr(RngStream& rng, const Matrix& x, std::span<const double> beta,
                               std::span<const double> zeta) {
  std::vector<int> y(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double eta = dot(x.row(i), beta);
    const double u = rng.uniform();
    int q = 1;
    while (static_cast<std::size_t>(q) <= zeta.size() && u > logistic(zeta[q - 1] - eta)) ++q;
    y[i] = q;
  }
  return y;
}

Matrix normal_matrix(RngStream& rng, std::size_t n, std::size_t p) {
  Matrix x(n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) x(i, j) = rng.normal();
  return x;
}

TEST(Polr, PredictProbaHandExample) {
  PolrModel m{{0.0, 1.0}, {0.0}, FeatureRecipe::Raw};
  const auto p = polr_predict_proba(m, std::vector<double>{3.0});
  EXPECT_NEAR(p[0], 0.5, 1e-12);
  EXPECT_NEAR(p[1], logistic(1.0) - 0.5, 1e-12);
  EXPECT_NEAR(p[1], 0.2311, 1e-4);
  EXPECT_NEAR(p[2], 0.2689, 1e-4);
  EXPECT_THROW(polr_predict_proba(m, std::vector<double>{1, 2}), Error);
}

TEST(Polr, LargeEtaPutsMassOnLastClass) {
  PolrModel m{{-1.0, 0.5, 2.0}, {1.0}, FeatureRecipe::Raw};
  const auto p = polr_predict_proba(m, std::vector<double>{60.0});
  EXPECT_NEAR(p[3], 1.0, 1e-12);
  EXPECT_EQ(argmax_low(p), 4);
}

TEST(Polr, ProbabilitiesOnSimplexAndCumulativeMonotone) {
  RngStream rng(4);
  for (int t = 0; t < 500; ++t) {
    PolrModel m;
    double z = rng.uniform(-5, 5);
    const int q = 2 + static_cast<int>(rng.uniform_index(5));
    for (int j = 0; j + 1 < q; ++j) {
      m.thresholds.push_back(z);
      z += rng.uniform(0.01, 3);
    }
    m.coefficients = {rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const std::vector<double> x{rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const auto p = polr_predict_proba(m, x);
    double s = 0, cum = 0, prev_cum = 0;
    for (double v : p) {
      EXPECT_GE(v, 0.0);
      s += v;
      cum += v;
      EXPECT_GE(cum, prev_cum);
      prev_cum = cum;
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(Polr, ArgmaxTiesGoLow) {
  EXPECT_EQ(argmax_low(std::vector<double>{0.5, 0.0, 0.5}), 1);
  EXPECT_EQ(argmax_low(std::vector<double>{0.2, 0.4, 0.4}), 2);
}

TEST(Polr, GradientMatchesCentralDifferences) {
  RngStream rng(12);
  const Matrix x = normal_matrix(rng, 80, 3);
  const auto y = simulate_polr(rng, x, std::vector<double>{0.7, -0.4, 1.1},
                               std::vector<double>{-1.0, 0.2, 1.5});
  const PolrObjective obj(x, y, 4, 1e-6);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> theta(obj.num_params());
    for (auto& v : theta) v = rng.uniform(-1.5, 1.5);
    std::vector<double> g(theta.size());
    obj.gradient(theta, g);
    for (std::size_t j = 0; j < theta.size(); ++j) {
      const double h = 1e-5 * std::max(1.0, std::abs(theta[j]));
      auto tp = theta, tm = theta;
      tp[j] += h;
      tm[j] -= h;
      const double fd = (obj.value(tp) - obj.value(tm)) / (2 * h);
      EXPECT_LE(std::abs(fd - g[j]) / std::max(1.0, std::abs(fd)), 1e-6)
          << "point " << t << " param " << j;
    }
  }
}

TEST(Polr, ParameterRecovery) {
  RngStream rng(2025);
  const Matrix x = normal_matrix(rng, 5000, 1);
  const std::vector<double> zeta{-1.0, 1.0}, beta{1.0};
  const auto y = simulate_polr(rng, x, beta, zeta);
  const auto m = polr_fit(x, y, 3);
  EXPECT_NEAR(m.thresholds[0], -1.0, 0.1);
  EXPECT_NEAR(m.thresholds[1], 1.0, 0.1);
  EXPECT_NEAR(m.coefficients[0], 1.0, 0.1);
}

TEST(Polr, NoiseFeaturesGiveEmpiricalFrequencies) {
  RngStream rng(6);
  const Matrix x = normal_matrix(rng, 3000, 1);
  std::vector<int> y(3000);
  std::vector<double> freq(3, 0.0);
  for (auto& v : y) {
    const double u = rng.uniform();
    v = u < 0.2 ? 1 : (u < 0.7 ? 2 : 3);
    freq[static_cast<std::size_t>(v - 1)] += 1.0 / 3000;
  }
  const auto m = polr_fit(x, y, 3);
  const auto p = polr_predict_proba(m, std::vector<double>{0.0});
  for (std::size_t q = 0; q < 3; ++q) EXPECT_NEAR(p[q], freq[q], 0.02);
}

TEST(Polr, Preconditions) {
  RngStream rng(1);
  const Matrix x = normal_matrix(rng, 20, 1);
  std::vector<int> one(20, 1);
  EXPECT_THROW(polr_fit(x, one, 2), Error);
  std::vector<int> tiny{1, 2, 1};
  EXPECT_THROW(polr_fit(normal_matrix(rng, 3, 1), tiny, 2), Error);
}

TEST(Polr, SeparationIsFitFailed) {
  Matrix x(40, 1);
  std::vector<int> y(40);
  for (int i = 0; i < 40; ++i) {
    x(static_cast<std::size_t>(i), 0) = i;
    y[static_cast<std::size_t>(i)] = i < 20 ? 1 : 2;
  }
  try {
    polr_fit(x, y, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FitFailed);
  }
}

TEST(Polr, AffineRescalingKeepsLabels) {
  RngStream rng(31);
  const Matrix x = normal_matrix(rng, 400, 2);
  const auto y = simulate_polr(rng, x, std::vector<double>{1.0, -2.0}, std::vector<double>{-0.5, 0.8});
  Matrix xs = x;
  for (std::size_t i = 0; i < x.rows(); ++i) xs(i, 1) = 250.0 * x(i, 1) + 40.0;
  const auto a = polr_fit(x, y, 3), b = polr_fit(xs, y, 3);
  const Matrix held = normal_matrix(rng, 200, 2);
  for (std::size_t i = 0; i < held.rows(); ++i) {
    const std::vector<double> u{held(i, 0), held(i, 1)}, v{held(i, 0), 250.0 * held(i, 1) + 40.0};
    EXPECT_EQ(argmax_low(polr_predict_proba(a, u)), argmax_low(polr_predict_proba(b, v)));
  }
}

LabeledDataset to_dataset(std::vector<IntervalVector> xs, std::vector<int> y, int q) {
  LabeledDataset d;
  d.num_classes = q;
  for (auto& x : xs) d.observations.emplace_back(std::move(x));
  d.labels = std::move(y);
  return d;
}

TEST(PolrI, UsesBothBoundsAndBeatsBaseline) {
  RngStream rng(8);
  std::vector<IntervalVector> xs;
  std::vector<int> y;
  for (int i = 0; i < 300; ++i) {
    const int q = 1 + i % 3;
    const double lo = 2.0 * q + rng.normal();
    xs.push_back(IntervalVector({{lo, lo + rng.uniform(0, 3)}, {rng.normal(), rng.normal() + 5}}));
    y.push_back(q);
  }
  const auto d = to_dataset(xs, y, 3);
  const auto m = fit_method(Method::PolrI, d, {}, RngStream(1));
  EXPECT_EQ(m->parameters_json()["coefficients"].size(), 4u);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < d.size(); ++i) correct += m->predict(d.observations[i]) == d.labels[i];
  EXPECT_GT(static_cast<double>(correct) / 300.0, 1.0 / 3.0 + 0.2);
}

TEST(PolrI, DegenerateIntervalsFitNormally) {
  RngStream rng(9);
  std::vector<IntervalVector> xs;
  std::vector<int> y;
  for (int i = 0; i < 120; ++i) {
    const double v = rng.normal() + (i % 3);
    xs.push_back(IntervalVector({{v, v}}));
    y.push_back(1 + i % 3);
  }
  EXPECT_NO_THROW(fit_method(Method::PolrI, to_dataset(xs, y, 3), {}, RngStream(1)));
}

TEST(PolrI2, DegenerateBoundsGiveIdenticalSideModels) {
  RngStream rng(10);
  std::vector<IntervalVector> xs;
  std::vector<int> y;
  for (int i = 0; i < 150; ++i) {
    const double v = rng.normal() + 1.5 * (i % 3);
    xs.push_back(IntervalVector({{v, v}}));
    y.push_back(1 + i % 3);
  }
  const auto m = fit_method(Method::PolrI2, to_dataset(xs, y, 3), {}, RngStream(1));
  const auto j = m->parameters_json();
  EXPECT_EQ(j["lower"]["coefficients"], j["upper"]["coefficients"]);
  EXPECT_EQ(j["lower"]["thresholds"], j["upper"]["thresholds"]);
  const auto p = m->predict_proba(IntervalVector({{0.3, 0.3}}));
  double s = 0;
  for (double v : p) s += v;
  EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(PolrI2, AveragingTieGoesLow) {
  const std::vector<double> pl{1, 0, 0}, pu{0, 0, 1};
  std::vector<double> avg(3);
  for (std::size_t q = 0; q < 3; ++q) avg[q] = (pl[q] + pu[q]) / 2;
  EXPECT_EQ(avg, (std::vector<double>{0.5, 0, 0.5}));
  EXPECT_EQ(argmax_low(avg), 1);
}

TEST(PolrI2, FailureNamesTheSide) {
  // Lower bounds separate the classes perfectly; upper bounds do not.
  std::vector<IntervalVector> xs;
  std::vector<int> y;
  RngStream rng(3);
  for (int i = 0; i < 60; ++i) {
    const int q = i < 30 ? 1 : 2;
    xs.push_back(IntervalVector({{q == 1 ? -1.0 - i : 100.0 + i, 200.0 + rng.normal()}}));
    y.push_back(q);
  }
  try {
    fit_method(Method::PolrI2, to_dataset(xs, y, 2), {}, RngStream(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FitFailed);
    EXPECT_NE(std::string(e.what()).find("lower"), std::string::npos);
  }
}

std::vector<IntervalVector> gaussian_ivd(RngStream& rng, std::span<const int> y,
                                         const std::vector<std::vector<double>>& means,
                                         const std::vector<double>& sds) {
  std::vector<IntervalVector> xs;
  for (int q : y) {
    const auto& mu = means[static_cast<std::size_t>(q - 1)];
    const std::size_t k = mu.size() / 2;
    IntervalVector x;
    for (std::size_t j = 0; j < k; ++j) {
      const double c = mu[j] + sds[j] * rng.normal();
      const double w = std::exp(mu[k + j] + sds[k + j] * rng.normal());
      x.features.push_back({c - w / 2, c + w / 2});
    }
    xs.push_back(std::move(x));
  }
  return xs;
}

TEST(LdaId, ParameterCounts) {
  EXPECT_EQ(ldaid_num_params(4, 1, 2), 6u);
  EXPECT_EQ(ldaid_num_params(1, 1, 2), 7u);
  // K=2: full 4x4 has 10 free entries, config 2 has 6, config 3 has 6, config 4 has 4
  EXPECT_EQ(ldaid_num_params(1, 2, 3), 12u + 10u);
  EXPECT_EQ(ldaid_num_params(2, 2, 3), 12u + 6u);
  EXPECT_EQ(ldaid_num_params(3, 2, 3), 12u + 6u);
  EXPECT_EQ(ldaid_num_params(4, 2, 3), 12u + 4u);
}

TEST(LdaId, MirroredMeansGiveHalfPosteriorAtMidpoint) {
  RngStream rng(40);
  std::vector<int> y;
  for (int i = 0; i < 400; ++i) y.push_back(1 + i % 2);
  const auto xs = gaussian_ivd(rng, y, {{-2, 0}, {2, 0}}, {1, 0.3});
  // force exactly mirrored class means
  auto mirrored = xs;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Interval iv = xs[i][0];
    mirrored.push_back(IntervalVector({{-iv.upper, -iv.lower}}));
  }
  std::vector<int> y2 = y;
  for (int q : y) y2.push_back(3 - q);
  const auto m = ldaid_fit(mirrored, y2, 2);
  const double w = std::exp(m.means[0][1]);
  const auto p = ldaid_predict_proba(m, IntervalVector({{-w / 2, w / 2}}));
  EXPECT_NEAR(p[0], 0.5, 1e-9);
  EXPECT_NEAR(p[1], 0.5, 1e-9);
}

TEST(LdaId, AtClassMeanThatClassWins) {
  RngStream rng(41);
  std::vector<int> y;
  for (int i = 0; i < 300; ++i) y.push_back(1 + i % 3);
  const auto xs = gaussian_ivd(rng, y, {{0, 0}, {3, 0.5}, {6, 1}}, {1, 0.3});
  const auto m = ldaid_fit(xs, y, 3);
  for (int q = 0; q < 3; ++q) {
    const double c = m.means[static_cast<std::size_t>(q)][0];
    const double w = std::exp(m.means[static_cast<std::size_t>(q)][1]);
    const auto p = ldaid_predict_proba(m, IntervalVector({{c - w / 2, c + w / 2}}));
    EXPECT_EQ(argmax_low(p), q + 1);
    double s = 0;
    for (double v : p) s += v;
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(LdaId, EqualMeansGivePriors) {
  RngStream rng(42);
  std::vector<int> y;
  for (int i = 0; i < 100; ++i) y.push_back(i < 30 ? 1 : 2);
  const auto xs = gaussian_ivd(rng, y, {{0, 0}, {0, 0}}, {1, 0.3});
  auto m = ldaid_fit(xs, y, 2);
  m.means[1] = m.means[0];
  m.finalize();
  RngStream probe(1);
  for (int i = 0; i < 20; ++i) {
    const auto p = ldaid_predict_proba(m, testing::random_ivd(probe, 1));
    EXPECT_NEAR(p[0], 0.3, 1e-12);
    EXPECT_NEAR(p[1], 0.7, 1e-12);
  }
}

TEST(LdaId, DegenerateIntervalRejected) {
  std::vector<IntervalVector> xs{IntervalVector({{1, 1}}), IntervalVector({{0, 2}}),
                                 IntervalVector({{3, 4}}), IntervalVector({{5, 7}})};
  std::vector<int> y{1, 1, 2, 2};
  try {
    ldaid_fit(xs, y, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateInterval);
  }
}

TEST(LdaId, FullConfigurationHasHighestLikelihood) {
  RngStream rng(43);
  for (int t = 0; t < 20; ++t) {
    std::vector<int> y;
    for (int i = 0; i < 90; ++i) y.push_back(1 + i % 3);
    const auto xs = gaussian_ivd(rng, y, {{0, 1, 0, 0}, {1, 2, 0.3, 0}, {2, 2, 0.5, 0.2}},
                                 {1, 2, 0.3, 0.5});
    const auto m = ldaid_fit(xs, y, 3);
    for (int c = 2; c <= 4; ++c) {
      EXPECT_GE(m.log_likelihood[0], m.log_likelihood[static_cast<std::size_t>(c - 1)] - 1e-8);
    }
    EXPECT_GE(m.log_likelihood[2], m.log_likelihood[3] - 1e-8);
    EXPECT_GE(m.log_likelihood[1], m.log_likelihood[3] - 1e-8);
  }
}

TEST(LdaId, BicPrefersDiagonalTruth) {
  RngStream rng(44);
  int hits = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<int> y;
    for (int i = 0; i < 500; ++i) y.push_back(1 + i % 2);
    const auto xs = gaussian_ivd(rng, y, {{0, 0, 0, 0}, {1, 1, 0.2, 0.2}}, {1, 1.5, 0.3, 0.4});
    hits += ldaid_fit(xs, y, 2).configuration == 4;
  }
  EXPECT_GE(hits, 90);
}

TEST(LdaId, PosteriorsInvariantToFeaturePermutation) {
  RngStream rng(45);
  std::vector<int> y;
  for (int i = 0; i < 150; ++i) y.push_back(1 + i % 3);
  const auto xs = gaussian_ivd(rng, y, {{0, 0, 0, 0}, {1, 2, 0.2, 0}, {2, 3, 0.4, 0}},
                               {1, 1.5, 0.3, 0.4});
  std::vector<IntervalVector> swapped;
  for (const auto& x : xs) swapped.push_back(IntervalVector({x[1], x[0]}));
  const auto a = ldaid_fit(xs, y, 3), b = ldaid_fit(swapped, y, 3);
  EXPECT_EQ(a.configuration, b.configuration);
  for (std::size_t i = 0; i < 20; ++i) {
    const auto pa = ldaid_predict_proba(a, xs[i]);
    const auto pb = ldaid_predict_proba(b, swapped[i]);
    for (std::size_t q = 0; q < 3; ++q) EXPECT_NEAR(pa[q], pb[q], 1e-9);
  }
}

TEST(FrankHall, DifferenceFormula) {
  const auto p = fh_assemble(std::vector<double>{0.9, 0.4});
  EXPECT_NEAR(p[0], 0.1, 1e-15);
  EXPECT_NEAR(p[1], 0.5, 1e-15);
  EXPECT_NEAR(p[2], 0.4, 1e-15);
}

TEST(FrankHall, ClipAndRenormalize) {
  const auto p = fh_assemble(std::vector<double>{0.3, 0.6});
  EXPECT_NEAR(p[0], 0.7 / 1.3, 1e-12);
  EXPECT_EQ(p[1], 0.0);
  EXPECT_NEAR(p[2], 0.6 / 1.3, 1e-12);
  EXPECT_NEAR(p[0], 0.538, 1e-3);
}

TEST(FrankHall, AlwaysOnSimplex) {
  RngStream rng(50);
  for (int t = 0; t < 10000; ++t) {
    const std::size_t q = 2 + rng.uniform_index(6);
    std::vector<double> exceed(q - 1);
    for (auto& v : exceed) v = rng.uniform();
    const auto p = fh_assemble(exceed);
    ASSERT_EQ(p.size(), q);
    double s = 0;
    for (double v : p) {
      EXPECT_GE(v, 0.0);
      s += v;
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
    // monotone inputs are reproduced without clipping
    std::sort(exceed.begin(), exceed.end(), std::greater<>());
    const auto m = fh_assemble(exceed);
    EXPECT_NEAR(m[0], 1 - exceed[0], 1e-12);
    for (std::size_t j = 1; j + 1 < q; ++j) EXPECT_NEAR(m[j], exceed[j - 1] - exceed[j], 1e-12);
    EXPECT_NEAR(m[q - 1], exceed[q - 2], 1e-12);
  }
}

TEST(FrankHall, GenericStackAndErrors) {
  std::vector<double> xs{0, 1, 2, 3, 4, 5};
  std::vector<int> y{1, 1, 2, 2, 3, 3};
  // sub-model q predicts P(y > q) from a fixed logistic curve
  const auto model = fh_fit(std::span<const double>(xs), std::span<const int>(y), 3,
                            [](std::span<const double>, std::span<const int> b) {
                              int low = 0;
                              for (int v : b) low += v == 1;
                              return static_cast<double>(low) - 0.5;
                            });
  ASSERT_EQ(model.stack.size(), 2u);
  const auto p = fh_predict_proba(model, 3.0, [](double c, double x) { return logistic(x - c); });
  EXPECT_NEAR(p[2], logistic(3.0 - 3.5), 1e-12);

  std::vector<int> gap{1, 1, 3, 3, 3, 3};
  EXPECT_NO_THROW(fh_fit(std::span<const double>(xs), std::span<const int>(gap), 3,
                         [](std::span<const double>, std::span<const int>) { return 0.0; }));
  std::vector<int> top{1, 1, 1, 1, 1, 1};
  try {
    fh_fit(std::span<const double>(xs), std::span<const int>(top), 3,
           [](std::span<const double>, std::span<const int>) { return 0.0; });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptySplit);
  }
  try {
    fh_fit(std::span<const double>(xs), std::span<const int>(y), 3,
           [](std::span<const double>, std::span<const int> b) -> double {
             if (b[2] == 1) fail(ErrorCode::SingularCovariance, "boom");
             return 0.0;
           });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FitFailed);
    EXPECT_NE(std::string(e.what()).find("split 2"), std::string::npos);
  }
}

TEST(FrankHall, LdaIdStackOnSimplex) {
  RngStream rng(51);
  std::vector<int> y;
  for (int i = 0; i < 240; ++i) y.push_back(1 + i % 4);
  const auto xs = gaussian_ivd(rng, y, {{0, 0}, {2, 0.2}, {4, 0.4}, {6, 0.6}}, {1.2, 0.3});
  const auto m = fh_lda_id_fit(xs, y, 4);
  EXPECT_EQ(m.stack.size(), 3u);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto p = fh_lda_id_predict_proba(m, xs[i]);
    double s = 0;
    for (double v : p) s += v;
    EXPECT_NEAR(s, 1.0, 1e-12);
    correct += argmax_low(p) == y[i];
  }
  EXPECT_GT(correct, 120u);
}

}  // namespace
}  // namespace ivord
