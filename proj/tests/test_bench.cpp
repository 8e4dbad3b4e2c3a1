#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "ivord/error.hpp"
#include "ivord/evaluation.hpp"
#include "ivord/experiment.hpp"
#include "ivord/model.hpp"
#include "ivord/synthetic.hpp"
#include "support/generators.hpp"

namespace ivord {
namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidParameter;
}

TEST(Synthetic, DesignParameters) {
  const auto three = SyntheticDesign::three_class();
  ASSERT_EQ(three.classes.size(), 3u);
  EXPECT_EQ(three.classes[0].mu1, 25);
  EXPECT_EQ(three.classes[0].mu2, 50);
  EXPECT_EQ(three.classes[0].sigma1, 6);
  EXPECT_EQ(three.classes[1].mu1, 38);
  EXPECT_EQ(three.classes[2].sigma2, 5);
  const auto four = SyntheticDesign::four_class();
  ASSERT_EQ(four.classes.size(), 4u);
  EXPECT_EQ(four.classes[1].mu1, 30);
  EXPECT_EQ(four.classes[1].mu2, 45);
  EXPECT_EQ(four.classes[3].sigma1, 2);
  EXPECT_EQ(four.classes[3].sigma2, 3);
  for (const auto& d : {three, four}) {
    EXPECT_EQ(d.samples_per_class, 100);
    for (const auto& c : d.classes) EXPECT_EQ(c.rho, 0);
  }
  EXPECT_FALSE(SyntheticDesign::by_name("five_class").has_value());
}

TEST(Synthetic, MomentsAndWidths) {
  for (auto design : {SyntheticDesign::three_class(), SyntheticDesign::four_class()}) {
    design.samples_per_class = 10000;
    RngStream rng(11);
    const auto d = gen_synthetic(design, rng);
    ASSERT_EQ(d.size(), 10000 * design.classes.size());
    for (std::size_t q = 0; q < design.classes.size(); ++q) {
      double m1 = 0, m2 = 0;
      std::vector<std::pair<double, double>> c;
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (d.labels[i] != static_cast<int>(q) + 1) continue;
        const auto& x = std::get<IntervalVector>(d.observations[i]);
        for (const auto& iv : x.features) {
          EXPECT_GE(iv.width(), 1.0);
          EXPECT_LE(iv.width(), 5.0);
        }
        c.emplace_back(x[0].midpoint(), x[1].midpoint());
        m1 += x[0].midpoint();
        m2 += x[1].midpoint();
      }
      const double n = static_cast<double>(c.size());
      m1 /= n;
      m2 /= n;
      const auto& law = design.classes[q];
      EXPECT_NEAR(m1, law.mu1, 0.2);
      EXPECT_NEAR(m2, law.mu2, 0.2);
      double s11 = 0, s22 = 0, s12 = 0;
      for (auto [a, b] : c) {
        s11 += (a - m1) * (a - m1) / (n - 1);
        s22 += (b - m2) * (b - m2) / (n - 1);
        s12 += (a - m1) * (b - m2) / (n - 1);
      }
      EXPECT_NEAR(s11 / (law.sigma1 * law.sigma1), 1.0, 0.15);
      EXPECT_NEAR(s22 / (law.sigma2 * law.sigma2), 1.0, 0.15);
      // zero design correlation: off-diagonal within 15% of the diagonal scale
      EXPECT_LT(std::abs(s12), 0.15 * law.sigma1 * law.sigma2);
    }
  }
}

TEST(Synthetic, Deterministic) {
  RngStream a(5), b(5);
  const auto x = gen_synthetic(SyntheticDesign::three_class(), a);
  const auto y = gen_synthetic(SyntheticDesign::three_class(), b);
  ASSERT_EQ(x.size(), 300u);
  EXPECT_EQ(x.labels, y.labels);
  EXPECT_EQ(x.ids, y.ids);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(std::get<IntervalVector>(x.observations[i]).features,
              std::get<IntervalVector>(y.observations[i]).features);
  }
}

TEST(Split, SizesAndPartition) {
  for (auto design : {SyntheticDesign::three_class(), SyntheticDesign::four_class()}) {
    RngStream rng(12);
    const auto d = gen_synthetic(design, rng);
    const auto s = split_indices(d, 0.8, rng);
    const std::size_t n = d.size();
    EXPECT_EQ(s.train.size(), n * 4 / 5);
    EXPECT_EQ(s.test.size(), n / 5);
    std::set<std::size_t> all(s.train.begin(), s.train.end());
    all.insert(s.test.begin(), s.test.end());
    EXPECT_EQ(all.size(), n);
    EXPECT_EQ(*all.rbegin(), n - 1);
  }
}

TEST(Split, Preconditions) {
  RngStream rng(13);
  const auto d = gen_synthetic(SyntheticDesign::three_class(), rng);
  EXPECT_EQ(code_of([&] { split_indices(d, 1.0, rng); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([&] { split_indices(d, 0.0, rng); }), ErrorCode::InvalidParameter);
  // one member of class 3: the training part holds it only if it is drawn
  LabeledDataset tiny;
  tiny.num_classes = 3;
  for (int i = 0; i < 5; ++i) {
    tiny.ids.push_back("t" + std::to_string(i));
    tiny.observations.emplace_back(IntervalVector({{double(i), double(i) + 1}}));
    tiny.labels.push_back(i < 2 ? 1 : i < 4 ? 2 : 3);
  }
  // train_frac 0.2 gives one training row, which cannot cover three classes
  EXPECT_EQ(code_of([&] { split_indices(tiny, 0.2, rng); }), ErrorCode::SplitFailed);
  const auto ok = split_indices(tiny, 0.8, rng);
  std::set<int> seen;
  for (auto i : ok.train) seen.insert(tiny.labels[i]);
  EXPECT_EQ(seen.size(), 3u);
}

TEST(Split, HashIdentifiesSplit) {
  TrainTestSplit a{{0, 1, 2}, {3}}, b{{0, 1, 2}, {3}}, c{{0, 1, 3}, {2}};
  EXPECT_EQ(split_hash(a), split_hash(b));
  EXPECT_NE(split_hash(a), split_hash(c));
}

TEST(Evaluate, HandExample) {
  const std::vector<int> truth{1, 1, 2, 2}, pred{1, 2, 1, 2};
  const auto m = evaluate(pred, truth, 2);
  EXPECT_EQ(m.accuracy, 0.5);
  EXPECT_EQ(*m.per_class[0].precision, 0.5);
  EXPECT_EQ(*m.per_class[0].recall, 0.5);
  EXPECT_EQ(*m.per_class[0].f1, 0.5);
  EXPECT_EQ(m.confusion[0][1], 1u);
}

TEST(Evaluate, PerfectAndAbsent) {
  const std::vector<int> truth{1, 2, 3, 3};
  const auto perfect = evaluate(truth, truth, 3);
  EXPECT_EQ(perfect.accuracy, 1.0);
  for (const auto& c : perfect.per_class) {
    EXPECT_EQ(*c.precision, 1.0);
    EXPECT_EQ(*c.recall, 1.0);
    EXPECT_EQ(*c.f1, 1.0);
  }
  const std::vector<int> pred{1, 1, 3, 3};
  const auto m = evaluate(pred, truth, 3);
  EXPECT_FALSE(m.per_class[1].precision.has_value());
  EXPECT_EQ(*m.per_class[1].recall, 0.0);
  EXPECT_FALSE(m.per_class[1].f1.has_value());
  EXPECT_EQ(code_of([&] { evaluate(pred, std::vector<int>{1, 2}, 3); }), ErrorCode::ShapeMismatch);
}

TEST(Evaluate, ConfusionInvariants) {
  RngStream rng(14);
  for (int t = 0; t < 500; ++t) {
    const int q = 2 + static_cast<int>(rng.uniform_index(4));
    const std::size_t n = 1 + rng.uniform_index(50);
    std::vector<int> truth(n), pred(n);
    for (std::size_t i = 0; i < n; ++i) {
      truth[i] = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(q)));
      pred[i] = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(q)));
    }
    const auto m = evaluate(pred, truth, q);
    std::size_t total = 0, trace = 0;
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        total += m.confusion[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        if (a == b) trace += m.confusion[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      }
    EXPECT_EQ(total, n);
    EXPECT_EQ(m.accuracy, static_cast<double>(trace) / static_cast<double>(n));
  }
}

TEST(Summarize, MatchesSinglePassOracle) {
  RngStream rng(15);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::optional<double>> v;
    const std::size_t n = 2 + rng.uniform_index(80);
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.uniform() < 0.1) {
        v.push_back(std::nullopt);
      } else {
        v.push_back(rng.uniform(0.5, 1.0));
      }
    }
    // Welford
    double mean = 0, m2 = 0;
    std::size_t k = 0, missing = 0;
    for (const auto& x : v) {
      if (!x) {
        ++missing;
        continue;
      }
      ++k;
      const double delta = *x - mean;
      mean += delta / static_cast<double>(k);
      m2 += delta * (*x - mean);
    }
    const auto s = summarize(v);
    EXPECT_EQ(s.n, k);
    EXPECT_EQ(s.excluded, missing);
    if (k == 0) continue;
    EXPECT_NEAR(s.mean, mean, 1e-12);
    if (k > 1) {
      EXPECT_NEAR(s.sd, std::sqrt(m2 / static_cast<double>(k - 1)), 1e-12);
    }
  }
}

TEST(Registry, NineMethodsSixCurveCapable) {
  EXPECT_EQ(all_methods().size(), 9u);
  std::set<std::string> names;
  for (Method m : all_methods()) {
    names.insert(method_name(m));
    EXPECT_EQ(method_from_name(method_name(m)), m);
  }
  EXPECT_EQ(names, (std::set<std::string>{"polr", "of", "lda_id", "fh_lda_id", "di_wknn",
                                          "kpca_polr", "kiof", "polr_i", "polr_i2"}));
  std::set<std::string> curves;
  for (Method m : curve_methods()) curves.insert(method_name(m));
  EXPECT_EQ(curves, (std::set<std::string>{"of", "lda_id", "fh_lda_id", "di_wknn", "kpca_polr",
                                           "kiof"}));
  EXPECT_FALSE(method_from_name("kirf").has_value());
}

McOptions quick(std::vector<Method> methods, int reps = 4) {
  McOptions o;
  o.methods = std::move(methods);
  o.reps = reps;
  o.seed = 3;
  o.config.of.n_sets = 4;
  o.config.of.trees_per_set = 10;
  o.config.of.n_best = 2;
  o.config.of.trees_final = 30;
  return o;
}

TEST(RunMc, DuplicateMethodsAreBlocked) {
  const auto r = run_mc(SyntheticDesign::three_class(),
                        quick({Method::DiWknn, Method::Kiof, Method::DiWknn, Method::Kiof}));
  ASSERT_EQ(r.replicates.size(), 4u);
  for (const auto& rec : r.replicates) {
    EXPECT_EQ(rec.n_train, 240u);
    EXPECT_EQ(rec.n_test, 60u);
    EXPECT_EQ(rec.cells[0].metrics->accuracy, rec.cells[2].metrics->accuracy);
    EXPECT_EQ(rec.cells[1].metrics->accuracy, rec.cells[3].metrics->accuracy);
    for (const auto& cell : rec.cells) {
      std::size_t total = 0;
      for (const auto& row : cell.metrics->confusion)
        for (auto c : row) total += c;
      EXPECT_EQ(total, rec.n_test);
    }
  }
  for (const auto& d : r.differences) {
    if (r.options.methods[d.a] == r.options.methods[d.b]) {
      EXPECT_EQ(d.difference.mean, 0.0);
      EXPECT_EQ(d.difference.sd, 0.0);
    }
  }
  EXPECT_EQ(r.differences.size(), 6u);
}

TEST(RunMc, AddingMethodsLeavesOthersUnchanged) {
  const auto a = run_mc(SyntheticDesign::three_class(), quick({Method::Kiof}, 3));
  const auto b = run_mc(SyntheticDesign::three_class(), quick({Method::Polr, Method::Of, Method::Kiof}, 3));
  for (std::size_t r = 0; r < 3; ++r) {
    EXPECT_EQ(a.replicates[r].split_hash, b.replicates[r].split_hash);
    EXPECT_EQ(a.replicates[r].cells[0].metrics->confusion, b.replicates[r].cells[2].metrics->confusion);
  }
  std::set<std::uint64_t> hashes;
  for (const auto& rec : a.replicates) hashes.insert(rec.split_hash);
  EXPECT_EQ(hashes.size(), 3u);
}

TEST(RunMc, ByteIdenticalAcrossJobs) {
  auto opt = quick({Method::Polr, Method::LdaId, Method::Of, Method::Kiof}, 5);
  const auto one = run_mc(SyntheticDesign::four_class(), opt).to_json().dump();
  opt.jobs = 3;
  const auto three = run_mc(SyntheticDesign::four_class(), opt).to_json().dump();
  EXPECT_EQ(one, three);
  opt.config.of.jobs = 2;
  EXPECT_EQ(run_mc(SyntheticDesign::four_class(), opt).to_json().dump(), one);
}

TEST(RunMc, FixedDatasetIsResplit) {
  RngStream rng(16);
  const auto d = testing::shifted_classes(rng, 3, 30, 3.0);
  const auto r = run_mc(d, quick({Method::LdaId}, 6));
  std::set<std::uint64_t> hashes;
  for (const auto& rec : r.replicates) {
    hashes.insert(rec.split_hash);
    EXPECT_EQ(rec.n_train, 72u);
  }
  EXPECT_EQ(hashes.size(), 6u);
  EXPECT_GT(r.summaries[0].accuracy.mean, 0.6);
}

TEST(RunMc, FitFailuresAreRecordedAsMissing) {
  // x perfectly orders the classes: POLR separates, wkNN fits normally
  LabeledDataset d;
  d.num_classes = 2;
  for (int i = 0; i < 40; ++i) {
    d.ids.push_back("p" + std::to_string(i));
    const double c = i < 20 ? i : 100.0 + i;
    d.observations.emplace_back(IntervalVector({{c, c + 1}}));
    d.labels.push_back(i < 20 ? 1 : 2);
  }
  const auto r = run_mc(d, quick({Method::Polr, Method::DiWknn}, 3));
  for (const auto& rec : r.replicates) {
    EXPECT_FALSE(rec.cells[0].metrics.has_value());
    EXPECT_NE(rec.cells[0].error.find("FitFailed"), std::string::npos);
    EXPECT_TRUE(rec.cells[1].metrics.has_value());
  }
  EXPECT_EQ(r.summaries[0].accuracy.excluded, 3u);
  EXPECT_EQ(r.summaries[1].accuracy.mean, 1.0);
  EXPECT_NE(r.aggregate_csv().find("polr,0,3,"), std::string::npos);
  EXPECT_TRUE(r.to_json()["replicates"][0]["cells"][0]["accuracy"].is_null());
}

TEST(RunMc, ReportLayout) {
  const auto r = run_mc(SyntheticDesign::three_class(), quick({Method::Polr, Method::DiWknn}, 2));
  const auto csv = r.aggregate_csv();
  EXPECT_EQ(csv.rfind("method,n,failed,mean,sd\npolr,2,0,", 0), 0u);
  EXPECT_NE(csv.find("\ndi_wknn,2,0,"), std::string::npos);
  const auto table = r.table();
  EXPECT_NE(table.find("polr"), std::string::npos);
  const auto j = r.to_json();
  EXPECT_EQ(j["source"], "three_class");
  EXPECT_EQ(j["replicates"].size(), 2u);
  EXPECT_EQ(j["replicates"][0]["split_hash"].get<std::string>().size(), 16u);
  EXPECT_EQ(j["aggregate"][0]["f1"].size(), 3u);
}

}  // namespace
}  // namespace ivord
