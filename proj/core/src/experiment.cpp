#include "ivord/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ivord/error.hpp"
#include "ivord/parallel.hpp"

namespace ivord {

using nlohmann::json;

Summary summarize(const std::vector<std::optional<double>>& values) {
  Summary s;
  double sum = 0.0;
  for (const auto& v : values) {
    if (!v) {
      ++s.excluded;
      continue;
    }
    ++s.n;
    sum += *v;
  }
  if (s.n == 0) return s;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (const auto& v : values)
      if (v) ss += (*v - s.mean) * (*v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  return s;
}

namespace {

ReplicateRecord run_replicate(const DataSource& source, const McOptions& opt, int rep) {
  const RngStream root(opt.seed);
  const RngStream rep_rng = root.split(static_cast<std::uint64_t>(rep));
  LabeledDataset data;
  if (const auto* design = std::get_if<SyntheticDesign>(&source)) {
    RngStream data_rng = rep_rng.split("data");
    data = gen_synthetic(*design, data_rng);
  } else {
    data = std::get<LabeledDataset>(source);
  }
  RngStream split_rng = rep_rng.split("split");
  const auto split = split_indices(data, opt.train_frac, split_rng);
  const auto train = data.subset(split.train);
  const auto test = data.subset(split.test);

  ReplicateRecord rec;
  rec.replicate = rep;
  rec.split_hash = split_hash(split);
  rec.n_train = train.size();
  rec.n_test = test.size();
  for (Method m : opt.methods) {
    CellResult cell;
    try {
      const auto model =
          fit_method(m, train, opt.config, rep_rng.split("method:" + method_name(m)));
      std::vector<int> pred;
      pred.reserve(test.size());
      for (const auto& x : test.observations) pred.push_back(model->predict(x));
      cell.metrics = evaluate(pred, test.labels, data.num_classes);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::FitFailed && e.code() != ErrorCode::NumericalFailure &&
          e.code() != ErrorCode::SingularCovariance && e.code() != ErrorCode::DegenerateKernel) {
        throw;
      }
      cell.error = e.what();
    }
    rec.cells.push_back(std::move(cell));
  }
  return rec;
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json summary_json(const Summary& s) {
  return {{"n", s.n}, {"excluded", s.excluded}, {"mean", s.mean}, {"sd", s.sd}};
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

ExperimentReport run_mc(const DataSource& source, const McOptions& options) {
  if (options.methods.empty()) fail(ErrorCode::InvalidParameter, "no methods selected");
  if (options.reps < 1) fail(ErrorCode::InvalidParameter, "reps must be positive");

  ExperimentReport report;
  report.options = options;
  if (const auto* design = std::get_if<SyntheticDesign>(&source)) {
    report.source = design->id;
    report.num_classes = static_cast<int>(design->classes.size());
  } else {
    const auto& data = std::get<LabeledDataset>(source);
    validate_training(data);
    report.source = "dataset";
    report.num_classes = data.num_classes;
  }

  report.replicates.resize(static_cast<std::size_t>(options.reps));
  parallel_for(report.replicates.size(), options.jobs, [&](std::size_t r) {
    report.replicates[r] = run_replicate(source, options, static_cast<int>(r));
  });

  const std::size_t nm = options.methods.size();
  const auto q = static_cast<std::size_t>(report.num_classes);
  std::vector<std::vector<std::optional<double>>> acc(nm);
  for (std::size_t m = 0; m < nm; ++m) {
    MethodSummary ms{options.methods[m], {}, {}, {}, {}};
    std::vector<std::vector<std::optional<double>>> pr(q), rc(q), f1(q);
    for (const auto& rec : report.replicates) {
      const auto& cell = rec.cells[m];
      acc[m].push_back(cell.metrics ? std::optional<double>(cell.metrics->accuracy) : std::nullopt);
      for (std::size_t c = 0; c < q; ++c) {
        const ClassMetrics none{};
        const auto& cm = cell.metrics ? cell.metrics->per_class[c] : none;
        pr[c].push_back(cm.precision);
        rc[c].push_back(cm.recall);
        f1[c].push_back(cm.f1);
      }
    }
    ms.accuracy = summarize(acc[m]);
    for (std::size_t c = 0; c < q; ++c) {
      ms.precision.push_back(summarize(pr[c]));
      ms.recall.push_back(summarize(rc[c]));
      ms.f1.push_back(summarize(f1[c]));
    }
    report.summaries.push_back(std::move(ms));
  }
  for (std::size_t a = 0; a < nm; ++a) {
    for (std::size_t b = a + 1; b < nm; ++b) {
      std::vector<std::optional<double>> d;
      for (std::size_t r = 0; r < acc[a].size(); ++r) {
        if (acc[a][r] && acc[b][r]) {
          d.push_back(*acc[a][r] - *acc[b][r]);
        } else {
          d.push_back(std::nullopt);
        }
      }
      report.differences.push_back({a, b, summarize(d)});
    }
  }
  return report;
}

json ExperimentReport::to_json() const {
  json methods = json::array();
  for (Method m : options.methods) methods.push_back(method_name(m));

  json reps = json::array();
  for (const auto& rec : replicates) {
    json cells = json::array();
    for (std::size_t m = 0; m < rec.cells.size(); ++m) {
      const auto& cell = rec.cells[m];
      json c = {{"method", method_name(options.methods[m])}};
      if (!cell.metrics) {
        c["accuracy"] = nullptr;
        c["error"] = cell.error;
      } else {
        const auto& mt = *cell.metrics;
        c["accuracy"] = mt.accuracy;
        c["confusion"] = mt.confusion;
        json pc = json::array();
        for (const auto& k : mt.per_class) {
          pc.push_back({{"precision", opt_json(k.precision)},
                        {"recall", opt_json(k.recall)},
                        {"f1", opt_json(k.f1)}});
        }
        c["per_class"] = pc;
      }
      cells.push_back(std::move(c));
    }
    reps.push_back({{"replicate", rec.replicate}, {"split_hash", hex64(rec.split_hash)},
                    {"n_train", rec.n_train}, {"n_test", rec.n_test}, {"cells", cells}});
  }

  json agg = json::array();
  for (const auto& s : summaries) {
    json pr = json::array(), rc = json::array(), f1 = json::array();
    for (std::size_t c = 0; c < s.precision.size(); ++c) {
      pr.push_back(summary_json(s.precision[c]));
      rc.push_back(summary_json(s.recall[c]));
      f1.push_back(summary_json(s.f1[c]));
    }
    agg.push_back({{"method", method_name(s.method)}, {"accuracy", summary_json(s.accuracy)},
                   {"precision", pr}, {"recall", rc}, {"f1", f1}});
  }

  json diffs = json::array();
  for (const auto& d : differences) {
    diffs.push_back({{"a", method_name(options.methods[d.a])},
                     {"b", method_name(options.methods[d.b])},
                     {"difference", summary_json(d.difference)}});
  }

  return {{"source", source},
          {"num_classes", num_classes},
          {"seed", options.seed},
          {"reps", options.reps},
          {"train_frac", options.train_frac},
          {"methods", methods},
          {"config", ivord::to_json(options.config)},
          {"replicates", reps},
          {"aggregate", agg},
          {"paired_differences", diffs}};
}

std::string ExperimentReport::aggregate_csv() const {
  std::ostringstream out;
  out << "method,n,failed,mean,sd\n";
  for (const auto& s : summaries) {
    out << method_name(s.method) << ',' << s.accuracy.n << ',' << s.accuracy.excluded << ','
        << fixed(100.0 * s.accuracy.mean, 4) << ',' << fixed(100.0 * s.accuracy.sd, 4) << '\n';
  }
  return out.str();
}

std::string ExperimentReport::table() const {
  std::ostringstream out;
  out << "method       accuracy (sd)\n";
  for (const auto& s : summaries) {
    std::string name = method_name(s.method);
    name.resize(std::max<std::size_t>(name.size(), 12), ' ');
    out << name << ' ' << fixed(100.0 * s.accuracy.mean, 1) << " ("
        << fixed(100.0 * s.accuracy.sd, 1) << ")";
    if (s.accuracy.excluded > 0) out << "  [" << s.accuracy.excluded << " failed]";
    out << '\n';
  }
  return out.str();
}

}  // namespace ivord
