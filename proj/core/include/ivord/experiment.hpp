#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ivord/evaluation.hpp"
#include "ivord/model.hpp"
#include "ivord/synthetic.hpp"

namespace ivord {

/// Either a design regenerated every replicate or a fixed dataset re-split
/// every replicate.
using DataSource = std::variant<SyntheticDesign, LabeledDataset>;

struct McOptions {
  std::vector<Method> methods;
  int reps = 50;
  double train_frac = 0.8;
  std::uint64_t seed = 1;
  MethodConfig config{};
  unsigned jobs = 1;  // replicates run concurrently; output does not depend on it
};

struct CellResult {
  std::optional<ReplicateMetrics> metrics;  // empty when the fit failed
  std::string error;
};

struct ReplicateRecord {
  int replicate = 0;
  std::uint64_t split_hash = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::vector<CellResult> cells;  // one per method, in McOptions order
};

/// Mean and sd (divisor n-1) over the available values, with the number of
/// values left out.
struct Summary {
  std::size_t n = 0;
  std::size_t excluded = 0;
  double mean = 0.0;
  double sd = 0.0;
};

Summary summarize(const std::vector<std::optional<double>>& values);

struct MethodSummary {
  Method method;
  Summary accuracy;
  std::vector<Summary> precision, recall, f1;  // per class
};

struct PairedDifference {
  std::size_t a = 0, b = 0;  // indices into the method list
  Summary difference;        // accuracy(a) - accuracy(b) over shared replicates
};

struct ExperimentReport {
  std::string source;
  int num_classes = 0;
  McOptions options;
  std::vector<ReplicateRecord> replicates;
  std::vector<MethodSummary> summaries;
  std::vector<PairedDifference> differences;

  nlohmann::json to_json() const;
  /// method,n,failed,mean,sd  (accuracy in percent)
  std::string aggregate_csv() const;
  /// Human-readable "method  mean (sd)" table.
  std::string table() const;
};

ExperimentReport run_mc(const DataSource& source, const McOptions& options);

}  // namespace ivord
