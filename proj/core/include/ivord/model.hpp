#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ivord/dataset.hpp"
#include "ivord/kpca.hpp"
#include "ivord/ordinal_forest.hpp"
#include "ivord/polr.hpp"
#include "ivord/rng.hpp"
#include "ivord/wknn.hpp"

namespace ivord {

/// The nine compared classifiers. POLR and OF see interval midpoints; the
/// others use the interval structure.
enum class Method { Polr, Of, LdaId, FhLdaId, DiWknn, KpcaPolr, Kiof, PolrI, PolrI2 };

std::string method_name(Method method);
std::optional<Method> method_from_name(const std::string& name);
const std::vector<Method>& all_methods();
/// Methods run on interval-valued curves: OF, LDA-ID and FH+LDA-ID through a
/// subsampled vectorization, DI+wkNN, KPCA+POLR and KIOF natively.
const std::vector<Method>& curve_methods();
bool curve_capable(Method method);
bool uses_rng(Method method);

struct MethodConfig {
  double gamma = 1.0;
  WknnConfig wknn{};
  OfParams of{};
  KpcaSelection kpca{};
  PolrOptions polr{};
  std::size_t subsample_step = 1;  // applied when a vector-only method sees curves
};

nlohmann::json to_json(const MethodConfig& config);

/// Shape of the observations a model was fitted on.
struct InputShape {
  DataKind kind = DataKind::Vector;
  std::size_t num_features = 0;  // vectors
  std::vector<double> grid;      // curves
  std::size_t num_channels = 0;  // curves
  std::size_t subsample_step = 1;

  static InputShape of(const LabeledDataset& data, std::size_t subsample_step);
  /// Throws ShapeMismatch when x does not fit.
  void check(const Observation& x) const;
  /// Vector view for vector-only methods.
  IntervalVector vectorize(const Observation& x) const;
};

/// Common fit/predict surface for all classifiers.
class OrdinalModel {
 public:
  virtual ~OrdinalModel() = default;

  virtual Method method() const = 0;
  virtual int num_classes() const = 0;
  virtual bool probabilistic() const { return false; }
  /// Throws InvalidParameter for hard-label methods.
  virtual std::vector<double> predict_proba(const Observation& x) const;
  virtual int predict(const Observation& x) const;
  virtual nlohmann::json parameters_json() const = 0;

  const InputShape& input() const noexcept { return input_; }

 protected:
  InputShape input_;
};

/// Fits `method` on labeled training data. Propagates FitFailed and input
/// errors from the underlying classifier.
std::unique_ptr<OrdinalModel> fit_method(Method method, const LabeledDataset& train,
                                         const MethodConfig& config, const RngStream& rng);

/// Versioned record: {"format", "version", "method", "num_classes", "input", "model"}.
nlohmann::json save_model(const OrdinalModel& model);
/// Throws SchemaError on an unknown format, version or method.
std::unique_ptr<OrdinalModel> load_model(const nlohmann::json& record);

}  // namespace ivord
