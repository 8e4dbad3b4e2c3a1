#include "ivord/model.hpp"

#include <algorithm>
#include <string>

#include "ivord/error.hpp"
#include "ivord/frank_hall.hpp"
#include "ivord/kiof.hpp"
#include "ivord/lda_id.hpp"

namespace ivord {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "ivord-model";
constexpr int kVersion = 1;

struct MethodInfo {
  Method method;
  const char* name;
  bool curves;
  bool rng;
};

constexpr MethodInfo kMethods[] = {
    {Method::Polr, "polr", false, false},       {Method::Of, "of", true, true},
    {Method::LdaId, "lda_id", true, false},     {Method::FhLdaId, "fh_lda_id", true, false},
    {Method::DiWknn, "di_wknn", true, false},   {Method::KpcaPolr, "kpca_polr", true, false},
    {Method::Kiof, "kiof", true, true},         {Method::PolrI, "polr_i", false, false},
    {Method::PolrI2, "polr_i2", false, false},
};

const MethodInfo& info(Method m) {
  for (const auto& i : kMethods)
    if (i.method == m) return i;
  fail(ErrorCode::InvalidParameter, "unknown method");
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorCode::SchemaError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::SchemaError, std::string("field '") + key + "': " + e.what());
  }
}

// --- JSON encodings -------------------------------------------------------

json matrix_json(const Matrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()},
          {"data", std::vector<double>(m.data().begin(), m.data().end())}};
}

Matrix matrix_from(const json& j) {
  const auto rows = field<std::size_t>(j, "rows");
  const auto cols = field<std::size_t>(j, "cols");
  const auto data = field<std::vector<double>>(j, "data");
  if (data.size() != rows * cols) fail(ErrorCode::SchemaError, "matrix data size");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = data[i * cols + c];
  return m;
}

json observation_json(const Observation& obs) {
  if (const auto* x = std::get_if<IntervalVector>(&obs)) {
    json arr = json::array();
    for (const auto& iv : x->features) arr.push_back({iv.lower, iv.upper});
    return arr;
  }
  const auto& c = std::get<IntervalCurve>(obs);
  json channels = json::array();
  for (const auto& ch : c.channels) channels.push_back({{"lower", ch.lower}, {"upper", ch.upper}});
  return {{"grid", c.grid}, {"channels", channels}};
}

Observation observation_from(const json& j) {
  if (j.is_array()) {
    IntervalVector x;
    for (const auto& pair : j) {
      const auto b = pair.get<std::vector<double>>();
      if (b.size() != 2) fail(ErrorCode::SchemaError, "interval must be [lower, upper]");
      x.features.push_back({b[0], b[1]});
    }
    return x;
  }
  IntervalCurve c;
  c.grid = field<std::vector<double>>(j, "grid");
  for (const auto& ch : j.at("channels")) {
    c.channels.push_back({field<std::vector<double>>(ch, "lower"),
                          field<std::vector<double>>(ch, "upper")});
  }
  return c;
}

json observations_json(std::span<const Observation> obs) {
  json arr = json::array();
  for (const auto& o : obs) arr.push_back(observation_json(o));
  return arr;
}

std::vector<Observation> observations_from(const json& j) {
  std::vector<Observation> out;
  for (const auto& o : j) out.push_back(observation_from(o));
  return out;
}

json polr_json(const PolrModel& m) {
  return {{"thresholds", m.thresholds},
          {"coefficients", m.coefficients},
          {"recipe", to_string(m.recipe)}};
}

PolrModel polr_from(const json& j) {
  PolrModel m;
  m.thresholds = field<std::vector<double>>(j, "thresholds");
  m.coefficients = field<std::vector<double>>(j, "coefficients");
  m.recipe = feature_recipe_from_string(field<std::string>(j, "recipe"));
  return m;
}

json lda_json(const LdaIdModel& m) {
  return {{"num_features", m.num_features}, {"means", m.means},
          {"covariance", matrix_json(m.covariance)}, {"priors", m.priors},
          {"configuration", m.configuration}, {"log_likelihood", m.log_likelihood},
          {"bic", m.bic}};
}

LdaIdModel lda_from(const json& j) {
  LdaIdModel m;
  m.num_features = field<std::size_t>(j, "num_features");
  m.means = field<std::vector<std::vector<double>>>(j, "means");
  m.covariance = matrix_from(j.at("covariance"));
  m.priors = field<std::vector<double>>(j, "priors");
  m.configuration = field<int>(j, "configuration");
  m.log_likelihood = field<std::array<double, kLdaIdConfigurations>>(j, "log_likelihood");
  m.bic = field<std::array<double, kLdaIdConfigurations>>(j, "bic");
  m.finalize();
  return m;
}

json forest_json(const ForestModel& f) {
  json trees = json::array();
  for (const auto& t : f.trees) {
    std::vector<int> feature, left, right;
    std::vector<double> threshold, value;
    for (const auto& n : t.nodes) {
      feature.push_back(n.feature);
      threshold.push_back(n.threshold);
      left.push_back(n.left);
      right.push_back(n.right);
      value.push_back(n.value);
    }
    trees.push_back({{"feature", feature}, {"threshold", threshold}, {"left", left},
                     {"right", right}, {"value", value}});
  }
  return {{"num_features", f.num_features}, {"mtry", f.mtry}, {"min_leaf", f.min_leaf},
          {"trees", trees}};
}

ForestModel forest_from(const json& j) {
  ForestModel f;
  f.num_features = field<std::size_t>(j, "num_features");
  f.mtry = field<int>(j, "mtry");
  f.min_leaf = field<int>(j, "min_leaf");
  for (const auto& t : j.at("trees")) {
    const auto feature = field<std::vector<int>>(t, "feature");
    const auto threshold = field<std::vector<double>>(t, "threshold");
    const auto left = field<std::vector<int>>(t, "left");
    const auto right = field<std::vector<int>>(t, "right");
    const auto value = field<std::vector<double>>(t, "value");
    const std::size_t n = feature.size();
    if (threshold.size() != n || left.size() != n || right.size() != n || value.size() != n) {
      fail(ErrorCode::SchemaError, "tree node arrays differ in length");
    }
    RegressionTree tree;
    for (std::size_t i = 0; i < n; ++i) {
      const bool leaf = feature[i] < 0;
      const auto in_range = [&](int c) { return c > 0 && static_cast<std::size_t>(c) < n; };
      if (!leaf && (!in_range(left[i]) || !in_range(right[i]) ||
                    static_cast<std::size_t>(feature[i]) >= f.num_features)) {
        fail(ErrorCode::SchemaError, "tree node references out of range");
      }
      tree.nodes.push_back({feature[i], threshold[i], left[i], right[i], value[i]});
    }
    if (tree.nodes.empty()) fail(ErrorCode::SchemaError, "empty tree");
    f.trees.push_back(std::move(tree));
  }
  if (f.trees.empty()) fail(ErrorCode::SchemaError, "forest has no trees");
  return f;
}

json of_json(const OfModel& m) {
  json candidates = json::array();
  for (const auto& c : m.candidates) {
    candidates.push_back({{"borders", c.borders}, {"oob_accuracy", c.oob_accuracy}});
  }
  return {{"num_classes", m.num_classes}, {"borders", m.borders}, {"scores", m.scores},
          {"candidates", candidates}, {"forest", forest_json(m.forest)}};
}

OfModel of_from(const json& j) {
  OfModel m;
  m.num_classes = field<int>(j, "num_classes");
  m.borders = field<std::vector<double>>(j, "borders");
  m.scores = field<std::vector<double>>(j, "scores");
  for (const auto& c : j.at("candidates")) {
    ScoreSet s;
    s.borders = field<std::vector<double>>(c, "borders");
    s.oob_accuracy = field<double>(c, "oob_accuracy");
    m.candidates.push_back(std::move(s));
  }
  m.forest = forest_from(j.at("forest"));
  if (m.borders.size() != static_cast<std::size_t>(m.num_classes) + 1) {
    fail(ErrorCode::SchemaError, "OF border count differs from class count");
  }
  return m;
}

json kpca_json(const KpcaModel& m) {
  return {{"gamma", m.gamma}, {"train", observations_json(m.train)},
          {"eigenvalues", m.eigenvalues}, {"eigenvectors", matrix_json(m.eigenvectors)},
          {"column_means", m.column_means}, {"grand_mean", m.grand_mean}};
}

KpcaModel kpca_from(const json& j) {
  KpcaModel m;
  m.gamma = field<double>(j, "gamma");
  m.train = observations_from(j.at("train"));
  m.eigenvalues = field<std::vector<double>>(j, "eigenvalues");
  m.eigenvectors = matrix_from(j.at("eigenvectors"));
  m.column_means = field<std::vector<double>>(j, "column_means");
  m.grand_mean = field<double>(j, "grand_mean");
  if (m.eigenvectors.rows() != m.train.size() || m.eigenvectors.cols() != m.eigenvalues.size() ||
      m.column_means.size() != m.train.size()) {
    fail(ErrorCode::SchemaError, "KPCA arrays inconsistent");
  }
  return m;
}

json shape_json(const InputShape& s) {
  return {{"kind", s.kind == DataKind::Vector ? "vector" : "curve"},
          {"num_features", s.num_features}, {"grid", s.grid},
          {"num_channels", s.num_channels}, {"subsample_step", s.subsample_step}};
}

InputShape shape_from(const json& j) {
  InputShape s;
  const auto kind = field<std::string>(j, "kind");
  if (kind != "vector" && kind != "curve") fail(ErrorCode::SchemaError, "bad input kind");
  s.kind = kind == "vector" ? DataKind::Vector : DataKind::Curve;
  s.num_features = field<std::size_t>(j, "num_features");
  s.grid = field<std::vector<double>>(j, "grid");
  s.num_channels = field<std::size_t>(j, "num_channels");
  s.subsample_step = field<std::size_t>(j, "subsample_step");
  return s;
}

// --- adapters ---------------------------------------------------------------

std::vector<double> midpoints(const IntervalVector& x) {
  std::vector<double> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k].midpoint();
  return out;
}

std::vector<double> polr_features(FeatureRecipe recipe, const IntervalVector& x) {
  std::vector<double> out;
  switch (recipe) {
    case FeatureRecipe::Midpoints: return midpoints(x);
    case FeatureRecipe::Bounds:
      for (const auto& iv : x.features) {
        out.push_back(iv.lower);
        out.push_back(iv.upper);
      }
      return out;
    case FeatureRecipe::LowerBounds:
      for (const auto& iv : x.features) out.push_back(iv.lower);
      return out;
    case FeatureRecipe::UpperBounds:
      for (const auto& iv : x.features) out.push_back(iv.upper);
      return out;
    default: fail(ErrorCode::InvalidParameter, "recipe does not apply to interval vectors");
  }
}

Matrix design(FeatureRecipe recipe, std::span<const IntervalVector> xs) {
  std::vector<std::vector<double>> rows;
  rows.reserve(xs.size());
  for (const auto& x : xs) rows.push_back(polr_features(recipe, x));
  return Matrix::from_rows(rows);
}

class PolrAdapter final : public OrdinalModel {
 public:
  PolrAdapter(Method m, InputShape s, PolrModel p) : method_(m), polr_(std::move(p)) {
    input_ = std::move(s);
  }
  Method method() const override { return method_; }
  int num_classes() const override { return polr_.num_classes(); }
  bool probabilistic() const override { return true; }
  std::vector<double> predict_proba(const Observation& x) const override {
    input_.check(x);
    return polr_predict_proba(polr_, polr_features(polr_.recipe, input_.vectorize(x)));
  }
  json parameters_json() const override { return polr_json(polr_); }

 private:
  Method method_;
  PolrModel polr_;
};

class PolrI2Adapter final : public OrdinalModel {
 public:
  PolrI2Adapter(InputShape s, PolrModel lower, PolrModel upper)
      : lower_(std::move(lower)), upper_(std::move(upper)) {
    input_ = std::move(s);
  }
  Method method() const override { return Method::PolrI2; }
  int num_classes() const override { return lower_.num_classes(); }
  bool probabilistic() const override { return true; }
  std::vector<double> predict_proba(const Observation& x) const override {
    input_.check(x);
    const auto v = input_.vectorize(x);
    auto pl = polr_predict_proba(lower_, polr_features(FeatureRecipe::LowerBounds, v));
    const auto pu = polr_predict_proba(upper_, polr_features(FeatureRecipe::UpperBounds, v));
    for (std::size_t q = 0; q < pl.size(); ++q) pl[q] = 0.5 * (pl[q] + pu[q]);
    return pl;
  }
  json parameters_json() const override {
    return {{"lower", polr_json(lower_)}, {"upper", polr_json(upper_)}};
  }

 private:
  PolrModel lower_;
  PolrModel upper_;
};

class LdaIdAdapter final : public OrdinalModel {
 public:
  LdaIdAdapter(InputShape s, LdaIdModel m) : lda_(std::move(m)) { input_ = std::move(s); }
  Method method() const override { return Method::LdaId; }
  int num_classes() const override { return lda_.num_classes(); }
  bool probabilistic() const override { return true; }
  std::vector<double> predict_proba(const Observation& x) const override {
    input_.check(x);
    return ldaid_predict_proba(lda_, input_.vectorize(x));
  }
  json parameters_json() const override { return lda_json(lda_); }

 private:
  LdaIdModel lda_;
};

class FhAdapter final : public OrdinalModel {
 public:
  FhAdapter(InputShape s, FhLdaIdModel m) : fh_(std::move(m)) { input_ = std::move(s); }
  Method method() const override { return Method::FhLdaId; }
  int num_classes() const override { return fh_.num_classes; }
  bool probabilistic() const override { return true; }
  std::vector<double> predict_proba(const Observation& x) const override {
    input_.check(x);
    return fh_lda_id_predict_proba(fh_, input_.vectorize(x));
  }
  json parameters_json() const override {
    json stack = json::array();
    for (const auto& sub : fh_.stack) stack.push_back(lda_json(sub));
    return {{"num_classes", fh_.num_classes}, {"stack", stack}};
  }

 private:
  FhLdaIdModel fh_;
};

class WknnAdapter final : public OrdinalModel {
 public:
  WknnAdapter(InputShape s, WknnConfig c, std::vector<Observation> train, std::vector<int> labels,
              int q)
      : config_(c), train_(std::move(train)), labels_(std::move(labels)), q_(q) {
    input_ = std::move(s);
  }
  Method method() const override { return Method::DiWknn; }
  int num_classes() const override { return q_; }
  int predict(const Observation& x) const override {
    input_.check(x);
    return wknn_predict(train_, labels_, config_, x);
  }
  json parameters_json() const override {
    return {{"k", config_.k}, {"kernel", to_string(config_.kernel)}, {"num_classes", q_},
            {"labels", labels_}, {"train", observations_json(train_)}};
  }

 private:
  WknnConfig config_;
  std::vector<Observation> train_;
  std::vector<int> labels_;
  int q_;
};

class OfAdapter final : public OrdinalModel {
 public:
  OfAdapter(InputShape s, OfModel m) : of_(std::move(m)) { input_ = std::move(s); }
  Method method() const override { return Method::Of; }
  int num_classes() const override { return of_.num_classes; }
  int predict(const Observation& x) const override {
    input_.check(x);
    return of_predict(of_, midpoints(input_.vectorize(x)));
  }
  json parameters_json() const override { return of_json(of_); }

 private:
  OfModel of_;
};

class KpcaPolrAdapter final : public OrdinalModel {
 public:
  KpcaPolrAdapter(InputShape s, KpcaPolrModel m) : model_(std::move(m)) { input_ = std::move(s); }
  Method method() const override { return Method::KpcaPolr; }
  int num_classes() const override { return model_.polr.num_classes(); }
  bool probabilistic() const override { return true; }
  std::vector<double> predict_proba(const Observation& x) const override {
    input_.check(x);
    return kpca_polr_predict_proba(model_, x);
  }
  json parameters_json() const override {
    return {{"kpca", kpca_json(model_.kpca)}, {"polr", polr_json(model_.polr)}};
  }

 private:
  KpcaPolrModel model_;
};

class KiofAdapter final : public OrdinalModel {
 public:
  KiofAdapter(InputShape s, KiofModel m) : model_(std::move(m)) { input_ = std::move(s); }
  Method method() const override { return Method::Kiof; }
  int num_classes() const override { return model_.forest.num_classes; }
  int predict(const Observation& x) const override {
    input_.check(x);
    return kiof_predict(model_, x);
  }
  json parameters_json() const override {
    return {{"gamma", model_.gamma}, {"train", observations_json(model_.train)},
            {"of", of_json(model_.forest)}};
  }

 private:
  KiofModel model_;
};

}  // namespace

// --- registry -----------------------------------------------------------------

std::string method_name(Method method) { return info(method).name; }

std::optional<Method> method_from_name(const std::string& name) {
  for (const auto& i : kMethods)
    if (name == i.name) return i.method;
  return std::nullopt;
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods = [] {
    std::vector<Method> out;
    for (const auto& i : kMethods) out.push_back(i.method);
    return out;
  }();
  return methods;
}

const std::vector<Method>& curve_methods() {
  static const std::vector<Method> methods = [] {
    std::vector<Method> out;
    for (const auto& i : kMethods)
      if (i.curves) out.push_back(i.method);
    return out;
  }();
  return methods;
}

bool curve_capable(Method method) { return info(method).curves; }
bool uses_rng(Method method) { return info(method).rng; }

json to_json(const MethodConfig& c) {
  return {{"gamma", c.gamma},
          {"k", c.wknn.k},
          {"wknn_kernel", to_string(c.wknn.kernel)},
          {"of_n_sets", c.of.n_sets},
          {"of_trees_per_set", c.of.trees_per_set},
          {"of_n_best", c.of.n_best},
          {"of_trees_final", c.of.trees_final},
          {"of_mtry", c.of.mtry},
          {"of_min_leaf", c.of.min_leaf},
          {"kpca_mass", c.kpca.mass},
          {"kpca_max_components", c.kpca.max_components},
          {"kpca_fixed_components", c.kpca.fixed},
          {"polr_ridge", c.polr.ridge},
          {"subsample_step", c.subsample_step}};
}

InputShape InputShape::of(const LabeledDataset& data, std::size_t subsample_step) {
  InputShape s;
  s.kind = data.kind();
  s.subsample_step = subsample_step;
  if (s.kind == DataKind::Vector) {
    s.num_features = std::get<IntervalVector>(data.observations.front()).size();
  } else {
    const auto& c = std::get<IntervalCurve>(data.observations.front());
    s.grid = c.grid;
    s.num_channels = c.num_channels();
  }
  return s;
}

void InputShape::check(const Observation& x) const {
  if (kind == DataKind::Vector) {
    const auto* v = std::get_if<IntervalVector>(&x);
    if (v == nullptr) fail(ErrorCode::ShapeMismatch, "model expects interval vectors");
    if (v->size() != num_features) {
      fail(ErrorCode::ShapeMismatch, "model expects " + std::to_string(num_features) +
                                         " features, got " + std::to_string(v->size()));
    }
  } else {
    const auto* c = std::get_if<IntervalCurve>(&x);
    if (c == nullptr) fail(ErrorCode::ShapeMismatch, "model expects interval curves");
    if (c->grid != grid || c->num_channels() != num_channels) {
      fail(ErrorCode::ShapeMismatch, "curve grid or channel count differs from training data");
    }
  }
}

IntervalVector InputShape::vectorize(const Observation& x) const {
  if (const auto* v = std::get_if<IntervalVector>(&x)) return *v;
  return curve_to_vector(subsample_grid(std::get<IntervalCurve>(x), subsample_step));
}

std::vector<double> OrdinalModel::predict_proba(const Observation&) const {
  fail(ErrorCode::InvalidParameter, method_name(method()) + " produces hard labels only");
}

int OrdinalModel::predict(const Observation& x) const { return argmax_low(predict_proba(x)); }

std::unique_ptr<OrdinalModel> fit_method(Method method, const LabeledDataset& train,
                                         const MethodConfig& config, const RngStream& rng) {
  validate_training(train);
  const int q = train.num_classes;
  const auto& y = train.labels;
  const std::size_t step = train.kind() == DataKind::Curve ? config.subsample_step : 1;
  InputShape shape = InputShape::of(train, step);

  switch (method) {
    case Method::Polr:
    case Method::PolrI: {
      const auto recipe = method == Method::Polr ? FeatureRecipe::Midpoints : FeatureRecipe::Bounds;
      auto polr = polr_fit(design(recipe, as_vectors(train, step)), y, q, config.polr);
      polr.recipe = recipe;
      return std::make_unique<PolrAdapter>(method, std::move(shape), std::move(polr));
    }
    case Method::PolrI2: {
      const auto xs = as_vectors(train, step);
      auto fit_side = [&](FeatureRecipe recipe, const char* side) {
        try {
          auto m = polr_fit(design(recipe, xs), y, q, config.polr);
          m.recipe = recipe;
          return m;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::FitFailed) throw;
          fail(ErrorCode::FitFailed, std::string(side) + "-bound model: " + e.what());
        }
      };
      auto lower = fit_side(FeatureRecipe::LowerBounds, "lower");
      auto upper = fit_side(FeatureRecipe::UpperBounds, "upper");
      return std::make_unique<PolrI2Adapter>(std::move(shape), std::move(lower), std::move(upper));
    }
    case Method::LdaId:
      return std::make_unique<LdaIdAdapter>(std::move(shape), ldaid_fit(as_vectors(train, step), y, q));
    case Method::FhLdaId:
      return std::make_unique<FhAdapter>(std::move(shape),
                                         fh_lda_id_fit(as_vectors(train, step), y, q));
    case Method::DiWknn:
      shape.subsample_step = 1;
      if (static_cast<std::size_t>(config.wknn.k) + 1 > train.size() || config.wknn.k < 1) {
        fail(ErrorCode::InvalidParameter, "wkNN needs 1 <= k and k + 1 <= N_train");
      }
      return std::make_unique<WknnAdapter>(std::move(shape), config.wknn, train.observations, y, q);
    case Method::Of: {
      const auto mids = midpoint_view(as_vectors(train, step));
      return std::make_unique<OfAdapter>(std::move(shape),
                                         of_fit(Matrix::from_rows(mids), y, q, config.of, rng));
    }
    case Method::KpcaPolr:
      shape.subsample_step = 1;
      return std::make_unique<KpcaPolrAdapter>(
          std::move(shape),
          kpca_polr_fit(train.observations, y, q, config.gamma, config.kpca, config.polr));
    case Method::Kiof:
      shape.subsample_step = 1;
      return std::make_unique<KiofAdapter>(
          std::move(shape), kiof_fit(train.observations, y, q, config.gamma, config.of, rng));
  }
  fail(ErrorCode::InvalidParameter, "unknown method");
}

json save_model(const OrdinalModel& model) {
  return {{"format", kFormat},
          {"version", kVersion},
          {"method", method_name(model.method())},
          {"num_classes", model.num_classes()},
          {"input", shape_json(model.input())},
          {"model", model.parameters_json()}};
}

std::unique_ptr<OrdinalModel> load_model(const json& record) {
  if (!record.is_object() || record.value("format", "") != kFormat) {
    fail(ErrorCode::SchemaError, "not an ivord model record");
  }
  if (field<int>(record, "version") != kVersion) {
    fail(ErrorCode::SchemaError, "unsupported model version");
  }
  const auto name = field<std::string>(record, "method");
  const auto method = method_from_name(name);
  if (!method) fail(ErrorCode::SchemaError, "unknown method '" + name + "'");
  InputShape shape = shape_from(record.at("input"));
  const json& m = record.at("model");
  const int q = field<int>(record, "num_classes");

  try {
    switch (*method) {
      case Method::Polr:
      case Method::PolrI:
        return std::make_unique<PolrAdapter>(*method, std::move(shape), polr_from(m));
      case Method::PolrI2:
        return std::make_unique<PolrI2Adapter>(std::move(shape), polr_from(m.at("lower")),
                                               polr_from(m.at("upper")));
      case Method::LdaId:
        return std::make_unique<LdaIdAdapter>(std::move(shape), lda_from(m));
      case Method::FhLdaId: {
        FhLdaIdModel fh;
        fh.num_classes = field<int>(m, "num_classes");
        for (const auto& sub : m.at("stack")) fh.stack.push_back(lda_from(sub));
        if (fh.stack.size() + 1 != static_cast<std::size_t>(fh.num_classes)) {
          fail(ErrorCode::SchemaError, "FH stack length must be Q - 1");
        }
        return std::make_unique<FhAdapter>(std::move(shape), std::move(fh));
      }
      case Method::DiWknn: {
        WknnConfig c{field<int>(m, "k"), weight_kernel_from_string(field<std::string>(m, "kernel"))};
        return std::make_unique<WknnAdapter>(std::move(shape), c, observations_from(m.at("train")),
                                             field<std::vector<int>>(m, "labels"), q);
      }
      case Method::Of:
        return std::make_unique<OfAdapter>(std::move(shape), of_from(m));
      case Method::KpcaPolr:
        return std::make_unique<KpcaPolrAdapter>(
            std::move(shape), KpcaPolrModel{kpca_from(m.at("kpca")), polr_from(m.at("polr"))});
      case Method::Kiof: {
        KiofModel k;
        k.gamma = field<double>(m, "gamma");
        k.train = observations_from(m.at("train"));
        k.forest = of_from(m.at("of"));
        return std::make_unique<KiofAdapter>(std::move(shape), std::move(k));
      }
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::SchemaError, e.what());
  }
  fail(ErrorCode::SchemaError, "unknown method");
}

}  // namespace ivord
