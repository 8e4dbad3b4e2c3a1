// ivord command-line tool: gen, fit, predict, bench.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ivord/csv_io.hpp"
#include "ivord/error.hpp"
#include "ivord/experiment.hpp"
#include "ivord/model.hpp"
#include "ivord/synthetic.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitFit = 3;

// Lets the config file use bare flag names; keys are routed to whichever
// subcommand was selected on the command line.
class FlatConfig : public CLI::ConfigTOML {
 public:
  explicit FlatConfig(const CLI::App* app) : app_(app) {}
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigTOML::from_config(input);
    const auto subs = app_->get_subcommands();
    if (subs.empty()) return items;
    for (auto& item : items) {
      if (item.parents.empty()) item.parents = {subs.front()->get_name()};
    }
    return items;
  }

 private:
  const CLI::App* app_;
};

struct Options {
  // gen
  std::string design = "three_class";
  int n_per_class = 100;
  // fit / predict / bench
  std::string method = "polr";
  std::string data_path;
  std::string model_path;
  std::string methods = "all";
  std::string out;
  std::uint64_t seed = 1;
  int reps = 50;
  double train_frac = 0.8;
  unsigned jobs = 1;
  ivord::MethodConfig config;
  std::string wknn_kernel = "triangular";
};

void add_model_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--gamma", o.config.gamma, "RBF kernel bandwidth")->check(CLI::PositiveNumber);
  cmd->add_option("--k", o.config.wknn.k, "wkNN neighbours")->check(CLI::PositiveNumber);
  cmd->add_option("--wknn-kernel", o.wknn_kernel, "wkNN weight kernel")
      ->check(CLI::IsMember({"triangular", "rectangular"}));
  cmd->add_option("--subsample-step", o.config.subsample_step,
                  "grid step for vector-only methods on curves")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--of-sets", o.config.of.n_sets, "OF candidate score sets")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--of-trees-per-set", o.config.of.trees_per_set)->check(CLI::PositiveNumber);
  cmd->add_option("--of-best", o.config.of.n_best)->check(CLI::PositiveNumber);
  cmd->add_option("--of-trees", o.config.of.trees_final)->check(CLI::PositiveNumber);
  cmd->add_option("--of-mtry", o.config.of.mtry, "features tried per split (0 = ceil(p/3))")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--of-min-leaf", o.config.of.min_leaf)->check(CLI::PositiveNumber);
  cmd->add_option("--kpca-mass", o.config.kpca.mass, "retained eigenvalue share")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--kpca-max", o.config.kpca.max_components)->check(CLI::PositiveNumber);
  cmd->add_option("--kpca-dims", o.config.kpca.fixed, "fixed KPCA dimension (0 = by mass)");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
}

std::vector<ivord::Method> parse_methods(const std::string& list) {
  if (list == "all") return ivord::all_methods();
  std::vector<ivord::Method> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    const auto name = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto m = ivord::method_from_name(name);
    if (!m) ivord::fail(ivord::ErrorCode::InvalidParameter, "unknown method '" + name + "'");
    out.push_back(*m);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void finish_config(Options& o) {
  o.config.wknn.kernel = ivord::weight_kernel_from_string(o.wknn_kernel);
  o.config.of.jobs = o.jobs;
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) ivord::fail(ivord::ErrorCode::IoError, "cannot write '" + path + "'");
  return out;
}

int cmd_gen(const Options& o) {
  auto design = ivord::SyntheticDesign::by_name(o.design);
  design->samples_per_class = o.n_per_class;
  ivord::RngStream rng(o.seed);
  const auto data = ivord::gen_synthetic(*design, rng);
  if (o.out.empty()) {
    ivord::write_ivd_csv(std::cout, data);
  } else {
    ivord::write_dataset_csv(o.out, data);
  }
  return kExitOk;
}

int cmd_fit(const Options& o) {
  const auto method = ivord::method_from_name(o.method);
  if (!method) ivord::fail(ivord::ErrorCode::InvalidParameter, "unknown method '" + o.method + "'");
  const auto data = ivord::read_dataset_csv(o.data_path);
  const ivord::RngStream rng = ivord::RngStream(o.seed).split("method:" + o.method);
  const auto model = ivord::fit_method(*method, data, o.config, rng);
  auto out = open_out(o.out);
  out << ivord::save_model(*model).dump(1) << '\n';
  return kExitOk;
}

int cmd_predict(const Options& o) {
  std::ifstream in(o.model_path, std::ios::binary);
  if (!in) ivord::fail(ivord::ErrorCode::IoError, "cannot read '" + o.model_path + "'");
  nlohmann::json record;
  try {
    record = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    ivord::fail(ivord::ErrorCode::SchemaError, std::string("model file: ") + e.what());
  }
  const auto model = ivord::load_model(record);
  const auto data = ivord::read_dataset_csv(o.data_path);

  std::ofstream file;
  if (!o.out.empty()) file = open_out(o.out);
  std::ostream& out = o.out.empty() ? std::cout : file;
  const bool probs = model->probabilistic();
  out << "id,predicted_label";
  if (probs) {
    for (int q = 1; q <= model->num_classes(); ++q) out << ",p" << q;
  }
  out << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& x = data.observations[i];
    out << (i < data.ids.size() ? data.ids[i] : std::to_string(i + 1)) << ',';
    if (probs) {
      const auto p = model->predict_proba(x);
      out << ivord::argmax_low(p);
      for (double v : p) out << ',' << format_double(v);
    } else {
      out << model->predict(x);
    }
    out << '\n';
  }
  return kExitOk;
}

int cmd_bench(const Options& o) {
  ivord::McOptions mc;
  mc.methods = parse_methods(o.methods);
  mc.reps = o.reps;
  mc.train_frac = o.train_frac;
  mc.seed = o.seed;
  mc.config = o.config;
  mc.config.of.jobs = 1;  // parallelism goes to replicates
  mc.jobs = o.jobs;

  ivord::DataSource source;
  if (!o.data_path.empty()) {
    source = ivord::read_dataset_csv(o.data_path);
  } else {
    auto design = ivord::SyntheticDesign::by_name(o.design);
    design->samples_per_class = o.n_per_class;
    source = *design;
  }
  const auto report = ivord::run_mc(source, mc);
  if (!o.out.empty()) {
    open_out(o.out + ".json") << report.to_json().dump(1) << '\n';
    open_out(o.out + ".csv") << report.aggregate_csv();
  }
  std::cout << report.table();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ordinal classification of interval-valued data"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "flat key = value file using the flag names");
  app.config_formatter(std::make_shared<FlatConfig>(&app));

  Options o;
  const std::vector<std::string> designs{"three_class", "four_class"};

  auto* gen = app.add_subcommand("gen", "write a synthetic IVD dataset as CSV");
  gen->add_option("--design", o.design)->check(CLI::IsMember(designs));
  gen->add_option("--n-per-class", o.n_per_class)->check(CLI::PositiveNumber);
  gen->add_option("--seed", o.seed);
  gen->add_option("-o,--out", o.out, "output CSV (stdout if omitted)");

  auto* fit = app.add_subcommand("fit", "fit one method and write the model as JSON");
  fit->add_option("--method", o.method)->required();
  fit->add_option("--data", o.data_path, "labeled training CSV")->required()->check(CLI::ExistingFile);
  fit->add_option("-o,--out", o.out, "model JSON")->required();
  add_model_options(fit, o);

  auto* predict = app.add_subcommand("predict", "predict labels with a saved model");
  predict->add_option("--model", o.model_path)->required()->check(CLI::ExistingFile);
  predict->add_option("--data", o.data_path)->required()->check(CLI::ExistingFile);
  predict->add_option("-o,--out", o.out, "predictions CSV (stdout if omitted)");

  auto* bench = app.add_subcommand("bench", "Monte Carlo cross-validation benchmark");
  bench->add_option("--design", o.design)->check(CLI::IsMember(designs));
  bench->add_option("--data", o.data_path, "labeled CSV to re-split instead of a design")
      ->check(CLI::ExistingFile);
  bench->add_option("--n-per-class", o.n_per_class)->check(CLI::PositiveNumber);
  bench->add_option("--methods", o.methods, "comma-separated method names or 'all'");
  bench->add_option("--reps", o.reps)->check(CLI::PositiveNumber);
  bench->add_option("--train-frac", o.train_frac)->check(CLI::Range(0.0, 1.0));
  bench->add_option("-o,--out", o.out, "report prefix; writes <prefix>.json and <prefix>.csv");
  add_model_options(bench, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    finish_config(o);
    if (*gen) return cmd_gen(o);
    if (*fit) return cmd_fit(o);
    if (*predict) return cmd_predict(o);
    return cmd_bench(o);
  } catch (const ivord::Error& e) {
    std::cerr << "ivord: " << e.what() << '\n';
    switch (e.code()) {
      case ivord::ErrorCode::FitFailed:
      case ivord::ErrorCode::NumericalFailure:
      case ivord::ErrorCode::SingularCovariance:
      case ivord::ErrorCode::DegenerateKernel:
        return kExitFit;
      default:
        return kExitInput;
    }
  } catch (const std::exception& e) {
    std::cerr << "ivord: " << e.what() << '\n';
    return kExitInput;
  }
}
