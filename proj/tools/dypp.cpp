#include <cstdint>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dypp/harness/compare.hpp"
#include "dypp/harness/report.hpp"
#include "dypp/harness/run_config.hpp"
#include "dypp/harness/train.hpp"
#include "dypp/sim/ground_energy.hpp"
#include "dypp/tasks/maxcut.hpp"

namespace fs = std::filesystem;
using namespace dypp;
using harness::RunConfig;

namespace {

/// Usage problems: exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Options that override a per-task default only when given.
class Overrides {
public:
  template <class T>
  CLI::Option *option(CLI::App &app, const std::string &name, const std::string &desc,
                      std::function<void(RunConfig &, const T &)> apply) {
    auto value = std::make_shared<T>();
    auto *opt = app.add_option(name, *value, desc);
    setters_.push_back([opt, value, apply](RunConfig &c) {
      if (opt->count() > 0) {
        apply(c, *value);
      }
    });
    return opt;
  }

  CLI::Option *flag(CLI::App &app, const std::string &name, const std::string &desc,
                    std::function<void(RunConfig &)> apply) {
    auto *opt = app.add_flag(name, desc);
    setters_.push_back([opt, apply](RunConfig &c) {
      if (opt->count() > 0) {
        apply(c);
      }
    });
    return opt;
  }

  void apply(RunConfig &cfg) const {
    for (const auto &s : setters_) {
      s(cfg);
    }
  }

private:
  std::vector<std::function<void(RunConfig &)>> setters_;
};

struct CommonOptions {
  Overrides overrides;
  CLI::Option *sampled = nullptr;
  CLI::Option *noise = nullptr;
  std::string out_dir = ".";
  std::string format = "both";
};

const std::vector<std::string> kMethods{"vanilla", "nap", "adap"};

void add_common(CLI::App &app, CommonOptions &o) {
  auto &ov = o.overrides;
  ov.option<std::uint64_t>(app, "--seed", "Run seed",
                           [](RunConfig &c, const std::uint64_t &v) { c.seed = v; });
  ov.option<int>(app, "--epochs", "Epochs (iterations for VQE/QAOA)",
                 [](RunConfig &c, const int &v) { c.epochs = v; });
  ov.option<int>(app, "--p", "Prediction interval p",
                 [](RunConfig &c, const int &v) { c.predictor.interval = v; });
  ov.option<double>(app, "--d0", "NaP initial distance",
                    [](RunConfig &c, const double &v) { c.predictor.nap_d0 = v; });
  ov.option<double>(app, "--r", "NaP decay rate",
                    [](RunConfig &c, const double &v) { c.predictor.decay = v; });
  ov.option<double>(app, "--k", "AdaP proportionality constant",
                    [](RunConfig &c, const double &v) { c.predictor.k = v; });
  ov.option<double>(app, "--n", "AdaP maximum extra distance",
                    [](RunConfig &c, const double &v) { c.predictor.max_extra = v; });
  ov.option<double>(app, "--eps", "AdaP denominator guard",
                    [](RunConfig &c, const double &v) { c.predictor.epsilon = v; });
  ov.option<double>(app, "--lr", "Learning rate",
                    [](RunConfig &c, const double &v) { c.learning_rate = v; });
  ov.option<std::string>(app, "--optimizer", "sgd, adam or adagrad",
                         [](RunConfig &c, const std::string &v) {
                           c.optimizer = grad::parse_optimizer_kind(v);
                         })
      ->check(CLI::IsMember({"sgd", "adam", "adagrad"}));
  ov.option<std::string>(app, "--grad", "Gradient: exact, ps, spsa or fd",
                         [](RunConfig &c, const std::string &v) {
                           c.gradient.kind = grad::parse_gradient_kind(v);
                         })
      ->check(CLI::IsMember({"exact", "ps", "spsa", "fd"}));
  ov.option<double>(app, "--spsa-c", "SPSA perturbation scale",
                    [](RunConfig &c, const double &v) { c.gradient.spsa_c = v; });
  ov.option<double>(app, "--fd-h", "Finite-difference step",
                    [](RunConfig &c, const double &v) { c.gradient.fd_h = v; });
  ov.option<int>(app, "--shots", "Shots per expectation in sampled mode",
                 [](RunConfig &c, const int &v) { c.execution.shots.shots = v; });
  ov.option<int>(app, "--trajectories", "Noise trajectories per execution",
                 [](RunConfig &c, const int &v) { c.execution.trajectories = v; });
  o.sampled = app.add_flag("--sampled", "Shot-sampled expectations");
  o.noise = app.add_option("--noise", "Per-gate depolarizing probability");
  ov.flag(app, "--no-predict", "Disable prediction (vanilla-equivalent run)",
          [](RunConfig &c) { c.prediction_enabled = false; });

  // qaoa
  ov.option<int>(app, "--nodes", "QAOA: Erdos-Renyi node count",
                 [](RunConfig &c, const int &v) { c.qaoa.nodes = v; });
  ov.option<double>(app, "--edge-prob", "QAOA: Erdos-Renyi edge probability",
                    [](RunConfig &c, const double &v) { c.qaoa.edge_prob = v; });
  ov.option<int>(app, "--depth", "QAOA: layers",
                 [](RunConfig &c, const int &v) { c.qaoa.depth = v; });
  ov.option<std::string>(app, "--graph", "QAOA: graph file",
                         [](RunConfig &c, const std::string &v) { c.qaoa.graph_file = v; });
  ov.option<std::uint64_t>(app, "--graph-seed", "QAOA: graph seed (default: run seed)",
                           [](RunConfig &c, const std::uint64_t &v) { c.qaoa.graph_seed = v; });
  // vqe
  ov.option<std::string>(app, "--hamiltonian", "VQE: Pauli-sum file",
                         [](RunConfig &c, const std::string &v) {
                           c.vqe.hamiltonian_file = v;
                         });
  ov.option<std::string>(app, "--ansatz", "VQE: uccsd or hea",
                         [](RunConfig &c, const std::string &v) {
                           c.vqe.ansatz = tasks::parse_ansatz_kind(v);
                         })
      ->check(CLI::IsMember({"uccsd", "hea"}));
  ov.option<int>(app, "--electrons", "VQE: electron count",
                 [](RunConfig &c, const int &v) { c.vqe.electrons = v; });
  ov.option<double>(app, "--tol", "VQE: convergence tolerance",
                    [](RunConfig &c, const double &v) { c.vqe.convergence_tol = v; });
  // qnn
  ov.option<std::string>(app, "--synthetic", "QNN: synthetic dataset (blobs)",
                         [](RunConfig &c, const std::string &) { c.qnn.dataset_file.clear(); })
      ->check(CLI::IsMember({"blobs"}));
  ov.option<std::string>(app, "--dataset", "QNN: CSV dataset",
                         [](RunConfig &c, const std::string &v) { c.qnn.dataset_file = v; });
  ov.option<int>(app, "--classes", "QNN: class count",
                 [](RunConfig &c, const int &v) { c.qnn.classes = v; });
  ov.option<int>(app, "--samples", "QNN: synthetic sample count",
                 [](RunConfig &c, const int &v) { c.qnn.samples = v; });
  ov.option<double>(app, "--spread", "QNN: synthetic blob spread",
                    [](RunConfig &c, const double &v) { c.qnn.spread = v; });
  ov.option<int>(app, "--qubits", "QNN: qubits",
                 [](RunConfig &c, const int &v) { c.qnn.qubits = v; });
  ov.option<int>(app, "--layers", "QNN/VQE-hea: ansatz layers",
                 [](RunConfig &c, const int &v) {
                   c.qnn.layers = v;
                   c.vqe.layers = v;
                 });
  ov.option<int>(app, "--features-per-qubit", "QNN: encoded features per qubit",
                 [](RunConfig &c, const int &v) { c.qnn.features_per_qubit = v; });
  ov.flag(app, "--no-hadamard", "QNN: drop the encoder's Hadamard prelude",
          [](RunConfig &c) { c.qnn.hadamard_prelude = false; });
  ov.option<int>(app, "--batch", "QNN: batch size",
                 [](RunConfig &c, const int &v) { c.qnn.batch_size = v; });
  ov.flag(app, "--quantum-only", "QNN: predictions move quantum parameters only",
          [](RunConfig &c) { c.qnn.predict_head = false; });
  ov.option<std::uint64_t>(app, "--data-seed", "QNN: data seed (default: run seed)",
                           [](RunConfig &c, const std::uint64_t &v) { c.qnn.data_seed = v; });

  app.add_option("--out", o.out_dir, "Output directory");
  app.add_option("--format", o.format, "csv, json or both")
      ->check(CLI::IsMember({"csv", "json", "both"}));
}

RunConfig resolve(harness::TaskKind task, const CommonOptions &o, double noise_prob) {
  const bool noisy = o.sampled->count() > 0 || o.noise->count() > 0;
  RunConfig cfg = RunConfig::defaults(task, noisy);
  if (o.sampled->count() > 0) {
    cfg.execution.shots.mode = sim::ShotMode::sampled;
  }
  if (o.noise->count() > 0) {
    cfg.execution.noise.enabled = true;
    cfg.execution.noise.depolarizing_prob = noise_prob;
  }
  try {
    o.overrides.apply(cfg);
    cfg.validate();
  } catch (const std::exception &e) {
    throw UsageError(e.what());
  }
  return cfg;
}

std::string run_stem(const RunConfig &cfg) {
  std::ostringstream s;
  s << harness::task_name(cfg.task) << '_' << predict::method_name(cfg.predictor.method)
    << "_seed" << cfg.seed;
  return s.str();
}

bool wants_csv(const std::string &format) { return format != "json"; }
bool wants_json(const std::string &format) { return format != "csv"; }

int do_run(const RunConfig &cfg, const CommonOptions &o) {
  const fs::path out(o.out_dir);
  fs::create_directories(out);
  const auto result = harness::train(cfg);
  const std::string stem = run_stem(cfg);
  if (wants_csv(o.format)) {
    harness::write_records_csv(out / (stem + ".csv"), result.records);
  }
  if (wants_json(o.format)) {
    harness::write_json(out / (stem + ".json"), harness::run_summary(cfg, result));
  }
  const auto &last = result.records.back();
  std::cout << std::setprecision(10) << stem << ": epochs=" << result.records.size()
            << " predictions=" << result.predictions << " loss=" << last.loss
            << " metric=" << last.metric << " shots=" << last.cum_shots
            << (result.early_stopped ? " (early stop)" : "") << '\n';
  return 0;
}

std::vector<predict::Method> parse_methods(const std::string &list) {
  std::vector<predict::Method> methods;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      methods.push_back(predict::parse_method(item));
    } catch (const std::exception &e) {
      throw UsageError(e.what());
    }
  }
  if (methods.size() < 2) {
    throw UsageError("compare needs at least two methods");
  }
  for (std::size_t i = 0; i < methods.size(); ++i) {
    for (std::size_t j = i + 1; j < methods.size(); ++j) {
      if (methods[i] == methods[j]) {
        throw UsageError("duplicate method: " + std::string(predict::method_name(methods[i])));
      }
    }
  }
  return methods;
}

int do_compare(const RunConfig &cfg, const CommonOptions &o,
               const std::vector<predict::Method> &methods, int seeds,
               std::uint64_t seed_base) {
  const fs::path out(o.out_dir);
  fs::create_directories(out);
  std::vector<std::uint64_t> seed_list;
  for (int s = 0; s < seeds; ++s) {
    seed_list.push_back(seed_base + static_cast<std::uint64_t>(s));
  }
  const auto summary = harness::compare(
      cfg, methods, seed_list, [&](const harness::SeededRun &run) {
        const std::string stem = run_stem(run.config);
        if (!run.result) {
          std::cerr << stem << ": failed: " << run.error << '\n';
          return;
        }
        harness::write_records_csv(out / (stem + ".csv"), run.result->records);
        std::cout << stem << ": final loss " << std::setprecision(10)
                  << run.result->records.back().loss << '\n';
      });
  const fs::path summary_path =
      out / ("compare_" + std::string(harness::task_name(cfg.task)) + ".json");
  harness::write_json(summary_path, harness::to_json(summary));
  for (const auto &m : summary.per_method) {
    std::cout << predict::method_name(m.method) << ": median speedup "
              << m.median_speedup << ", mean CR " << m.mean_convergence_rate
              << ", shot savings " << m.shot_savings << '\n';
  }
  bool any_failed = false;
  for (const auto &r : summary.runs) {
    any_failed = any_failed || !r.result;
  }
  return any_failed ? 1 : 0;
}

int do_oracle(const std::string &kind, const std::string &file) {
  std::cout << std::setprecision(std::numeric_limits<double>::max_digits10);
  if (kind == "maxcut") {
    circuit::GraphSpec graph;
    try {
      graph = circuit::GraphSpec::load(file);
    } catch (const std::exception &e) {
      throw UsageError(e.what());
    }
    std::cout << tasks::brute_force_maxcut(graph) << '\n';
    return 0;
  }
  sim::Observable obs = sim::Observable::z(1, 0);
  try {
    obs = sim::Observable::load(file);
  } catch (const std::exception &e) {
    throw UsageError(e.what());
  }
  const double e = sim::exact_ground_energy(obs);
  std::ostringstream s;
  s << std::setprecision(std::numeric_limits<double>::max_digits10) << e;
  std::string text = s.str();
  if (text.find_first_of(".e") == std::string::npos) {
    text += ".0";
  }
  std::cout << text << '\n';
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Dynamic parameter prediction for variational quantum algorithms"};
  app.require_subcommand(1);

  auto *run = app.add_subcommand("run", "Train one task");
  run->require_subcommand(1);
  struct RunSub {
    harness::TaskKind task;
    CLI::App *app;
    CommonOptions options;
    std::string method;
    double noise = 0.0;
  };
  std::vector<std::unique_ptr<RunSub>> subs;
  for (auto task : {harness::TaskKind::qaoa, harness::TaskKind::vqe, harness::TaskKind::qnn}) {
    auto sub = std::make_unique<RunSub>();
    sub->task = task;
    sub->app = run->add_subcommand(std::string(harness::task_name(task)));
    add_common(*sub->app, sub->options);
    sub->options.noise->default_val(0.0);
    sub->app->add_option("--method", sub->method, "vanilla, nap or adap")
        ->check(CLI::IsMember(kMethods))
        ->default_val("adap");
    subs.push_back(std::move(sub));
  }

  auto *cmp = app.add_subcommand("compare", "Compare methods across seeds");
  CommonOptions cmp_options;
  std::string cmp_task;
  std::string cmp_methods = "vanilla,nap,adap";
  int cmp_seeds = 1;
  std::uint64_t cmp_seed_base = 0;
  cmp->add_option("--task", cmp_task, "qaoa, vqe or qnn")
      ->required()
      ->check(CLI::IsMember({"qaoa", "vqe", "qnn"}));
  cmp->add_option("--methods", cmp_methods, "Comma-separated methods; the first is the baseline");
  cmp->add_option("--seeds", cmp_seeds, "Number of seeds")->check(CLI::PositiveNumber);
  cmp->add_option("--seed-base", cmp_seed_base, "First seed");
  add_common(*cmp, cmp_options);

  auto *oracle = app.add_subcommand("oracle", "Print a brute-force reference value");
  std::string oracle_kind;
  std::string oracle_file;
  oracle->add_option("kind", oracle_kind, "maxcut or eig")
      ->required()
      ->check(CLI::IsMember({"maxcut", "eig"}));
  oracle->add_option("file", oracle_file, "Graph or Hamiltonian file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (oracle->parsed()) {
      return do_oracle(oracle_kind, oracle_file);
    }
    if (cmp->parsed()) {
      double noise = 0.0;
      if (cmp_options.noise->count() > 0) {
        noise = cmp_options.noise->as<double>();
      }
      const auto methods = parse_methods(cmp_methods);
      const auto cfg = resolve(harness::parse_task_kind(cmp_task), cmp_options, noise);
      return do_compare(cfg, cmp_options, methods, cmp_seeds, cmp_seed_base);
    }
    for (const auto &sub : subs) {
      if (sub->app->parsed()) {
        const double noise =
            sub->options.noise->count() > 0 ? sub->options.noise->as<double>() : 0.0;
        auto cfg = resolve(sub->task, sub->options, noise);
        cfg.predictor.method = predict::parse_method(sub->method);
        return do_run(cfg, sub->options);
      }
    }
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
