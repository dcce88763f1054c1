#include "dypp/harness/run_config.hpp"

#include <stdexcept>

namespace dypp::harness {

using nlohmann::json;

std::string_view task_name(TaskKind kind) {
  switch (kind) {
  case TaskKind::qaoa:
    return "qaoa";
  case TaskKind::vqe:
    return "vqe";
  case TaskKind::qnn:
    return "qnn";
  }
  throw std::invalid_argument("unknown task kind");
}

TaskKind parse_task_kind(std::string_view name) {
  if (name == "qaoa") {
    return TaskKind::qaoa;
  }
  if (name == "vqe") {
    return TaskKind::vqe;
  }
  if (name == "qnn") {
    return TaskKind::qnn;
  }
  throw std::invalid_argument("unknown task: " + std::string(name));
}

RunConfig RunConfig::defaults(TaskKind task, bool noisy) {
  RunConfig cfg;
  cfg.task = task;
  cfg.predictor.decay = 0.95;
  cfg.predictor.max_extra = 12.0;
  cfg.predictor.epsilon = 1e-6;
  switch (task) {
  case TaskKind::qnn:
    cfg.predictor.interval = 5;
    cfg.predictor.nap_d0 = 3.0;
    cfg.predictor.k = 1e-4;
    cfg.optimizer = grad::OptimizerKind::adam;
    cfg.learning_rate = 0.002;
    cfg.epochs = 200;
    break;
  case TaskKind::vqe:
    cfg.predictor.interval = 4;
    cfg.predictor.nap_d0 = 5.0;
    cfg.predictor.k = 0.01;
    cfg.optimizer = grad::OptimizerKind::sgd;
    cfg.learning_rate = 0.1;
    cfg.epochs = 200;
    break;
  case TaskKind::qaoa:
    cfg.predictor.interval = 4;
    cfg.predictor.nap_d0 = 3.0;
    cfg.predictor.k = 0.01;
    cfg.optimizer = grad::OptimizerKind::adagrad;
    cfg.learning_rate = 0.05;
    cfg.epochs = 100;
    break;
  }
  if (noisy) {
    cfg.predictor.interval += 1;
  }
  return cfg;
}

void RunConfig::validate() const {
  resolved_predictor().validate();
  gradient.validate();
  execution.validate();
  if (epochs < 1) {
    throw std::invalid_argument("epochs must be >= 1");
  }
  if (!(learning_rate > 0.0)) {
    throw std::invalid_argument("learning rate must be positive");
  }
  if (task == TaskKind::vqe && vqe.hamiltonian_file.empty()) {
    throw std::invalid_argument("VQE needs a Hamiltonian file");
  }
}

predict::PredictorConfig RunConfig::resolved_predictor() const {
  predict::PredictorConfig p = predictor;
  p.learning_rate = learning_rate;
  return p;
}

namespace {

json optional_seed(const std::optional<std::uint64_t> &seed) {
  return seed ? json(*seed) : json(nullptr);
}

std::optional<std::uint64_t> read_optional_seed(const json &j) {
  if (j.is_null()) {
    return std::nullopt;
  }
  return j.get<std::uint64_t>();
}

} // namespace

json to_json(const RunConfig &cfg) {
  json j;
  j["task"] = task_name(cfg.task);
  j["method"] = predict::method_name(cfg.predictor.method);
  j["seed"] = cfg.seed;
  j["epochs"] = cfg.epochs;
  j["prediction_enabled"] = cfg.prediction_enabled;
  j["optimizer"] = {{"kind", grad::optimizer_name(cfg.optimizer)},
                    {"learning_rate", cfg.learning_rate}};
  j["gradient"] = {{"kind", grad::gradient_kind_name(cfg.gradient.kind)},
                   {"spsa_c", cfg.gradient.spsa_c},
                   {"fd_h", cfg.gradient.fd_h}};
  j["predictor"] = {{"p", cfg.predictor.interval},
                    {"d0", cfg.predictor.nap_d0},
                    {"r", cfg.predictor.decay},
                    {"k", cfg.predictor.k},
                    {"n", cfg.predictor.max_extra},
                    {"epsilon", cfg.predictor.epsilon},
                    {"max_jump", cfg.predictor.max_jump}};
  j["execution"] = {
      {"mode", cfg.execution.sampled() ? "sampled" : "exact"},
      {"shots", cfg.execution.shots.shots},
      {"noise", cfg.execution.noise.enabled},
      {"depolarizing_prob", cfg.execution.noise.depolarizing_prob},
      {"trajectories", cfg.execution.trajectories}};
  switch (cfg.task) {
  case TaskKind::qaoa:
    j["qaoa"] = {{"graph_file", cfg.qaoa.graph_file},
                 {"nodes", cfg.qaoa.nodes},
                 {"edge_prob", cfg.qaoa.edge_prob},
                 {"depth", cfg.qaoa.depth},
                 {"graph_seed", optional_seed(cfg.qaoa.graph_seed)}};
    break;
  case TaskKind::vqe:
    j["vqe"] = {{"hamiltonian_file", cfg.vqe.hamiltonian_file},
                {"ansatz", tasks::ansatz_name(cfg.vqe.ansatz)},
                {"electrons", cfg.vqe.electrons},
                {"layers", cfg.vqe.layers},
                {"convergence_tol", cfg.vqe.convergence_tol}};
    break;
  case TaskKind::qnn:
    j["qnn"] = {{"dataset_file", cfg.qnn.dataset_file},
                {"classes", cfg.qnn.classes},
                {"samples", cfg.qnn.samples},
                {"spread", cfg.qnn.spread},
                {"qubits", cfg.qnn.qubits},
                {"layers", cfg.qnn.layers},
                {"features_per_qubit", cfg.qnn.features_per_qubit},
                {"hadamard_prelude", cfg.qnn.hadamard_prelude},
                {"batch_size", cfg.qnn.batch_size},
                {"predict_head", cfg.qnn.predict_head},
                {"data_seed", optional_seed(cfg.qnn.data_seed)}};
    break;
  }
  j["conventions"] = {
      {"qubit_order", "qubit 0 is the most significant bit"},
      {"qaoa_param_order", "gamma_1, beta_1, ..., gamma_p, beta_p"},
      {"nap_epoch_index", "absolute 1-based epoch of the prediction"},
      {"prediction_cycle",
       "p epochs: p-1 optimizer steps fill the window, the p-th is replaced"},
  };
  return j;
}

RunConfig run_config_from_json(const json &j) {
  RunConfig cfg = RunConfig::defaults(parse_task_kind(j.at("task").get<std::string>()));
  cfg.predictor.method = predict::parse_method(j.at("method").get<std::string>());
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.epochs = j.at("epochs").get<int>();
  cfg.prediction_enabled = j.at("prediction_enabled").get<bool>();
  cfg.optimizer =
      grad::parse_optimizer_kind(j.at("optimizer").at("kind").get<std::string>());
  cfg.learning_rate = j.at("optimizer").at("learning_rate").get<double>();
  const auto &g = j.at("gradient");
  cfg.gradient.kind = grad::parse_gradient_kind(g.at("kind").get<std::string>());
  cfg.gradient.spsa_c = g.at("spsa_c").get<double>();
  cfg.gradient.fd_h = g.at("fd_h").get<double>();
  const auto &p = j.at("predictor");
  cfg.predictor.interval = p.at("p").get<int>();
  cfg.predictor.nap_d0 = p.at("d0").get<double>();
  cfg.predictor.decay = p.at("r").get<double>();
  cfg.predictor.k = p.at("k").get<double>();
  cfg.predictor.max_extra = p.at("n").get<double>();
  cfg.predictor.epsilon = p.at("epsilon").get<double>();
  cfg.predictor.max_jump = p.at("max_jump").get<double>();
  const auto &e = j.at("execution");
  cfg.execution.shots.mode = e.at("mode").get<std::string>() == "sampled"
                                 ? sim::ShotMode::sampled
                                 : sim::ShotMode::exact;
  cfg.execution.shots.shots = e.at("shots").get<int>();
  cfg.execution.noise.enabled = e.at("noise").get<bool>();
  cfg.execution.noise.depolarizing_prob = e.at("depolarizing_prob").get<double>();
  cfg.execution.trajectories = e.at("trajectories").get<int>();
  if (j.contains("qaoa")) {
    const auto &q = j.at("qaoa");
    cfg.qaoa.graph_file = q.at("graph_file").get<std::string>();
    cfg.qaoa.nodes = q.at("nodes").get<int>();
    cfg.qaoa.edge_prob = q.at("edge_prob").get<double>();
    cfg.qaoa.depth = q.at("depth").get<int>();
    cfg.qaoa.graph_seed = read_optional_seed(q.at("graph_seed"));
  }
  if (j.contains("vqe")) {
    const auto &v = j.at("vqe");
    cfg.vqe.hamiltonian_file = v.at("hamiltonian_file").get<std::string>();
    cfg.vqe.ansatz = tasks::parse_ansatz_kind(v.at("ansatz").get<std::string>());
    cfg.vqe.electrons = v.at("electrons").get<int>();
    cfg.vqe.layers = v.at("layers").get<int>();
    cfg.vqe.convergence_tol = v.at("convergence_tol").get<double>();
  }
  if (j.contains("qnn")) {
    const auto &q = j.at("qnn");
    cfg.qnn.dataset_file = q.at("dataset_file").get<std::string>();
    cfg.qnn.classes = q.at("classes").get<int>();
    cfg.qnn.samples = q.at("samples").get<int>();
    cfg.qnn.spread = q.at("spread").get<double>();
    cfg.qnn.qubits = q.at("qubits").get<int>();
    cfg.qnn.layers = q.at("layers").get<int>();
    cfg.qnn.features_per_qubit = q.at("features_per_qubit").get<int>();
    cfg.qnn.hadamard_prelude = q.at("hadamard_prelude").get<bool>();
    cfg.qnn.batch_size = q.at("batch_size").get<int>();
    cfg.qnn.predict_head = q.at("predict_head").get<bool>();
    cfg.qnn.data_seed = read_optional_seed(q.at("data_seed"));
  }
  return cfg;
}

} // namespace dypp::harness
