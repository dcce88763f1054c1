#include "dypp/harness/trainable.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "dypp/grad/evaluator.hpp"
#include "dypp/tasks/maxcut.hpp"
#include "dypp/tasks/qnn.hpp"
#include "dypp/tasks/vqe.hpp"

namespace dypp::harness {

using nlohmann::json;

json Trainable::final_report(std::span<const double>, const RunConfig &) const {
  return json::object();
}

namespace {

void descend(std::vector<double> &params, grad::Optimizer &optimizer,
             grad::Evaluator &loss, const grad::GradientMethod &method, Rng &rng,
             double sign) {
  const auto jac = grad::estimate_jacobian(loss, params, method, rng);
  auto g = jac.row(0);
  for (auto &v : g) {
    v *= sign;
  }
  optimizer.step(params, g);
}

class MaxCutTrainable final : public Trainable {
public:
  explicit MaxCutTrainable(tasks::MaxCutTask task) : task_(std::move(task)) {}

  [[nodiscard]] std::size_t num_params() const override {
    return static_cast<std::size_t>(task_.circuit.num_params());
  }

  [[nodiscard]] std::vector<double> initial_params(std::uint64_t seed) const override {
    Rng rng(seed);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / 2.0);
    std::vector<double> params(num_params());
    for (auto &p : params) {
      p = angle(rng);
    }
    return params;
  }

  void train_epoch(std::vector<double> &params, grad::Optimizer &optimizer,
                   const grad::GradientMethod &method, circuit::Executor &executor,
                   Rng &rng) override {
    grad::CircuitExpectation cut(task_.circuit, task_.cost, executor);
    descend(params, optimizer, cut, method, rng, -1.0);
  }

  [[nodiscard]] Snapshot snapshot(std::span<const double> params) const override {
    const double cut = tasks::cut_expectation(params, task_);
    return {-cut, cut / static_cast<double>(task_.true_maxcut)};
  }

  [[nodiscard]] bool metric_lower_is_better() const override { return false; }

  [[nodiscard]] json describe() const override {
    json edges = json::array();
    for (const auto &[u, v] : task_.graph.edges) {
      edges.push_back({u, v});
    }
    return {{"num_nodes", task_.graph.num_nodes},
            {"edges", edges},
            {"depth", task_.depth},
            {"num_params", num_params()},
            {"true_maxcut", task_.true_maxcut},
            {"loss", "negated expected cut"},
            {"metric", "approximation ratio"}};
  }

  [[nodiscard]] json final_report(std::span<const double> params,
                                  const RunConfig &cfg) const override {
    circuit::ExecutionConfig exec = cfg.execution;
    exec.shots.mode = sim::ShotMode::sampled;
    circuit::Executor sampler(exec, derive_seed(cfg.seed, kReportStream));
    return {{"best_sampled_cut", tasks::best_sampled_cut(params, task_, sampler)},
            {"expected_cut", tasks::cut_expectation(params, task_)}};
  }

private:
  tasks::MaxCutTask task_;
};

class VqeTrainable final : public Trainable {
public:
  explicit VqeTrainable(tasks::VqeTask task) : task_(std::move(task)) {}

  [[nodiscard]] std::size_t num_params() const override {
    return static_cast<std::size_t>(task_.ansatz.num_params());
  }

  [[nodiscard]] std::vector<double> initial_params(std::uint64_t) const override {
    return std::vector<double>(num_params(), 0.0);
  }

  void train_epoch(std::vector<double> &params, grad::Optimizer &optimizer,
                   const grad::GradientMethod &method, circuit::Executor &executor,
                   Rng &rng) override {
    grad::CircuitExpectation energy(task_.ansatz, task_.hamiltonian, executor);
    descend(params, optimizer, energy, method, rng, 1.0);
  }

  [[nodiscard]] Snapshot snapshot(std::span<const double> params) const override {
    const double e = tasks::vqe_energy(params, task_);
    return {e, e};
  }

  [[nodiscard]] bool metric_lower_is_better() const override { return true; }

  [[nodiscard]] std::optional<double> convergence_tol() const override {
    return task_.convergence_tol;
  }

  [[nodiscard]] json describe() const override {
    return {{"num_qubits", task_.hamiltonian.num_qubits()},
            {"num_terms", task_.hamiltonian.terms().size()},
            {"num_params", num_params()},
            {"exact_energy", task_.exact_energy},
            {"loss", "energy"},
            {"metric", "energy"}};
  }

private:
  tasks::VqeTask task_;
};

class QnnTrainable final : public Trainable {
public:
  QnnTrainable(tasks::QnnTask task, bool predict_head)
      : task_(std::move(task)), predict_head_(predict_head) {}

  [[nodiscard]] std::size_t num_params() const override { return task_.num_params(); }

  [[nodiscard]] std::vector<double> initial_params(std::uint64_t seed) const override {
    return task_.initial_params(seed);
  }

  void train_epoch(std::vector<double> &params, grad::Optimizer &optimizer,
                   const grad::GradientMethod &method, circuit::Executor &executor,
                   Rng &rng) override {
    std::vector<std::size_t> order = task_.data.train;
    std::shuffle(order.begin(), order.end(), rng);
    const auto batch = static_cast<std::size_t>(task_.batch_size);
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t end = std::min(order.size(), start + batch);
      const std::span<const std::size_t> rows(order.data() + start, end - start);
      const auto g = tasks::qnn_loss_and_grad(rows, params, task_, method, executor, rng);
      optimizer.step(params, g.flat());
    }
  }

  [[nodiscard]] Snapshot snapshot(std::span<const double> params) const override {
    const auto score = tasks::qnn_evaluate(task_.data.test, params, task_);
    return {score.loss, score.accuracy};
  }

  [[nodiscard]] bool metric_lower_is_better() const override { return false; }

  [[nodiscard]] std::int64_t samples_per_iteration() const override {
    return static_cast<std::int64_t>(task_.data.train.size());
  }

  [[nodiscard]] std::vector<bool> prediction_mask() const override {
    std::vector<bool> mask(num_params(), true);
    if (!predict_head_) {
      std::fill(mask.begin() + static_cast<std::ptrdiff_t>(task_.num_quantum_params()),
                mask.end(), false);
    }
    return mask;
  }

  [[nodiscard]] json describe() const override {
    return {{"num_qubits", task_.num_qubits},
            {"layers", task_.layers},
            {"num_classes", task_.num_classes()},
            {"feature_dim", task_.data.dim()},
            {"train_size", task_.data.train.size()},
            {"test_size", task_.data.test.size()},
            {"num_quantum_params", task_.num_quantum_params()},
            {"num_head_params", task_.num_head_params()},
            {"num_params", num_params()},
            {"loss", "test cross-entropy"},
            {"metric", "test accuracy"}};
  }

  [[nodiscard]] json final_report(std::span<const double> params,
                                  const RunConfig &) const override {
    const auto train = tasks::qnn_evaluate(task_.data.train, params, task_);
    return {{"train_loss", train.loss}, {"train_accuracy", train.accuracy}};
  }

private:
  tasks::QnnTask task_;
  bool predict_head_;
};

tasks::Dataset load_qnn_data(const RunConfig &cfg) {
  const auto &q = cfg.qnn;
  const std::uint64_t seed = q.data_seed.value_or(cfg.seed);
  if (!q.dataset_file.empty()) {
    return tasks::load_dataset_csv(q.dataset_file, seed, q.classes);
  }
  return tasks::synth_blobs(q.classes, q.qubits * q.features_per_qubit, q.samples,
                            q.spread, seed);
}

} // namespace

std::unique_ptr<Trainable> make_trainable(const RunConfig &cfg) {
  switch (cfg.task) {
  case TaskKind::qaoa: {
    const auto &q = cfg.qaoa;
    auto graph = q.graph_file.empty()
                     ? tasks::generate_erdos_renyi(q.nodes, q.edge_prob,
                                                   q.graph_seed.value_or(cfg.seed))
                     : circuit::GraphSpec::load(q.graph_file);
    return std::make_unique<MaxCutTrainable>(tasks::MaxCutTask(std::move(graph), q.depth));
  }
  case TaskKind::vqe: {
    const auto &v = cfg.vqe;
    return std::make_unique<VqeTrainable>(
        tasks::VqeTask(sim::Observable::load(v.hamiltonian_file), v.ansatz,
                       v.electrons, v.layers, v.convergence_tol));
  }
  case TaskKind::qnn: {
    const auto &q = cfg.qnn;
    circuit::EncodingSpec enc;
    enc.features_per_qubit = q.features_per_qubit;
    enc.hadamard_prelude = q.hadamard_prelude;
    return std::make_unique<QnnTrainable>(
        tasks::QnnTask(load_qnn_data(cfg), q.qubits, q.layers, enc, q.batch_size),
        q.predict_head);
  }
  }
  throw std::invalid_argument("unknown task kind");
}

} // namespace dypp::harness
