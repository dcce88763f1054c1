#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "dypp/circuit/executor.hpp"
#include "dypp/grad/gradient.hpp"
#include "dypp/grad/optimizer.hpp"
#include "dypp/predict/predictor.hpp"
#include "dypp/tasks/vqe.hpp"

namespace dypp::harness {

enum class TaskKind { qaoa, vqe, qnn };

std::string_view task_name(TaskKind kind);
TaskKind parse_task_kind(std::string_view name);

struct QaoaSettings {
  std::string graph_file; // empty: draw an Erdos-Renyi graph
  int nodes = 4;
  double edge_prob = 0.6;
  int depth = 1;
  std::optional<std::uint64_t> graph_seed; // defaults to the run seed
};

struct VqeSettings {
  std::string hamiltonian_file;
  tasks::AnsatzKind ansatz = tasks::AnsatzKind::uccsd;
  int electrons = 2;
  int layers = 1;
  double convergence_tol = 1e-6;
};

struct QnnSettings {
  std::string dataset_file; // empty: synthetic blobs
  int classes = 4;
  int samples = 1000;
  double spread = 0.3;
  int qubits = 4;
  int layers = 1;
  int features_per_qubit = 2;
  bool hadamard_prelude = true;
  int batch_size = 32;
  bool predict_head = true; // false: predictions touch quantum params only
  std::optional<std::uint64_t> data_seed; // defaults to the run seed
};

/// Everything needed to rerun one training run bit-identically.
struct RunConfig {
  TaskKind task = TaskKind::qaoa;
  QaoaSettings qaoa;
  VqeSettings vqe;
  QnnSettings qnn;

  predict::PredictorConfig predictor;
  grad::OptimizerKind optimizer = grad::OptimizerKind::adagrad;
  double learning_rate = 0.05;
  grad::GradientMethod gradient;
  int epochs = 100;
  circuit::ExecutionConfig execution;
  std::uint64_t seed = 0;
  bool prediction_enabled = true;

  /**
   * Per-task defaults: QNN (p=5, d0=3, k=1e-4, Adam 0.002, 200 epochs),
   * VQE (p=4, d0=5, k=0.01, SGD 0.1, tol 1e-6), QAOA (p=4, d0=3, k=0.01,
   * Adagrad 0.05, 100 steps); n=12 and r=0.95 throughout. Noisy setups
   * raise p by one.
   */
  static RunConfig defaults(TaskKind task, bool noisy = false);

  void validate() const;
  /// Predictor settings with the learning rate mirrored from the optimizer.
  [[nodiscard]] predict::PredictorConfig resolved_predictor() const;
};

nlohmann::json to_json(const RunConfig &cfg);
RunConfig run_config_from_json(const nlohmann::json &j);

} // namespace dypp::harness
