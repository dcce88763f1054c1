#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dypp/circuit/builders.hpp"
#include "dypp/circuit/executor.hpp"
#include "dypp/grad/gradient.hpp"
#include "dypp/sim/random.hpp"
#include "dypp/tasks/dataset.hpp"

namespace dypp::tasks {

/**
 * Hybrid classifier: angle-encoded features, a hardware-efficient PQC, the
 * per-qubit <Z> readout, and a dense softmax head.
 *
 * The flat parameter vector is [pqc params | head weights (qubit-major,
 * num_qubits x num_classes) | head bias (num_classes)].
 */
struct QnnTask {
  Dataset data;
  circuit::EncodingSpec encoder;
  int num_qubits = 4;
  int layers = 1;
  int batch_size = 32;
  circuit::ParameterizedCircuit circuit;

  QnnTask(Dataset data, int num_qubits, int layers,
          circuit::EncodingSpec encoder = {}, int batch_size = 32);

  [[nodiscard]] int num_classes() const { return data.num_classes; }
  [[nodiscard]] std::size_t num_quantum_params() const {
    return static_cast<std::size_t>(circuit.num_params());
  }
  [[nodiscard]] std::size_t num_head_params() const {
    return static_cast<std::size_t>(num_qubits * num_classes() + num_classes());
  }
  [[nodiscard]] std::size_t num_params() const {
    return num_quantum_params() + num_head_params();
  }

  /// Quantum ~ U(-pi/2, pi/2), head weights ~ U(-0.5, 0.5), bias 0.
  [[nodiscard]] std::vector<double> initial_params(std::uint64_t seed) const;
};

/// Row-wise stable softmax.
std::vector<double> softmax(std::span<const double> logits);

/// Logits of the dense head for a readout vector.
std::vector<double> head_logits(std::span<const double> readout,
                                std::span<const double> params,
                                const QnnTask &task);

/// Class probabilities of one sample.
std::vector<double> qnn_forward(std::span<const double> features,
                                std::span<const double> params,
                                const QnnTask &task, circuit::Executor &executor);

/// Exact, uncharged forward pass.
std::vector<double> qnn_forward(std::span<const double> features,
                                std::span<const double> params,
                                const QnnTask &task);

struct QnnGradient {
  double loss = 0.0;
  std::vector<double> quantum;
  std::vector<double> head; // weights then bias

  /// Gradient in the flat parameter layout.
  [[nodiscard]] std::vector<double> flat() const;
};

/**
 * Mean cross-entropy over `batch` (indices into task.data) with its
 * gradient. Head gradients are analytic; quantum gradients chain dL/d<Z_j>
 * with a Jacobian of the readout from `method`.
 */
QnnGradient qnn_loss_and_grad(std::span<const std::size_t> batch,
                              std::span<const double> params,
                              const QnnTask &task,
                              const grad::GradientMethod &method,
                              circuit::Executor &executor, Rng &rng);

struct QnnScore {
  double loss = 0.0;
  double accuracy = 0.0;
};

/// Exact mean cross-entropy and accuracy over `rows`.
QnnScore qnn_evaluate(std::span<const std::size_t> rows,
                      std::span<const double> params, const QnnTask &task);

} // namespace dypp::tasks
