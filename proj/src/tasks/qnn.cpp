#include "dypp/tasks/qnn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dypp/grad/evaluator.hpp"

namespace dypp::tasks {

namespace {

circuit::ParameterizedCircuit make_circuit(int num_qubits, int layers,
                                           const circuit::EncodingSpec &enc) {
  const auto pqc = circuit::build_hea(num_qubits, layers);
  return pqc.with_prelude(circuit::build_encoder(num_qubits, enc),
                          num_qubits * enc.features_per_qubit);
}

std::span<const double> quantum_part(std::span<const double> params,
                                     const QnnTask &task) {
  return params.first(task.num_quantum_params());
}

double head_weight(std::span<const double> params, const QnnTask &task,
                   int qubit, int cls) {
  return params[task.num_quantum_params() +
                static_cast<std::size_t>(qubit * task.num_classes() + cls)];
}

void check_params(std::span<const double> params, const QnnTask &task) {
  if (params.size() != task.num_params()) {
    throw std::invalid_argument("QNN expects " + std::to_string(task.num_params()) +
                                " parameters, got " + std::to_string(params.size()));
  }
}

void check_features(std::span<const double> features, const QnnTask &task) {
  if (static_cast<int>(features.size()) != task.circuit.num_features()) {
    throw std::invalid_argument("QNN expects " +
                                std::to_string(task.circuit.num_features()) +
                                " features, got " + std::to_string(features.size()));
  }
}

std::vector<double> exact_readout(std::span<const double> features,
                                  std::span<const double> params,
                                  const QnnTask &task) {
  const auto state = task.circuit.simulate(quantum_part(params, task), features);
  std::vector<double> z(static_cast<std::size_t>(task.num_qubits), 0.0);
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    for (int q = 0; q < task.num_qubits; ++q) {
      z[static_cast<std::size_t>(q)] += (i & state.mask(q)) != 0 ? -p : p;
    }
  }
  return z;
}

} // namespace

QnnTask::QnnTask(Dataset d, int qubits, int l, circuit::EncodingSpec enc,
                 int batch)
    : data(std::move(d)), encoder(enc), num_qubits(qubits), layers(l),
      batch_size(batch), circuit(make_circuit(qubits, l, enc)) {
  data.validate();
  if (static_cast<int>(data.dim()) != num_qubits * encoder.features_per_qubit) {
    throw std::invalid_argument(
        "feature dimension " + std::to_string(data.dim()) + " does not match " +
        std::to_string(num_qubits) + " qubits x " +
        std::to_string(encoder.features_per_qubit) + " features per qubit");
  }
  if (batch_size < 1) {
    throw std::invalid_argument("batch size must be >= 1");
  }
}

std::vector<double> QnnTask::initial_params(std::uint64_t seed) const {
  Rng rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi / 2.0,
                                               std::numbers::pi / 2.0);
  std::uniform_real_distribution<double> weight(-0.5, 0.5);
  std::vector<double> params(num_params(), 0.0);
  for (std::size_t j = 0; j < num_quantum_params(); ++j) {
    params[j] = angle(rng);
  }
  const std::size_t weights_end =
      num_quantum_params() + static_cast<std::size_t>(num_qubits * num_classes());
  for (std::size_t j = num_quantum_params(); j < weights_end; ++j) {
    params[j] = weight(rng);
  }
  return params;
}

std::vector<double> softmax(std::span<const double> logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double total = 0.0;
  for (std::size_t c = 0; c < logits.size(); ++c) {
    out[c] = std::exp(logits[c] - top);
    total += out[c];
  }
  for (auto &v : out) {
    v /= total;
  }
  return out;
}

std::vector<double> head_logits(std::span<const double> readout,
                                std::span<const double> params,
                                const QnnTask &task) {
  const int classes = task.num_classes();
  const std::size_t bias = task.num_quantum_params() +
                           static_cast<std::size_t>(task.num_qubits * classes);
  std::vector<double> logits(static_cast<std::size_t>(classes));
  for (int c = 0; c < classes; ++c) {
    double z = params[bias + static_cast<std::size_t>(c)];
    for (int q = 0; q < task.num_qubits; ++q) {
      z += head_weight(params, task, q, c) * readout[static_cast<std::size_t>(q)];
    }
    logits[static_cast<std::size_t>(c)] = z;
  }
  return logits;
}

std::vector<double> qnn_forward(std::span<const double> features,
                                std::span<const double> params,
                                const QnnTask &task, circuit::Executor &executor) {
  check_params(params, task);
  check_features(features, task);
  const auto z =
      executor.z_expectations(task.circuit, quantum_part(params, task), features);
  return softmax(head_logits(z, params, task));
}

std::vector<double> qnn_forward(std::span<const double> features,
                                std::span<const double> params,
                                const QnnTask &task) {
  check_params(params, task);
  check_features(features, task);
  return softmax(head_logits(exact_readout(features, params, task), params, task));
}

std::vector<double> QnnGradient::flat() const {
  std::vector<double> out(quantum);
  out.insert(out.end(), head.begin(), head.end());
  return out;
}

QnnGradient qnn_loss_and_grad(std::span<const std::size_t> batch,
                              std::span<const double> params,
                              const QnnTask &task,
                              const grad::GradientMethod &method,
                              circuit::Executor &executor, Rng &rng) {
  check_params(params, task);
  if (batch.empty()) {
    throw std::invalid_argument("empty batch");
  }
  const int classes = task.num_classes();
  const auto nq = static_cast<std::size_t>(task.num_qubits);
  const auto theta = quantum_part(params, task);
  QnnGradient out;
  out.quantum.assign(task.num_quantum_params(), 0.0);
  out.head.assign(task.num_head_params(), 0.0);

  for (std::size_t row : batch) {
    const auto &features = task.data.features.at(row);
    const int label = task.data.labels.at(row);
    grad::CircuitZReadout readout(task.circuit, executor, features);
    const auto z = readout.evaluate(theta);
    const auto probs = softmax(head_logits(z, params, task));
    out.loss -= std::log(std::max(probs[static_cast<std::size_t>(label)], 1e-300));

    std::vector<double> dlogit(probs);
    dlogit[static_cast<std::size_t>(label)] -= 1.0;
    std::vector<double> dz(nq, 0.0);
    for (std::size_t q = 0; q < nq; ++q) {
      for (int c = 0; c < classes; ++c) {
        const auto cc = static_cast<std::size_t>(c);
        out.head[q * static_cast<std::size_t>(classes) + cc] += z[q] * dlogit[cc];
        dz[q] += head_weight(params, task, static_cast<int>(q), c) * dlogit[cc];
      }
    }
    for (int c = 0; c < classes; ++c) {
      out.head[nq * static_cast<std::size_t>(classes) + static_cast<std::size_t>(c)] +=
          dlogit[static_cast<std::size_t>(c)];
    }

    const auto jac = grad::estimate_jacobian(readout, theta, method, rng);
    for (std::size_t q = 0; q < nq; ++q) {
      for (std::size_t j = 0; j < out.quantum.size(); ++j) {
        out.quantum[j] += dz[q] * jac(q, j);
      }
    }
  }

  const double scale = 1.0 / static_cast<double>(batch.size());
  out.loss *= scale;
  for (auto &g : out.quantum) {
    g *= scale;
  }
  for (auto &g : out.head) {
    g *= scale;
  }
  return out;
}

QnnScore qnn_evaluate(std::span<const std::size_t> rows,
                      std::span<const double> params, const QnnTask &task) {
  check_params(params, task);
  if (rows.empty()) {
    throw std::invalid_argument("no rows to evaluate");
  }
  QnnScore score;
  int correct = 0;
  for (std::size_t row : rows) {
    const auto probs = qnn_forward(task.data.features.at(row), params, task);
    const auto label = static_cast<std::size_t>(task.data.labels.at(row));
    score.loss -= std::log(std::max(probs[label], 1e-300));
    const auto best = static_cast<std::size_t>(
        std::max_element(probs.begin(), probs.end()) - probs.begin());
    correct += best == label ? 1 : 0;
  }
  score.loss /= static_cast<double>(rows.size());
  score.accuracy = static_cast<double>(correct) / static_cast<double>(rows.size());
  return score;
}

} // namespace dypp::tasks
