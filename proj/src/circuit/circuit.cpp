#include "dypp/circuit/circuit.hpp"

#include <stdexcept>
#include <string>

namespace dypp::circuit {

GateOp GateOp::fixed(GateKind kind, std::vector<int> targets) {
  GateOp op;
  op.kind = kind;
  op.targets = std::move(targets);
  return op;
}

GateOp GateOp::param(GateKind kind, std::vector<int> targets, int index,
                     double scale) {
  GateOp op = fixed(kind, std::move(targets));
  op.param_index = index;
  op.param_scale = scale;
  return op;
}

GateOp GateOp::angle(GateKind kind, std::vector<int> targets, double angle) {
  GateOp op = fixed(kind, std::move(targets));
  op.fixed_angle = angle;
  return op;
}

GateOp GateOp::feature(GateKind kind, std::vector<int> targets, int index) {
  GateOp op = fixed(kind, std::move(targets));
  op.feature_index = index;
  return op;
}

double GateOp::resolve_angle(std::span<const double> params,
                             std::span<const double> features) const {
  if (param_index) {
    return param_scale * params[static_cast<std::size_t>(*param_index)];
  }
  if (feature_index) {
    return features[static_cast<std::size_t>(*feature_index)];
  }
  if (fixed_angle) {
    return *fixed_angle;
  }
  return 0.0;
}

ParameterizedCircuit::ParameterizedCircuit(int num_qubits,
                                           std::vector<GateOp> prelude,
                                           std::vector<GateOp> ops,
                                           int num_params, int num_features)
    : num_qubits_(num_qubits), prelude_(std::move(prelude)),
      ops_(std::move(ops)), num_params_(num_params),
      num_features_(num_features) {
  if (num_qubits < 1 || num_qubits > sim::kMaxQubits) {
    throw std::invalid_argument("circuit qubit count out of range");
  }
  if (num_params < 0 || num_features < 0) {
    throw std::invalid_argument("negative parameter or feature count");
  }
  for (const auto &op : prelude_) {
    validate_op(op, false);
  }
  std::vector<bool> used(static_cast<std::size_t>(num_params), false);
  for (const auto &op : ops_) {
    validate_op(op, true);
    if (op.param_index) {
      used[static_cast<std::size_t>(*op.param_index)] = true;
    }
  }
  for (std::size_t j = 0; j < used.size(); ++j) {
    if (!used[j]) {
      throw std::invalid_argument("parameter " + std::to_string(j) +
                                  " is never referenced");
    }
  }
}

void ParameterizedCircuit::validate_op(const GateOp &op, bool trainable) const {
  if (static_cast<int>(op.targets.size()) != sim::arity(op.kind)) {
    throw std::invalid_argument(std::string(sim::gate_name(op.kind)) +
                                " has wrong target count");
  }
  for (int t : op.targets) {
    if (t < 0 || t >= num_qubits_) {
      throw std::out_of_range("gate target " + std::to_string(t) +
                              " out of range");
    }
  }
  const int sources = (op.param_index ? 1 : 0) + (op.fixed_angle ? 1 : 0) +
                      (op.feature_index ? 1 : 0);
  if (sources > 1) {
    throw std::invalid_argument("gate angle has more than one source");
  }
  if (sim::is_parameterized(op.kind) != (sources == 1)) {
    throw std::invalid_argument(std::string(sim::gate_name(op.kind)) +
                                (sources == 1 ? " takes no angle"
                                              : " needs an angle source"));
  }
  if (op.param_index) {
    if (!trainable) {
      throw std::invalid_argument("prelude gates cannot be trainable");
    }
    if (*op.param_index < 0 || *op.param_index >= num_params_) {
      throw std::out_of_range("parameter index out of range");
    }
  }
  if (op.feature_index &&
      (*op.feature_index < 0 || *op.feature_index >= num_features_)) {
    throw std::out_of_range("feature index out of range");
  }
}

ParameterizedCircuit
ParameterizedCircuit::with_prelude(std::vector<GateOp> prelude,
                                   int num_features) const {
  return ParameterizedCircuit(num_qubits_, std::move(prelude), ops_,
                              num_params_, num_features);
}

void ParameterizedCircuit::check_inputs(std::span<const double> params,
                                        std::span<const double> features) const {
  if (static_cast<int>(params.size()) != num_params_) {
    throw std::invalid_argument("expected " + std::to_string(num_params_) +
                                " parameters, got " +
                                std::to_string(params.size()));
  }
  if (static_cast<int>(features.size()) != num_features_) {
    throw std::invalid_argument("expected " + std::to_string(num_features_) +
                                " features, got " +
                                std::to_string(features.size()));
  }
}

sim::StateVector
ParameterizedCircuit::simulate(std::span<const double> params,
                               std::span<const double> features,
                               std::optional<AngleShift> shift) const {
  check_inputs(params, features);
  sim::StateVector state(num_qubits_);
  for (const auto &op : prelude_) {
    state.apply(op.kind, op.targets, op.resolve_angle(params, features));
  }
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    double angle = ops_[i].resolve_angle(params, features);
    if (shift && shift->op_index == i) {
      angle += shift->offset;
    }
    state.apply(ops_[i].kind, ops_[i].targets, angle);
  }
  return state;
}

sim::StateVector ParameterizedCircuit::simulate_noisy(
    std::span<const double> params, std::span<const double> features,
    const sim::NoiseSpec &noise, Rng &rng,
    std::optional<AngleShift> shift) const {
  check_inputs(params, features);
  sim::StateVector state(num_qubits_);
  for (const auto &op : prelude_) {
    sim::apply_noisy_gate(state, op.kind, op.targets,
                          op.resolve_angle(params, features), noise, rng);
  }
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    double angle = ops_[i].resolve_angle(params, features);
    if (shift && shift->op_index == i) {
      angle += shift->offset;
    }
    sim::apply_noisy_gate(state, ops_[i].kind, ops_[i].targets, angle, noise,
                          rng);
  }
  return state;
}

} // namespace dypp::circuit
