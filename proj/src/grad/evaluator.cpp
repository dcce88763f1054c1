#include "dypp/grad/evaluator.hpp"

#include <stdexcept>

namespace dypp::grad {

namespace {

void collect_slots(const circuit::ParameterizedCircuit &circuit,
                   std::vector<ShiftSlot> &slots,
                   std::vector<std::size_t> &ops) {
  for (std::size_t i = 0; i < circuit.ops().size(); ++i) {
    const auto &op = circuit.ops()[i];
    if (!op.param_index) {
      continue;
    }
    slots.push_back({static_cast<std::size_t>(*op.param_index), op.param_scale,
                     shift_rule_for(op.kind)});
    ops.push_back(i);
  }
}

std::optional<circuit::AngleShift>
to_angle_shift(std::optional<SlotShift> shift,
               const std::vector<std::size_t> &slot_ops) {
  if (!shift) {
    return std::nullopt;
  }
  return circuit::AngleShift{slot_ops.at(shift->slot), shift->offset};
}

} // namespace

ShiftRule shift_rule_for(sim::GateKind kind) {
  switch (kind) {
  case sim::GateKind::RX:
  case sim::GateKind::RY:
  case sim::GateKind::RZ:
  case sim::GateKind::RZZ:
    return ShiftRule::two_term;
  case sim::GateKind::SingleExcitation:
  case sim::GateKind::DoubleExcitation:
    return ShiftRule::four_term;
  case sim::GateKind::CRX:
  case sim::GateKind::CRZ:
    return ShiftRule::finite_difference;
  default:
    throw std::invalid_argument("gate kind has no shift rule");
  }
}

std::vector<ShiftSlot> Evaluator::shift_slots() const {
  std::vector<ShiftSlot> slots(num_params());
  for (std::size_t j = 0; j < slots.size(); ++j) {
    slots[j].param = j;
  }
  return slots;
}

FunctionEvaluator::FunctionEvaluator(std::size_t num_params, Fn fn)
    : num_params_(num_params), fn_(std::move(fn)) {}

std::vector<double> FunctionEvaluator::evaluate(std::span<const double> theta,
                                                std::optional<SlotShift> shift) {
  if (theta.size() != num_params_) {
    throw std::invalid_argument("parameter vector has wrong length");
  }
  if (!shift) {
    return {fn_(theta)};
  }
  std::vector<double> shifted(theta.begin(), theta.end());
  shifted.at(shift->slot) += shift->offset;
  return {fn_(shifted)};
}

std::vector<ShiftSlot>
circuit_slots(const circuit::ParameterizedCircuit &circuit) {
  std::vector<ShiftSlot> slots;
  std::vector<std::size_t> ops;
  collect_slots(circuit, slots, ops);
  return slots;
}

CircuitExpectation::CircuitExpectation(
    const circuit::ParameterizedCircuit &circuit, const sim::Observable &obs,
    circuit::Executor &executor, std::vector<double> features)
    : circuit_(circuit), obs_(obs), executor_(executor),
      features_(std::move(features)) {
  collect_slots(circuit_, slots_, slot_ops_);
}

std::size_t CircuitExpectation::num_params() const {
  return static_cast<std::size_t>(circuit_.num_params());
}

std::vector<double>
CircuitExpectation::evaluate(std::span<const double> theta,
                             std::optional<SlotShift> shift) {
  return {executor_.expectation(circuit_, theta, features_, obs_,
                                to_angle_shift(shift, slot_ops_))};
}

CircuitZReadout::CircuitZReadout(const circuit::ParameterizedCircuit &circuit,
                                 circuit::Executor &executor,
                                 std::vector<double> features)
    : circuit_(circuit), executor_(executor), features_(std::move(features)) {
  collect_slots(circuit_, slots_, slot_ops_);
}

std::size_t CircuitZReadout::num_params() const {
  return static_cast<std::size_t>(circuit_.num_params());
}

std::size_t CircuitZReadout::num_outputs() const {
  return static_cast<std::size_t>(circuit_.num_qubits());
}

std::vector<double> CircuitZReadout::evaluate(std::span<const double> theta,
                                              std::optional<SlotShift> shift) {
  return executor_.z_expectations(circuit_, theta, features_,
                                  to_angle_shift(shift, slot_ops_));
}

} // namespace dypp::grad
