#pragma once

#include <string_view>

namespace dypp::sim {

enum class GateKind {
  H,
  X,
  Y,
  Z,
  RX,
  RY,
  RZ,
  CNOT,
  CZ,
  CRX,
  CRZ,
  RZZ,
  SingleExcitation,
  DoubleExcitation,
};

/// Number of qubits the gate acts on.
int arity(GateKind kind);

/// True when the gate takes a rotation angle.
bool is_parameterized(GateKind kind);

std::string_view gate_name(GateKind kind);

/// Inverse of gate_name. Throws std::invalid_argument on unknown names.
GateKind parse_gate_kind(std::string_view name);

} // namespace dypp::sim
