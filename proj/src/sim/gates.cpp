#include "dypp/sim/gates.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <utility>

namespace dypp::sim {

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 14> kNames{{
    {GateKind::H, "H"},
    {GateKind::X, "X"},
    {GateKind::Y, "Y"},
    {GateKind::Z, "Z"},
    {GateKind::RX, "RX"},
    {GateKind::RY, "RY"},
    {GateKind::RZ, "RZ"},
    {GateKind::CNOT, "CNOT"},
    {GateKind::CZ, "CZ"},
    {GateKind::CRX, "CRX"},
    {GateKind::CRZ, "CRZ"},
    {GateKind::RZZ, "RZZ"},
    {GateKind::SingleExcitation, "SingleExcitation"},
    {GateKind::DoubleExcitation, "DoubleExcitation"},
}};

} // namespace

int arity(GateKind kind) {
  switch (kind) {
  case GateKind::H:
  case GateKind::X:
  case GateKind::Y:
  case GateKind::Z:
  case GateKind::RX:
  case GateKind::RY:
  case GateKind::RZ:
    return 1;
  case GateKind::CNOT:
  case GateKind::CZ:
  case GateKind::CRX:
  case GateKind::CRZ:
  case GateKind::RZZ:
  case GateKind::SingleExcitation:
    return 2;
  case GateKind::DoubleExcitation:
    return 4;
  }
  throw std::invalid_argument("unknown gate kind");
}

bool is_parameterized(GateKind kind) {
  switch (kind) {
  case GateKind::RX:
  case GateKind::RY:
  case GateKind::RZ:
  case GateKind::CRX:
  case GateKind::CRZ:
  case GateKind::RZZ:
  case GateKind::SingleExcitation:
  case GateKind::DoubleExcitation:
    return true;
  default:
    return false;
  }
}

std::string_view gate_name(GateKind kind) {
  for (const auto &[k, name] : kNames) {
    if (k == kind) {
      return name;
    }
  }
  throw std::invalid_argument("unknown gate kind");
}

GateKind parse_gate_kind(std::string_view name) {
  for (const auto &[k, n] : kNames) {
    if (n == name) {
      return k;
    }
  }
  throw std::invalid_argument("unknown gate kind: " + std::string(name));
}

} // namespace dypp::sim
