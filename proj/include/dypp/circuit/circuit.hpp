#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dypp/sim/gates.hpp"
#include "dypp/sim/noise.hpp"
#include "dypp/sim/random.hpp"
#include "dypp/sim/state_vector.hpp"

namespace dypp::circuit {

using sim::GateKind;

/**
 * One gate of a parameterized circuit. A rotation angle comes from exactly
 * one source: a trainable parameter slot (times `param_scale`), a fixed
 * angle, or a classical feature slot. Fixed gates carry no source.
 */
struct GateOp {
  GateKind kind = GateKind::H;
  std::vector<int> targets;
  std::optional<int> param_index;
  std::optional<double> fixed_angle;
  std::optional<int> feature_index;
  double param_scale = 1.0;

  static GateOp fixed(GateKind kind, std::vector<int> targets);
  static GateOp param(GateKind kind, std::vector<int> targets, int index,
                      double scale = 1.0);
  static GateOp angle(GateKind kind, std::vector<int> targets, double angle);
  static GateOp feature(GateKind kind, std::vector<int> targets, int index);

  /// Gate angle for the given parameter and feature vectors.
  [[nodiscard]] double resolve_angle(std::span<const double> params,
                                     std::span<const double> features) const;
};

/// Adds `offset` to the angle of ops()[op_index] during one simulation.
struct AngleShift {
  std::size_t op_index = 0;
  double offset = 0.0;
};

class ParameterizedCircuit {
public:
  ParameterizedCircuit(int num_qubits, std::vector<GateOp> prelude,
                       std::vector<GateOp> ops, int num_params,
                       int num_features = 0);

  [[nodiscard]] int num_qubits() const { return num_qubits_; }
  [[nodiscard]] int num_params() const { return num_params_; }
  [[nodiscard]] int num_features() const { return num_features_; }
  [[nodiscard]] const std::vector<GateOp> &prelude() const { return prelude_; }
  [[nodiscard]] const std::vector<GateOp> &ops() const { return ops_; }

  /// Same trainable ops with a different preparation block.
  [[nodiscard]] ParameterizedCircuit with_prelude(std::vector<GateOp> prelude,
                                                  int num_features) const;

  [[nodiscard]] sim::StateVector
  simulate(std::span<const double> params, std::span<const double> features = {},
           std::optional<AngleShift> shift = std::nullopt) const;

  /// One stochastic noise trajectory of the circuit.
  [[nodiscard]] sim::StateVector
  simulate_noisy(std::span<const double> params,
                 std::span<const double> features, const sim::NoiseSpec &noise,
                 Rng &rng, std::optional<AngleShift> shift = std::nullopt) const;

private:
  void validate_op(const GateOp &op, bool trainable) const;
  void check_inputs(std::span<const double> params,
                    std::span<const double> features) const;

  int num_qubits_;
  std::vector<GateOp> prelude_;
  std::vector<GateOp> ops_;
  int num_params_;
  int num_features_;
};

} // namespace dypp::circuit
