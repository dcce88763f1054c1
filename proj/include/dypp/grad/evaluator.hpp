#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dypp/circuit/circuit.hpp"
#include "dypp/circuit/executor.hpp"
#include "dypp/sim/observable.hpp"

namespace dypp::grad {

/// How the derivative with respect to one gate angle is obtained.
enum class ShiftRule {
  two_term,         // exp(-i theta P / 2): (f(+pi/2) - f(-pi/2)) / 2
  four_term,        // generator spectrum {-1/2, 0, 1/2}
  finite_difference // central difference on the gate angle
};

/// Shift rule for a parameterized gate kind.
ShiftRule shift_rule_for(sim::GateKind kind);

/**
 * One place where a parameter enters the evaluated function. For circuits
 * this is a gate occurrence whose angle is `scale * theta[param]`; the
 * derivative of the function in theta[param] sums over its slots.
 */
struct ShiftSlot {
  std::size_t param = 0;
  double scale = 1.0;
  ShiftRule rule = ShiftRule::two_term;
};

struct SlotShift {
  std::size_t slot = 0;
  double offset = 0.0;
};

/**
 * Vector-valued function of a parameter vector. Scalar losses have one
 * output. Implementations charge their own circuit executions.
 */
class Evaluator {
public:
  virtual ~Evaluator() = default;

  [[nodiscard]] virtual std::size_t num_params() const = 0;
  [[nodiscard]] virtual std::size_t num_outputs() const { return 1; }

  /// Evaluates at theta, with an optional offset on one slot's angle.
  virtual std::vector<double> evaluate(std::span<const double> theta,
                                       std::optional<SlotShift> shift) = 0;

  std::vector<double> evaluate(std::span<const double> theta) {
    return evaluate(theta, std::nullopt);
  }

  /// Defaults to one unit-scale two-term slot per parameter.
  [[nodiscard]] virtual std::vector<ShiftSlot> shift_slots() const;
};

/// Scalar function of theta; slot j is theta[j] itself.
class FunctionEvaluator final : public Evaluator {
public:
  using Fn = std::function<double(std::span<const double>)>;

  FunctionEvaluator(std::size_t num_params, Fn fn);

  [[nodiscard]] std::size_t num_params() const override { return num_params_; }
  std::vector<double> evaluate(std::span<const double> theta,
                               std::optional<SlotShift> shift) override;
  using Evaluator::evaluate;

private:
  std::size_t num_params_;
  Fn fn_;
};

/// Shift slots of every parameterized op of a circuit's trainable block.
std::vector<ShiftSlot> circuit_slots(const circuit::ParameterizedCircuit &circuit);

/// Expectation of an observable on a circuit, run through an executor.
class CircuitExpectation final : public Evaluator {
public:
  CircuitExpectation(const circuit::ParameterizedCircuit &circuit,
                     const sim::Observable &obs, circuit::Executor &executor,
                     std::vector<double> features = {});

  [[nodiscard]] std::size_t num_params() const override;
  std::vector<double> evaluate(std::span<const double> theta,
                               std::optional<SlotShift> shift) override;
  using Evaluator::evaluate;
  [[nodiscard]] std::vector<ShiftSlot> shift_slots() const override {
    return slots_;
  }

private:
  const circuit::ParameterizedCircuit &circuit_;
  const sim::Observable &obs_;
  circuit::Executor &executor_;
  std::vector<double> features_;
  std::vector<ShiftSlot> slots_;
  std::vector<std::size_t> slot_ops_;
};

/// Per-qubit <Z> vector of a circuit for fixed features.
class CircuitZReadout final : public Evaluator {
public:
  CircuitZReadout(const circuit::ParameterizedCircuit &circuit,
                  circuit::Executor &executor, std::vector<double> features);

  [[nodiscard]] std::size_t num_params() const override;
  [[nodiscard]] std::size_t num_outputs() const override;
  std::vector<double> evaluate(std::span<const double> theta,
                               std::optional<SlotShift> shift) override;
  using Evaluator::evaluate;
  [[nodiscard]] std::vector<ShiftSlot> shift_slots() const override {
    return slots_;
  }

private:
  const circuit::ParameterizedCircuit &circuit_;
  circuit::Executor &executor_;
  std::vector<double> features_;
  std::vector<ShiftSlot> slots_;
  std::vector<std::size_t> slot_ops_;
};

/// Forwards to another evaluator and counts calls.
class CountingEvaluator final : public Evaluator {
public:
  explicit CountingEvaluator(Evaluator &inner) : inner_(inner) {}

  [[nodiscard]] std::size_t num_params() const override {
    return inner_.num_params();
  }
  [[nodiscard]] std::size_t num_outputs() const override {
    return inner_.num_outputs();
  }
  std::vector<double> evaluate(std::span<const double> theta,
                               std::optional<SlotShift> shift) override {
    ++calls_;
    return inner_.evaluate(theta, shift);
  }
  using Evaluator::evaluate;
  [[nodiscard]] std::vector<ShiftSlot> shift_slots() const override {
    return inner_.shift_slots();
  }
  [[nodiscard]] std::size_t calls() const { return calls_; }

private:
  Evaluator &inner_;
  std::size_t calls_ = 0;
};

} // namespace dypp::grad
