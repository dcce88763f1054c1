#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace dypp::grad {

enum class OptimizerKind { sgd, adam, adagrad };

std::string_view optimizer_name(OptimizerKind kind);
OptimizerKind parse_optimizer_kind(std::string_view name);

/**
 * First-order optimizer with per-parameter state.
 *
 *   sgd:     theta -= lr * g
 *   adam:    bias-corrected moments, beta1 = 0.9, beta2 = 0.999, eps = 1e-8
 *   adagrad: accum += g^2; theta -= lr * g / sqrt(accum + 1e-8)
 */
class Optimizer {
public:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEpsilon = 1e-8;

  Optimizer(OptimizerKind kind, double learning_rate, std::size_t num_params);

  void step(std::span<double> theta, std::span<const double> grad);

  [[nodiscard]] OptimizerKind kind() const { return kind_; }
  [[nodiscard]] double learning_rate() const { return lr_; }
  [[nodiscard]] long step_count() const { return steps_; }
  [[nodiscard]] std::size_t num_params() const { return first_.size(); }
  /// Adam moments; Adagrad keeps its squared-gradient sum in the second.
  [[nodiscard]] std::span<const double> first_moment() const { return first_; }
  [[nodiscard]] std::span<const double> second_moment() const { return second_; }

private:
  OptimizerKind kind_;
  double lr_;
  long steps_ = 0;
  std::vector<double> first_;
  std::vector<double> second_;
};

} // namespace dypp::grad
