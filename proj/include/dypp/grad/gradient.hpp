#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "dypp/grad/evaluator.hpp"
#include "dypp/sim/random.hpp"

namespace dypp::grad {

/// Dense outputs x params derivative matrix, row-major.
class Jacobian {
public:
  Jacobian(std::size_t outputs, std::size_t params)
      : outputs_(outputs), params_(params), values_(outputs * params, 0.0) {}

  [[nodiscard]] std::size_t outputs() const { return outputs_; }
  [[nodiscard]] std::size_t params() const { return params_; }
  double &operator()(std::size_t o, std::size_t p) {
    return values_[o * params_ + p];
  }
  double operator()(std::size_t o, std::size_t p) const {
    return values_[o * params_ + p];
  }
  [[nodiscard]] std::vector<double> row(std::size_t o) const {
    return {values_.begin() + static_cast<std::ptrdiff_t>(o * params_),
            values_.begin() + static_cast<std::ptrdiff_t>((o + 1) * params_)};
  }

private:
  std::size_t outputs_;
  std::size_t params_;
  std::vector<double> values_;
};

/// Step on the gate angle used by the finite-difference fallback slots.
inline constexpr double kFallbackAngleStep = 1e-4;

/**
 * Parameter-shift Jacobian. Every slot is differentiated with its own rule
 * and the results are summed into its parameter column, scaled by the
 * slot's angle scale. Two-term and fallback slots cost two evaluations,
 * four-term slots four.
 */
Jacobian param_shift_jacobian(Evaluator &eval, std::span<const double> theta);

/// SPSA estimate from two evaluations along a random +-1 direction.
Jacobian spsa_jacobian(Evaluator &eval, std::span<const double> theta,
                       double c, Rng &rng);

/// Central differences in each parameter; 2n evaluations.
Jacobian finite_diff_jacobian(Evaluator &eval, std::span<const double> theta,
                              double h);

std::vector<double> param_shift_gradient(Evaluator &eval,
                                         std::span<const double> theta);
std::vector<double> spsa_gradient(Evaluator &eval,
                                  std::span<const double> theta, double c,
                                  std::uint64_t seed);
std::vector<double> finite_diff_gradient(Evaluator &eval,
                                         std::span<const double> theta,
                                         double h);

enum class GradientKind { exact_shift, param_shift_sampled, spsa, finite_diff };

std::string_view gradient_kind_name(GradientKind kind);
GradientKind parse_gradient_kind(std::string_view name);

struct GradientMethod {
  GradientKind kind = GradientKind::exact_shift;
  double spsa_c = 0.1;
  double fd_h = 1e-5;

  void validate() const;
};

/// Dispatches on the method kind. Both shift kinds use the same rule; the
/// executor behind the evaluator decides whether expectations are sampled.
Jacobian estimate_jacobian(Evaluator &eval, std::span<const double> theta,
                           const GradientMethod &method, Rng &rng);

} // namespace dypp::grad
