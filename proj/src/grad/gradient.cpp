#include "dypp/grad/gradient.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dypp::grad {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
// Four-term rule for generator eigenvalues {-1/2, 0, 1/2}.
const double kFourTermNear =
    (std::numbers::sqrt2 + 1.0) / (4.0 * std::numbers::sqrt2);
const double kFourTermFar =
    (std::numbers::sqrt2 - 1.0) / (4.0 * std::numbers::sqrt2);

void check_dims(const Evaluator &eval, std::span<const double> theta) {
  if (theta.size() != eval.num_params()) {
    throw std::invalid_argument("expected " + std::to_string(eval.num_params()) +
                                " parameters, got " +
                                std::to_string(theta.size()));
  }
}

// Accumulates weight * (f(+s) - f(-s)) for one slot into column `param`.
void shifted_difference(Evaluator &eval, std::span<const double> theta,
                        std::size_t slot, double shift, double weight,
                        std::size_t param, Jacobian &jac) {
  const auto plus = eval.evaluate(theta, SlotShift{slot, shift});
  const auto minus = eval.evaluate(theta, SlotShift{slot, -shift});
  for (std::size_t o = 0; o < jac.outputs(); ++o) {
    jac(o, param) += weight * (plus[o] - minus[o]);
  }
}

} // namespace

Jacobian param_shift_jacobian(Evaluator &eval, std::span<const double> theta) {
  check_dims(eval, theta);
  Jacobian jac(eval.num_outputs(), eval.num_params());
  const auto slots = eval.shift_slots();
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const auto &slot = slots[s];
    switch (slot.rule) {
    case ShiftRule::two_term:
      shifted_difference(eval, theta, s, kHalfPi, slot.scale / 2.0, slot.param,
                         jac);
      break;
    case ShiftRule::four_term:
      shifted_difference(eval, theta, s, kHalfPi, slot.scale * kFourTermNear,
                         slot.param, jac);
      shifted_difference(eval, theta, s, 3.0 * kHalfPi,
                         -slot.scale * kFourTermFar, slot.param, jac);
      break;
    case ShiftRule::finite_difference:
      shifted_difference(eval, theta, s, kFallbackAngleStep,
                         slot.scale / (2.0 * kFallbackAngleStep), slot.param,
                         jac);
      break;
    }
  }
  return jac;
}

Jacobian spsa_jacobian(Evaluator &eval, std::span<const double> theta,
                       double c, Rng &rng) {
  check_dims(eval, theta);
  if (!(c > 0.0)) {
    throw std::invalid_argument("SPSA perturbation scale must be positive");
  }
  const std::size_t n = theta.size();
  std::bernoulli_distribution coin(0.5);
  std::vector<double> delta(n);
  for (auto &d : delta) {
    d = coin(rng) ? 1.0 : -1.0;
  }
  std::vector<double> plus_theta(theta.begin(), theta.end());
  std::vector<double> minus_theta(theta.begin(), theta.end());
  for (std::size_t j = 0; j < n; ++j) {
    plus_theta[j] += c * delta[j];
    minus_theta[j] -= c * delta[j];
  }
  const auto plus = eval.evaluate(plus_theta);
  const auto minus = eval.evaluate(minus_theta);
  Jacobian jac(eval.num_outputs(), n);
  for (std::size_t o = 0; o < jac.outputs(); ++o) {
    const double diff = plus[o] - minus[o];
    for (std::size_t j = 0; j < n; ++j) {
      jac(o, j) = diff / (2.0 * c * delta[j]);
    }
  }
  return jac;
}

Jacobian finite_diff_jacobian(Evaluator &eval, std::span<const double> theta,
                              double h) {
  check_dims(eval, theta);
  if (!(h > 0.0)) {
    throw std::invalid_argument("finite-difference step must be positive");
  }
  Jacobian jac(eval.num_outputs(), eval.num_params());
  std::vector<double> probe(theta.begin(), theta.end());
  for (std::size_t j = 0; j < probe.size(); ++j) {
    probe[j] = theta[j] + h;
    const auto plus = eval.evaluate(probe);
    probe[j] = theta[j] - h;
    const auto minus = eval.evaluate(probe);
    probe[j] = theta[j];
    for (std::size_t o = 0; o < jac.outputs(); ++o) {
      jac(o, j) = (plus[o] - minus[o]) / (2.0 * h);
    }
  }
  return jac;
}

std::vector<double> param_shift_gradient(Evaluator &eval,
                                         std::span<const double> theta) {
  return param_shift_jacobian(eval, theta).row(0);
}

std::vector<double> spsa_gradient(Evaluator &eval,
                                  std::span<const double> theta, double c,
                                  std::uint64_t seed) {
  Rng rng(seed);
  return spsa_jacobian(eval, theta, c, rng).row(0);
}

std::vector<double> finite_diff_gradient(Evaluator &eval,
                                         std::span<const double> theta,
                                         double h) {
  return finite_diff_jacobian(eval, theta, h).row(0);
}

namespace {
constexpr std::array<std::pair<GradientKind, std::string_view>, 4> kKindNames{{
    {GradientKind::exact_shift, "exact"},
    {GradientKind::param_shift_sampled, "ps"},
    {GradientKind::spsa, "spsa"},
    {GradientKind::finite_diff, "fd"},
}};
} // namespace

std::string_view gradient_kind_name(GradientKind kind) {
  for (const auto &[k, name] : kKindNames) {
    if (k == kind) {
      return name;
    }
  }
  throw std::invalid_argument("unknown gradient kind");
}

GradientKind parse_gradient_kind(std::string_view name) {
  for (const auto &[k, n] : kKindNames) {
    if (n == name) {
      return k;
    }
  }
  throw std::invalid_argument("unknown gradient method: " + std::string(name));
}

void GradientMethod::validate() const {
  if (!(spsa_c > 0.0)) {
    throw std::invalid_argument("spsa_c must be positive");
  }
  if (!(fd_h > 0.0)) {
    throw std::invalid_argument("fd_h must be positive");
  }
}

Jacobian estimate_jacobian(Evaluator &eval, std::span<const double> theta,
                           const GradientMethod &method, Rng &rng) {
  switch (method.kind) {
  case GradientKind::exact_shift:
  case GradientKind::param_shift_sampled:
    return param_shift_jacobian(eval, theta);
  case GradientKind::spsa:
    return spsa_jacobian(eval, theta, method.spsa_c, rng);
  case GradientKind::finite_diff:
    return finite_diff_jacobian(eval, theta, method.fd_h);
  }
  throw std::invalid_argument("unknown gradient kind");
}

} // namespace dypp::grad
