#include "dypp/grad/optimizer.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace dypp::grad {

namespace {
constexpr std::array<std::pair<OptimizerKind, std::string_view>, 3> kNames{{
    {OptimizerKind::sgd, "sgd"},
    {OptimizerKind::adam, "adam"},
    {OptimizerKind::adagrad, "adagrad"},
}};
} // namespace

std::string_view optimizer_name(OptimizerKind kind) {
  for (const auto &[k, name] : kNames) {
    if (k == kind) {
      return name;
    }
  }
  throw std::invalid_argument("unknown optimizer kind");
}

OptimizerKind parse_optimizer_kind(std::string_view name) {
  for (const auto &[k, n] : kNames) {
    if (n == name) {
      return k;
    }
  }
  throw std::invalid_argument("unknown optimizer: " + std::string(name));
}

Optimizer::Optimizer(OptimizerKind kind, double learning_rate,
                     std::size_t num_params)
    : kind_(kind), lr_(learning_rate), first_(num_params, 0.0),
      second_(num_params, 0.0) {
  if (!(learning_rate > 0.0)) {
    throw std::invalid_argument("learning rate must be positive");
  }
}

void Optimizer::step(std::span<double> theta, std::span<const double> grad) {
  if (theta.size() != first_.size() || grad.size() != first_.size()) {
    throw std::invalid_argument("optimizer expects " +
                                std::to_string(first_.size()) +
                                " parameters and gradients");
  }
  ++steps_;
  switch (kind_) {
  case OptimizerKind::sgd:
    for (std::size_t j = 0; j < theta.size(); ++j) {
      theta[j] -= lr_ * grad[j];
    }
    return;
  case OptimizerKind::adam: {
    const double t = static_cast<double>(steps_);
    const double c1 = 1.0 - std::pow(kBeta1, t);
    const double c2 = 1.0 - std::pow(kBeta2, t);
    for (std::size_t j = 0; j < theta.size(); ++j) {
      first_[j] = kBeta1 * first_[j] + (1.0 - kBeta1) * grad[j];
      second_[j] = kBeta2 * second_[j] + (1.0 - kBeta2) * grad[j] * grad[j];
      const double m_hat = first_[j] / c1;
      const double v_hat = second_[j] / c2;
      theta[j] -= lr_ * m_hat / (std::sqrt(v_hat) + kEpsilon);
    }
    return;
  }
  case OptimizerKind::adagrad:
    for (std::size_t j = 0; j < theta.size(); ++j) {
      second_[j] += grad[j] * grad[j];
      theta[j] -= lr_ * grad[j] / std::sqrt(second_[j] + kEpsilon);
    }
    return;
  }
}

} // namespace dypp::grad
