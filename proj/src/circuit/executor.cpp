#include "dypp/circuit/executor.hpp"

#include <algorithm>
#include <stdexcept>

namespace dypp::circuit {

namespace {

std::vector<double> z_from_distribution(std::span<const double> weights,
                                        int num_qubits) {
  std::vector<double> z(static_cast<std::size_t>(num_qubits), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    total += weights[i];
    for (int q = 0; q < num_qubits; ++q) {
      const bool one = ((i >> (num_qubits - 1 - q)) & 1U) != 0;
      z[static_cast<std::size_t>(q)] += one ? -weights[i] : weights[i];
    }
  }
  for (auto &v : z) {
    v /= total;
  }
  return z;
}

} // namespace

void ExecutionConfig::validate() const {
  shots.validate();
  noise.validate();
  if (trajectories < 1) {
    throw std::invalid_argument("trajectories must be >= 1");
  }
}

Executor::Executor(ExecutionConfig config, std::uint64_t seed)
    : config_(config), rng_(seed) {
  config_.validate();
}

void Executor::charge(std::int64_t passes) {
  counter_.executions += passes;
  if (config_.sampled()) {
    counter_.shots += passes * config_.shots.shots;
  }
}

std::vector<int> Executor::shots_per_trajectory(std::size_t count) const {
  const int shots = config_.shots.shots;
  std::vector<int> split(count, shots / static_cast<int>(count));
  for (std::size_t i = 0; i < static_cast<std::size_t>(shots) % count; ++i) {
    ++split[i];
  }
  return split;
}

// Trajectory states are shared by the measurement passes of one call.
std::vector<sim::StateVector>
Executor::prepare(const ParameterizedCircuit &circuit,
                  std::span<const double> params,
                  std::span<const double> features,
                  std::optional<AngleShift> shift) {
  std::vector<sim::StateVector> states;
  if (!config_.noise.active()) {
    states.push_back(circuit.simulate(params, features, shift));
    return states;
  }
  int count = config_.trajectories;
  if (config_.sampled()) {
    count = std::min(count, config_.shots.shots);
  }
  states.reserve(static_cast<std::size_t>(count));
  for (int t = 0; t < count; ++t) {
    states.push_back(
        circuit.simulate_noisy(params, features, config_.noise, rng_, shift));
  }
  return states;
}

double Executor::expectation(const ParameterizedCircuit &circuit,
                             std::span<const double> params,
                             std::span<const double> features,
                             const sim::Observable &obs,
                             std::optional<AngleShift> shift) {
  if (obs.num_qubits() != circuit.num_qubits()) {
    throw std::invalid_argument("observable/circuit qubit count mismatch");
  }
  const auto states = prepare(circuit, params, features, shift);
  const sim::MeasurementPlan plan(obs);
  charge(static_cast<std::int64_t>(plan.num_passes()));

  if (!config_.sampled()) {
    double total = 0.0;
    for (const auto &s : states) {
      total += sim::expectation(s, obs);
    }
    return total / static_cast<double>(states.size());
  }

  const auto split = shots_per_trajectory(states.size());
  double total = 0.0;
  for (const auto &group : plan.groups) {
    const auto &lead = obs.terms()[group.front()];
    std::vector<int> counts(states.front().size(), 0);
    for (std::size_t t = 0; t < states.size(); ++t) {
      const auto part =
          lead.is_diagonal()
              ? sim::sample_counts(states[t], split[t], rng_)
              : sim::sample_counts(
                    sim::rotate_to_measurement_basis(states[t], lead), split[t],
                    rng_);
      for (std::size_t i = 0; i < counts.size(); ++i) {
        counts[i] += part[i];
      }
    }
    total += sim::estimate_from_counts(counts, circuit.num_qubits(), obs, group);
  }
  return total;
}

std::vector<double>
Executor::z_expectations(const ParameterizedCircuit &circuit,
                         std::span<const double> params,
                         std::span<const double> features,
                         std::optional<AngleShift> shift) {
  const auto states = prepare(circuit, params, features, shift);
  charge(1);
  std::vector<double> weights(states.front().size(), 0.0);
  if (!config_.sampled()) {
    for (const auto &s : states) {
      const auto p = s.probabilities();
      for (std::size_t i = 0; i < p.size(); ++i) {
        weights[i] += p[i];
      }
    }
  } else {
    const auto split = shots_per_trajectory(states.size());
    for (std::size_t t = 0; t < states.size(); ++t) {
      const auto part = sim::sample_counts(states[t], split[t], rng_);
      for (std::size_t i = 0; i < part.size(); ++i) {
        weights[i] += part[i];
      }
    }
  }
  return z_from_distribution(weights, circuit.num_qubits());
}

std::vector<int> Executor::measure_counts(const ParameterizedCircuit &circuit,
                                          std::span<const double> params,
                                          std::span<const double> features) {
  const auto states = prepare(circuit, params, features, std::nullopt);
  counter_.executions += 1;
  counter_.shots += config_.shots.shots;
  const auto split = shots_per_trajectory(states.size());
  std::vector<int> counts(states.front().size(), 0);
  for (std::size_t t = 0; t < states.size(); ++t) {
    const auto part = sim::sample_counts(states[t], split[t], rng_);
    for (std::size_t i = 0; i < part.size(); ++i) {
      counts[i] += part[i];
    }
  }
  return counts;
}

} // namespace dypp::circuit
