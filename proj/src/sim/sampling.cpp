#include "dypp/sim/sampling.hpp"

#include <bit>
#include <numbers>
#include <stdexcept>

namespace dypp::sim {

void ShotConfig::validate() const {
  if (mode == ShotMode::sampled && shots < 1) {
    throw std::invalid_argument("sampled mode needs shots >= 1");
  }
}

std::vector<int> sample_counts(const StateVector &state, int shots, Rng &rng) {
  // Multinomial draw as a chain of conditional binomials.
  const auto probs = state.probabilities();
  std::vector<int> counts(probs.size(), 0);
  int remaining = shots;
  double mass = 1.0;
  for (std::size_t i = 0; i + 1 < probs.size() && remaining > 0; ++i) {
    if (probs[i] <= 0.0) {
      mass -= probs[i];
      continue;
    }
    const double p = mass > 0.0 ? std::min(1.0, probs[i] / mass) : 1.0;
    std::binomial_distribution<int> draw(remaining, p);
    counts[i] = draw(rng);
    remaining -= counts[i];
    mass -= probs[i];
  }
  counts.back() += remaining;
  return counts;
}

MeasurementPlan::MeasurementPlan(const Observable &obs) {
  std::vector<std::size_t> diagonal;
  for (std::size_t t = 0; t < obs.terms().size(); ++t) {
    if (obs.terms()[t].is_diagonal()) {
      diagonal.push_back(t);
    }
  }
  if (!diagonal.empty()) {
    groups.push_back(std::move(diagonal));
  }
  for (std::size_t t = 0; t < obs.terms().size(); ++t) {
    if (!obs.terms()[t].is_diagonal()) {
      groups.push_back({t});
    }
  }
}

StateVector rotate_to_measurement_basis(StateVector state,
                                        const PauliTerm &term) {
  for (int q = 0; q < state.num_qubits(); ++q) {
    const int target[1] = {q};
    if (term.letters[q] == Pauli::X) {
      state.apply(GateKind::H, target);
    } else if (term.letters[q] == Pauli::Y) {
      // S^dagger up to global phase, then H.
      state.apply(GateKind::RZ, target, -std::numbers::pi / 2.0);
      state.apply(GateKind::H, target);
    }
  }
  return state;
}

double estimate_from_counts(const std::vector<int> &counts, int num_qubits,
                            const Observable &obs,
                            const std::vector<std::size_t> &group) {
  int shots = 0;
  for (int c : counts) {
    shots += c;
  }
  if (shots == 0) {
    throw std::invalid_argument("no shots to estimate from");
  }
  double total = 0.0;
  for (std::size_t t : group) {
    const auto &term = obs.terms()[t];
    std::size_t support = 0;
    for (int q = 0; q < num_qubits; ++q) {
      if (term.letters[q] != Pauli::I) {
        support |= std::size_t{1} << (num_qubits - 1 - q);
      }
    }
    long long parity_sum = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      parity_sum += (std::popcount(i & support) % 2 == 0) ? counts[i] : -counts[i];
    }
    total += term.coefficient * static_cast<double>(parity_sum) / shots;
  }
  return total;
}

double sample_expectation(const StateVector &state, const Observable &obs,
                          const ShotConfig &cfg, std::uint64_t seed) {
  if (cfg.mode != ShotMode::sampled) {
    throw std::invalid_argument("sample_expectation requires sampled mode");
  }
  cfg.validate();
  if (obs.num_qubits() != state.num_qubits()) {
    throw std::invalid_argument("observable/state qubit count mismatch");
  }
  Rng rng(seed);
  const MeasurementPlan plan(obs);
  double total = 0.0;
  for (const auto &group : plan.groups) {
    const auto &lead = obs.terms()[group.front()];
    const auto counts =
        lead.is_diagonal()
            ? sample_counts(state, cfg.shots, rng)
            : sample_counts(rotate_to_measurement_basis(state, lead),
                            cfg.shots, rng);
    total += estimate_from_counts(counts, state.num_qubits(), obs, group);
  }
  return total;
}

} // namespace dypp::sim
