#pragma once

#include <cstdint>
#include <span>

#include "dypp/sim/random.hpp"
#include "dypp/sim/state_vector.hpp"

namespace dypp::sim {

/**
 * Stochastic Pauli-error channel applied after each gate. One call samples
 * one trajectory; averaging expectations over trajectories reproduces the
 * depolarizing channel's mean behaviour.
 */
struct NoiseSpec {
  double depolarizing_prob = 0.0;
  bool enabled = false;

  void validate() const;
  [[nodiscard]] bool active() const {
    return enabled && depolarizing_prob > 0.0;
  }
};

/// Applies the ideal gate, then an error draw on every target qubit.
void apply_noisy_gate(StateVector &state, GateKind kind,
                      std::span<const int> targets, double theta,
                      const NoiseSpec &noise, Rng &rng);

/// Seeded single-trajectory convenience form.
void apply_noisy_gate(StateVector &state, GateKind kind,
                      std::span<const int> targets, double theta,
                      const NoiseSpec &noise, std::uint64_t seed);

} // namespace dypp::sim
