#pragma once

#include <cstdint>
#include <vector>

#include "dypp/sim/observable.hpp"
#include "dypp/sim/random.hpp"
#include "dypp/sim/state_vector.hpp"

namespace dypp::sim {

enum class ShotMode { exact, sampled };

struct ShotConfig {
  ShotMode mode = ShotMode::exact;
  int shots = 1000;

  void validate() const;
};

/// Histogram of `shots` computational-basis measurements.
std::vector<int> sample_counts(const StateVector &state, int shots, Rng &rng);

/**
 * Measurement groups of an observable. All diagonal (I/Z-only) terms share
 * group 0; every other term is measured in its own rotated basis.
 */
struct MeasurementPlan {
  std::vector<std::vector<std::size_t>> groups; // term indices

  explicit MeasurementPlan(const Observable &obs);
  [[nodiscard]] std::size_t num_passes() const { return groups.size(); }
};

/// Rotates a copy of `state` so that measuring Z reads out `term`'s basis.
StateVector rotate_to_measurement_basis(StateVector state,
                                        const PauliTerm &term);

/// Estimate of one group's terms from measured counts in its rotated basis.
double estimate_from_counts(const std::vector<int> &counts, int num_qubits,
                            const Observable &obs,
                            const std::vector<std::size_t> &group);

/**
 * Shot-sampled estimate of <obs>. Each measurement group is one pass of
 * `cfg.shots` shots. Deterministic for a fixed seed.
 */
double sample_expectation(const StateVector &state, const Observable &obs,
                          const ShotConfig &cfg, std::uint64_t seed);

} // namespace dypp::sim
