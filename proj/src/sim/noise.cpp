#include "dypp/sim/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace dypp::sim {

void NoiseSpec::validate() const {
  if (!(depolarizing_prob >= 0.0 && depolarizing_prob <= 1.0)) {
    throw std::invalid_argument("depolarizing probability must be in [0, 1]");
  }
}

void apply_noisy_gate(StateVector &state, GateKind kind,
                      std::span<const int> targets, double theta,
                      const NoiseSpec &noise, Rng &rng) {
  state.apply(kind, targets, theta);
  if (!noise.active()) {
    return;
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> which(0, 2);
  static constexpr GateKind kErrors[3] = {GateKind::X, GateKind::Y,
                                          GateKind::Z};
  for (int q : targets) {
    if (unit(rng) < noise.depolarizing_prob) {
      const int target[1] = {q};
      state.apply(kErrors[which(rng)], target);
    }
  }
}

void apply_noisy_gate(StateVector &state, GateKind kind,
                      std::span<const int> targets, double theta,
                      const NoiseSpec &noise, std::uint64_t seed) {
  Rng rng(seed);
  apply_noisy_gate(state, kind, targets, theta, noise, rng);
}

} // namespace dypp::sim
