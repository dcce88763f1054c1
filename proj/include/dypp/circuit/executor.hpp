#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dypp/circuit/circuit.hpp"
#include "dypp/sim/noise.hpp"
#include "dypp/sim/observable.hpp"
#include "dypp/sim/random.hpp"
#include "dypp/sim/sampling.hpp"

namespace dypp::circuit {

struct ExecutionConfig {
  sim::ShotConfig shots;
  sim::NoiseSpec noise;
  /// Noise trajectories per execution; the shots are split across them.
  int trajectories = 8;

  void validate() const;
  [[nodiscard]] bool sampled() const {
    return shots.mode == sim::ShotMode::sampled;
  }
};

/// Circuit executions (measurement passes) and the shots they consumed.
struct ExecutionCounter {
  std::int64_t executions = 0;
  std::int64_t shots = 0;
};

/**
 * Runs circuits under an execution configuration and charges every
 * measurement pass to its counter. In exact mode expectations are analytic
 * (noise averaged over trajectories when enabled) and no shots are charged.
 */
class Executor {
public:
  Executor(ExecutionConfig config, std::uint64_t seed);

  [[nodiscard]] const ExecutionConfig &config() const { return config_; }
  [[nodiscard]] const ExecutionCounter &counter() const { return counter_; }

  double expectation(const ParameterizedCircuit &circuit,
                     std::span<const double> params,
                     std::span<const double> features,
                     const sim::Observable &obs,
                     std::optional<AngleShift> shift = std::nullopt);

  /// Per-qubit <Z_q>, read out from a single measurement pass.
  std::vector<double> z_expectations(const ParameterizedCircuit &circuit,
                                     std::span<const double> params,
                                     std::span<const double> features,
                                     std::optional<AngleShift> shift = std::nullopt);

  /// Sampled bitstring histogram of one execution (always charged).
  std::vector<int> measure_counts(const ParameterizedCircuit &circuit,
                                  std::span<const double> params,
                                  std::span<const double> features);

private:
  std::vector<sim::StateVector>
  prepare(const ParameterizedCircuit &circuit, std::span<const double> params,
          std::span<const double> features, std::optional<AngleShift> shift);
  void charge(std::int64_t passes);
  [[nodiscard]] std::vector<int> shots_per_trajectory(std::size_t count) const;

  ExecutionConfig config_;
  Rng rng_;
  ExecutionCounter counter_;
};

} // namespace dypp::circuit
