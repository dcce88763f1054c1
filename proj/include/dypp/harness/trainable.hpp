#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "dypp/circuit/executor.hpp"
#include "dypp/grad/gradient.hpp"
#include "dypp/grad/optimizer.hpp"
#include "dypp/harness/run_config.hpp"
#include "dypp/sim/random.hpp"

namespace dypp::harness {

/// Stream seeds derived from the run seed.
inline constexpr std::uint64_t kInitStream = 1;
inline constexpr std::uint64_t kExecutorStream = 2;
inline constexpr std::uint64_t kGradientStream = 3;
inline constexpr std::uint64_t kReportStream = 4;

/// Noise-free, uncharged snapshot of a parameter vector.
struct Snapshot {
  double loss = 0.0;
  double metric = 0.0;
};

/**
 * A workload as seen by the training loop. One call to train_epoch is one
 * optimizer epoch: a single step for VQE and QAOA, a pass over the shuffled
 * training split for the QNN.
 */
class Trainable {
public:
  virtual ~Trainable() = default;

  [[nodiscard]] virtual std::size_t num_params() const = 0;
  [[nodiscard]] virtual std::vector<double> initial_params(std::uint64_t seed) const = 0;
  virtual void train_epoch(std::vector<double> &params, grad::Optimizer &optimizer,
                           const grad::GradientMethod &method,
                           circuit::Executor &executor, Rng &rng) = 0;
  [[nodiscard]] virtual Snapshot snapshot(std::span<const double> params) const = 0;

  [[nodiscard]] virtual bool metric_lower_is_better() const = 0;
  /// Circuit samples per iteration in the shot lower bound.
  [[nodiscard]] virtual std::int64_t samples_per_iteration() const { return 1; }
  /// Early-stopping tolerance on |delta loss|, if the task has one.
  [[nodiscard]] virtual std::optional<double> convergence_tol() const {
    return std::nullopt;
  }
  /// Parameters a prediction may move; the rest keep their current value.
  [[nodiscard]] virtual std::vector<bool> prediction_mask() const {
    return std::vector<bool>(num_params(), true);
  }
  /// Task facts for the run summary.
  [[nodiscard]] virtual nlohmann::json describe() const = 0;
  /// Extra end-of-run values computed outside the charged executor.
  [[nodiscard]] virtual nlohmann::json final_report(std::span<const double> params,
                                                    const RunConfig &cfg) const;
};

std::unique_ptr<Trainable> make_trainable(const RunConfig &cfg);

} // namespace dypp::harness
