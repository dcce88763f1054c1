#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dypp/harness/metrics.hpp"
#include "dypp/harness/run_config.hpp"
#include "dypp/harness/train.hpp"

namespace dypp::harness {

struct SeededRun {
  predict::Method method = predict::Method::vanilla;
  std::uint64_t seed = 0;
  RunConfig config;
  std::optional<RunResult> result;
  std::string error;
};

struct MethodSummary {
  predict::Method method = predict::Method::vanilla;
  std::vector<Speedup> speedups;        // per seed, loss column
  std::vector<Speedup> metric_speedups; // per seed, metric column
  double median_speedup = 0.0;
  double median_metric_speedup = 0.0;
  double mean_convergence_rate = 0.0;
  double median_final_loss = 0.0;
  std::int64_t detailed_shots = 0;
  std::int64_t lower_bound_shots = 0;
  double shot_savings = 0.0; // baseline lower bound / this lower bound
};

/// The first method is the baseline every other method is measured against.
struct ComparisonSummary {
  RunConfig base;
  std::vector<predict::Method> methods;
  std::vector<std::uint64_t> seeds;
  std::vector<SeededRun> runs;
  std::vector<MethodSummary> per_method;

  [[nodiscard]] const MethodSummary &summary(predict::Method method) const;
  [[nodiscard]] const SeededRun *run(predict::Method method, std::uint64_t seed) const;
};

/// Epoch range of the convergence-rate fit for a task and run length.
std::pair<int, int> convergence_window(TaskKind task, int last_epoch);

/**
 * Runs every (method, seed) pair from `base`. Methods must be distinct.
 * A failed run is kept with its error and left out of the aggregates.
 */
ComparisonSummary compare(const RunConfig &base,
                          std::span<const predict::Method> methods,
                          std::span<const std::uint64_t> seeds,
                          const std::function<void(const SeededRun &)> &on_run = {});

nlohmann::json to_json(const ComparisonSummary &summary);

} // namespace dypp::harness
