#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "dypp/harness/run_config.hpp"
#include "dypp/harness/trainable.hpp"

namespace dypp::harness {

struct RunRecord {
  int epoch = 0;
  double loss = 0.0;
  double metric = 0.0;
  bool was_prediction = false;
  std::int64_t cum_executions = 0;
  std::int64_t cum_shots = 0;
};

struct RunResult {
  std::vector<RunRecord> records;
  Snapshot initial;
  std::vector<double> initial_params;
  std::vector<double> final_params;
  int optimizer_steps = 0;
  int predictions = 0;
  bool early_stopped = false;
  bool metric_lower_is_better = false;
  std::int64_t samples_per_iteration = 1;
  nlohmann::json task;
  nlohmann::json extra;
};

/**
 * Epochs i = 1..E. When prediction is active and i % p == 0 with a full
 * window, the epoch's optimizer step is replaced by a weight prediction
 * that runs no circuits; the window is then cleared. Every other epoch
 * runs the optimizer and pushes its output to the window, so a window
 * only ever holds optimizer outputs made since the last prediction.
 */
RunResult train(Trainable &task, const RunConfig &cfg);
RunResult train(const RunConfig &cfg);

} // namespace dypp::harness
