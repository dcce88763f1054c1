#include "dypp/harness/train.hpp"

#include <cmath>

#include "dypp/predict/predictor.hpp"

namespace dypp::harness {

RunResult train(Trainable &task, const RunConfig &cfg) {
  cfg.validate();
  const auto pcfg = cfg.resolved_predictor();
  const bool predicting =
      cfg.prediction_enabled && pcfg.method != predict::Method::vanilla;
  const auto mask = task.prediction_mask();
  const auto tol = task.convergence_tol();

  RunResult result;
  result.metric_lower_is_better = task.metric_lower_is_better();
  result.samples_per_iteration = task.samples_per_iteration();
  result.task = task.describe();

  std::vector<double> params = task.initial_params(derive_seed(cfg.seed, kInitStream));
  circuit::Executor executor(cfg.execution, derive_seed(cfg.seed, kExecutorStream));
  Rng rng(derive_seed(cfg.seed, kGradientStream));
  grad::Optimizer optimizer(cfg.optimizer, cfg.learning_rate, params.size());
  predict::WeightWindow window(pcfg.window_size(), params.size());

  result.initial_params = params;
  result.initial = task.snapshot(params);
  double previous_loss = result.initial.loss;

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    RunRecord record;
    record.epoch = epoch;
    if (predicting && epoch % pcfg.interval == 0 && window.full()) {
      const auto predicted = predict::predict_weights(window, epoch, pcfg);
      for (std::size_t j = 0; j < params.size(); ++j) {
        if (mask[j]) {
          params[j] = predicted[j];
        }
      }
      window.clear();
      record.was_prediction = true;
      ++result.predictions;
    } else {
      task.train_epoch(params, optimizer, cfg.gradient, executor, rng);
      window.push(params);
      ++result.optimizer_steps;
    }
    const auto snap = task.snapshot(params);
    record.loss = snap.loss;
    record.metric = snap.metric;
    record.cum_executions = executor.counter().executions;
    record.cum_shots = executor.counter().shots;
    result.records.push_back(record);

    if (tol && std::abs(snap.loss - previous_loss) < *tol) {
      result.early_stopped = true;
      break;
    }
    previous_loss = snap.loss;
  }

  result.final_params = params;
  result.extra = task.final_report(params, cfg);
  return result;
}

RunResult train(const RunConfig &cfg) {
  cfg.validate();
  auto task = make_trainable(cfg);
  return train(*task, cfg);
}

} // namespace dypp::harness
