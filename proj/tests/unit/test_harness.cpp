#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>
#include <vector>

#include "dypp/harness/compare.hpp"
#include "dypp/harness/metrics.hpp"
#include "dypp/harness/report.hpp"
#include "dypp/harness/run_config.hpp"
#include "dypp/harness/train.hpp"

using namespace dypp;
using namespace dypp::harness;
using Catch::Approx;
using predict::Method;

namespace {

RunConfig qaoa_config(Method method, int epochs = 20) {
  auto cfg = RunConfig::defaults(TaskKind::qaoa);
  cfg.predictor.method = method;
  cfg.epochs = epochs;
  cfg.seed = 3;
  return cfg;
}

RunConfig vqe_config(Method method) {
  auto cfg = RunConfig::defaults(TaskKind::vqe);
  cfg.predictor.method = method;
  cfg.vqe.hamiltonian_file = DYPP_DATA_DIR "/hamiltonians/h2.txt";
  return cfg;
}

RunConfig small_qnn_config(Method method) {
  auto cfg = RunConfig::defaults(TaskKind::qnn);
  cfg.predictor.method = method;
  cfg.qnn.classes = 3;
  cfg.qnn.samples = 60;
  cfg.qnn.qubits = 2;
  cfg.qnn.batch_size = 16;
  cfg.learning_rate = 0.05;
  cfg.epochs = 12;
  return cfg;
}

std::vector<RunRecord> records_from(const std::vector<double> &losses) {
  std::vector<RunRecord> out;
  for (std::size_t i = 0; i < losses.size(); ++i) {
    RunRecord r;
    r.epoch = static_cast<int>(i + 1);
    r.loss = losses[i];
    r.metric = -losses[i];
    out.push_back(r);
  }
  return out;
}

bool same_stream(const std::vector<RunRecord> &a, const std::vector<RunRecord> &b) {
  if (a.size() != b.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].epoch != b[i].epoch || a[i].loss != b[i].loss || a[i].metric != b[i].metric ||
        a[i].was_prediction != b[i].was_prediction ||
        a[i].cum_executions != b[i].cum_executions || a[i].cum_shots != b[i].cum_shots) {
      return false;
    }
  }
  return true;
}

/// Weights follow a fixed quadratic in the epoch count, one per parameter.
class QuadraticTrajectory final : public Trainable {
public:
  std::vector<std::array<double, 3>> coeffs{{0.02, -0.3, 1.0}, {-0.01, 0.2, -0.5}, {0.0, 0.05, 0.0}};
  int steps = 0;

  [[nodiscard]] double at(std::size_t j, double t) const {
    return (coeffs[j][0] * t + coeffs[j][1]) * t + coeffs[j][2];
  }
  [[nodiscard]] std::size_t num_params() const override { return coeffs.size(); }
  [[nodiscard]] std::vector<double> initial_params(std::uint64_t) const override {
    std::vector<double> out(num_params());
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] = at(j, 0.0);
    }
    return out;
  }
  void train_epoch(std::vector<double> &params, grad::Optimizer &, const grad::GradientMethod &,
                   circuit::Executor &, Rng &) override {
    ++steps;
    for (std::size_t j = 0; j < params.size(); ++j) {
      params[j] = at(j, steps);
    }
  }
  [[nodiscard]] Snapshot snapshot(std::span<const double> params) const override {
    return {params[0], params[1]};
  }
  [[nodiscard]] bool metric_lower_is_better() const override { return true; }
  [[nodiscard]] nlohmann::json describe() const override { return nlohmann::json::object(); }
};

} // namespace

TEST_CASE("vanilla runs make no predictions") {
  const auto result = train(qaoa_config(Method::vanilla, 10));
  CHECK(result.records.size() == 10);
  CHECK(result.predictions == 0);
  CHECK(result.optimizer_steps == 10);
}

TEST_CASE("prediction schedule") {
  auto cfg = qaoa_config(Method::nap, 20);
  cfg.predictor.interval = 5;
  const auto result = train(cfg);
  std::vector<int> predicted;
  for (const auto &r : result.records) {
    if (r.was_prediction) {
      predicted.push_back(r.epoch);
    }
  }
  CHECK(predicted == std::vector<int>{5, 10, 15, 20});
  CHECK(result.optimizer_steps == 16);

  cfg.epochs = 4;
  CHECK(train(cfg).predictions == 0);
}

TEST_CASE("predictions charge nothing and counters never decrease") {
  auto cfg = qaoa_config(Method::adap, 24);
  cfg.execution.shots.mode = sim::ShotMode::sampled;
  const auto result = train(cfg);
  for (std::size_t i = 1; i < result.records.size(); ++i) {
    const auto &prev = result.records[i - 1];
    const auto &cur = result.records[i];
    CHECK(cur.cum_executions >= prev.cum_executions);
    CHECK(cur.cum_shots >= prev.cum_shots);
    if (cur.was_prediction) {
      CHECK(cur.cum_executions == prev.cum_executions);
      CHECK(cur.cum_shots == prev.cum_shots);
    } else {
      CHECK(cur.cum_shots > prev.cum_shots);
    }
  }
}

TEST_CASE("adap prediction lands on an exactly quadratic trajectory") {
  for (int p = 4; p <= 7; ++p) {
    QuadraticTrajectory task;
    auto cfg = qaoa_config(Method::adap, p);
    cfg.predictor.interval = p;
    const auto result = train(task, cfg);
    REQUIRE(result.records.back().was_prediction);

    predict::WeightWindow window(static_cast<std::size_t>(p - 1), task.num_params());
    for (int t = 1; t < p; ++t) {
      std::vector<double> w(task.num_params());
      for (std::size_t j = 0; j < w.size(); ++j) {
        w[j] = task.at(j, t);
      }
      window.push(w);
    }
    const auto pcfg = cfg.resolved_predictor();
    for (std::size_t j = 0; j < task.num_params(); ++j) {
      const double d = predict::adap_distance(predict::fit_quadratic(window.column(j)), pcfg);
      CHECK(std::abs(result.final_params[j] - task.at(j, d)) <= 1e-6);
    }
  }
}

TEST_CASE("the predicted vector never enters a window") {
  QuadraticTrajectory task;
  auto cfg = qaoa_config(Method::nap, 8);
  cfg.predictor.interval = 4;
  const auto result = train(task, cfg);
  CHECK(result.predictions == 2);
  CHECK(result.optimizer_steps == 6);
  // The second window is steps 4..6, fitted at x = 1..3 and extrapolated.
  predict::WeightWindow window(3, task.num_params());
  for (int t = 4; t <= 6; ++t) {
    std::vector<double> w(task.num_params());
    for (std::size_t j = 0; j < w.size(); ++j) {
      w[j] = task.at(j, t);
    }
    window.push(w);
  }
  const auto expected = predict::predict_weights(window, 8, cfg.resolved_predictor());
  for (std::size_t j = 0; j < expected.size(); ++j) {
    CHECK(result.final_params[j] == Approx(expected[j]).margin(1e-12));
  }
}

TEST_CASE("disabled prediction reproduces vanilla bit for bit") {
  std::vector<RunConfig> bases{qaoa_config(Method::vanilla, 16), vqe_config(Method::vanilla),
                               small_qnn_config(Method::vanilla)};
  auto noisy = small_qnn_config(Method::vanilla);
  noisy.execution.shots.mode = sim::ShotMode::sampled;
  noisy.execution.noise = {0.01, true};
  noisy.gradient.kind = grad::GradientKind::spsa;
  bases.push_back(noisy);
  for (const auto &base : bases) {
    const auto vanilla = train(base);
    for (auto method : {Method::nap, Method::adap}) {
      auto cfg = base;
      cfg.predictor.method = method;
      cfg.prediction_enabled = false;
      CHECK(same_stream(train(cfg).records, vanilla.records));
    }
  }
}

TEST_CASE("runs are reproducible") {
  auto cfg = small_qnn_config(Method::adap);
  cfg.execution.shots.mode = sim::ShotMode::sampled;
  cfg.gradient.kind = grad::GradientKind::spsa;
  CHECK(same_stream(train(cfg).records, train(cfg).records));
  const auto other_seed = [&] {
    auto c = cfg;
    c.seed = 1;
    return train(c).records;
  }();
  CHECK_FALSE(same_stream(train(cfg).records, other_seed));
}

TEST_CASE("vqe stops early on convergence") {
  const auto result = train(vqe_config(Method::vanilla));
  REQUIRE(result.early_stopped);
  const auto &r = result.records;
  REQUIRE(r.size() >= 2);
  CHECK(std::abs(r.back().loss - r[r.size() - 2].loss) < 1e-6);
  CHECK(r.back().loss == Approx(-1.13618945).margin(1e-3));
  CHECK(result.initial.loss == Approx(-1.1173490).margin(1e-6));
}

TEST_CASE("quantum-only prediction leaves the head alone") {
  auto cfg = small_qnn_config(Method::adap);
  cfg.qnn.predict_head = false;
  cfg.epochs = 5;
  auto task = make_trainable(cfg);
  const auto before = [&] {
    auto c = cfg;
    c.epochs = 4;
    return train(*make_trainable(c), c).final_params;
  }();
  const auto after = train(*task, cfg).final_params;
  const auto mask = task->prediction_mask();
  bool quantum_moved = false;
  for (std::size_t j = 0; j < mask.size(); ++j) {
    if (!mask[j]) {
      CHECK(after[j] == before[j]);
    } else {
      quantum_moved = quantum_moved || after[j] != before[j];
    }
  }
  CHECK(quantum_moved);
}

TEST_CASE("speedup") {
  std::vector<double> vanilla(200);
  for (std::size_t i = 0; i < vanilla.size(); ++i) {
    vanilla[i] = 200.0 - static_cast<double>(i + 1);
  }
  std::vector<double> fast(200);
  for (std::size_t i = 0; i < fast.size(); ++i) {
    fast[i] = 200.0 - 2.0 * static_cast<double>(i + 1);
  }
  const auto v = records_from(vanilla);
  const auto f = records_from(fast);
  const auto s = speedup(v, f, true);
  CHECK(s.vanilla_epoch == 200);
  CHECK(s.dypp_epoch == 100);
  CHECK(s.value == 2.0);
  CHECK(speedup(v, f, false, Column::metric).value == 2.0);
  CHECK(speedup(v, v, true).value == 1.0);

  const auto slow = records_from(std::vector<double>(50, 500.0));
  const auto never = speedup(v, slow, true);
  CHECK_FALSE(never.surpassed);
  CHECK(never.value == 0.0);
  CHECK_THROWS(speedup(std::vector<RunRecord>{}, v, true));
}

TEST_CASE("convergence rate") {
  std::vector<double> line;
  for (int i = 1; i <= 50; ++i) {
    line.push_back(1.0 - 0.002 * i);
  }
  CHECK(convergence_rate(records_from(line), 1, 50) == Approx(0.002).margin(1e-12));
  CHECK(convergence_rate(records_from(std::vector<double>(30, 0.7)), 1, 30) == 0.0);
  CHECK_THROWS(convergence_rate(records_from(line), 60, 70));
  CHECK_THROWS(convergence_rate(records_from(line), 5, 5));

  Rng rng(1);
  std::bernoulli_distribution coin(0.5);
  const double delta = 0.05;
  const int n = 400;
  std::vector<double> noisy;
  for (int i = 1; i <= n; ++i) {
    noisy.push_back(3.0 - 0.01 * i + (coin(rng) ? delta : -delta));
  }
  CHECK(std::abs(convergence_rate(records_from(noisy), 1, n) - 0.01) <= 3 * delta / std::sqrt(n));
}

TEST_CASE("shot accounting") {
  auto cfg = vqe_config(Method::vanilla);
  cfg.vqe.convergence_tol = 1e-300;
  cfg.epochs = 50;
  const auto result = train(cfg);
  REQUIRE(result.records.size() == 50);
  const auto totals = shot_accounting(result.records, result.samples_per_iteration, 1000);
  CHECK(totals.lower_bound == 50000);
  CHECK(totals.detailed == 0);

  auto records = records_from(std::vector<double>(8, 1.0));
  records[3].was_prediction = true;
  records[7].was_prediction = true;
  CHECK(shot_accounting(records, 700, 1000).lower_bound == 6 * 700 * 1000);
}

TEST_CASE("median and mean") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK_THROWS(median({}));
  CHECK(mean(std::vector<double>{1.0, 2.0, 6.0}) == 3.0);
}

TEST_CASE("record csv round trip") {
  const auto result = train(qaoa_config(Method::adap, 12));
  std::stringstream io;
  write_records_csv(io, result.records);
  CHECK(io.str().rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(same_stream(read_records_csv(io), result.records));

  std::istringstream bad("epoch,loss\n1,2\n");
  CHECK_THROWS(read_records_csv(bad));
  std::istringstream short_row(std::string(kCsvHeader) + "\n1,2,3\n");
  CHECK_THROWS(read_records_csv(short_row));
}

TEST_CASE("per-task defaults") {
  const auto qnn = RunConfig::defaults(TaskKind::qnn);
  CHECK(qnn.predictor.interval == 5);
  CHECK(qnn.predictor.nap_d0 == 3.0);
  CHECK(qnn.predictor.k == 1e-4);
  CHECK(qnn.optimizer == grad::OptimizerKind::adam);
  CHECK(qnn.learning_rate == 0.002);
  CHECK(qnn.qnn.batch_size == 32);
  const auto vqe = RunConfig::defaults(TaskKind::vqe);
  CHECK(vqe.predictor.interval == 4);
  CHECK(vqe.predictor.nap_d0 == 5.0);
  CHECK(vqe.optimizer == grad::OptimizerKind::sgd);
  CHECK(vqe.learning_rate == 0.1);
  CHECK(vqe.vqe.convergence_tol == 1e-6);
  const auto qaoa = RunConfig::defaults(TaskKind::qaoa);
  CHECK(qaoa.optimizer == grad::OptimizerKind::adagrad);
  CHECK(qaoa.learning_rate == 0.05);
  CHECK(qaoa.epochs == 100);
  for (const auto &cfg : {qnn, vqe, qaoa}) {
    CHECK(cfg.predictor.decay == 0.95);
    CHECK(cfg.predictor.max_extra == 12.0);
    CHECK(cfg.execution.shots.shots == 1000);
  }
  CHECK(RunConfig::defaults(TaskKind::qnn, true).predictor.interval == 6);
  CHECK(RunConfig::defaults(TaskKind::qnn).resolved_predictor().learning_rate == 0.002);
}

TEST_CASE("config json round trip") {
  for (auto task : {TaskKind::qaoa, TaskKind::vqe, TaskKind::qnn}) {
    auto cfg = RunConfig::defaults(task, true);
    cfg.seed = 42;
    cfg.vqe.hamiltonian_file = "h.txt";
    cfg.qaoa.graph_seed = 9;
    cfg.gradient.kind = grad::GradientKind::spsa;
    cfg.execution.shots.mode = sim::ShotMode::sampled;
    const auto j = to_json(cfg);
    CHECK(to_json(run_config_from_json(j)) == j);
    CHECK(j.at("predictor").at("r") == 0.95);
    CHECK(j.at("predictor").at("n") == 12.0);
  }
}

TEST_CASE("config validation") {
  auto cfg = qaoa_config(Method::adap);
  cfg.epochs = 0;
  CHECK_THROWS(cfg.validate());
  cfg = vqe_config(Method::adap);
  cfg.vqe.hamiltonian_file.clear();
  CHECK_THROWS(cfg.validate());
  cfg = qaoa_config(Method::adap);
  cfg.predictor.interval = 3;
  CHECK_THROWS(train(cfg));
  CHECK_THROWS(parse_task_kind("gan"));
}

TEST_CASE("comparison summary") {
  const std::vector<Method> methods{Method::vanilla, Method::nap, Method::adap};
  const std::vector<std::uint64_t> seeds{0, 1, 2};
  auto base = qaoa_config(Method::adap, 40);
  const auto summary = compare(base, methods, seeds);
  CHECK(summary.runs.size() == 9);
  const auto j = to_json(summary);
  CHECK(j.at("runs").size() == 9);
  CHECK(j.at("methods").size() == 3);

  const auto &self = summary.summary(Method::vanilla);
  CHECK(self.median_speedup == 1.0);
  CHECK(self.shot_savings == 1.0);

  const auto dir = std::filesystem::temp_directory_path() / "dypp_compare_test";
  std::filesystem::create_directories(dir);
  std::vector<double> per_seed;
  std::int64_t vanilla_lower = 0;
  std::int64_t adap_lower = 0;
  for (auto seed : seeds) {
    for (auto method : {Method::vanilla, Method::adap}) {
      const auto path = dir / (std::string(predict::method_name(method)) + std::to_string(seed) + ".csv");
      write_records_csv(path, summary.run(method, seed)->result->records);
    }
    const auto v = read_records_csv(dir / ("vanilla" + std::to_string(seed) + ".csv"));
    const auto a = read_records_csv(dir / ("adap" + std::to_string(seed) + ".csv"));
    per_seed.push_back(speedup(v, a, true).value);
    vanilla_lower += shot_accounting(v, 1, 1000).lower_bound;
    adap_lower += shot_accounting(a, 1, 1000).lower_bound;
  }
  std::filesystem::remove_all(dir);
  const auto &adap = summary.summary(Method::adap);
  CHECK(adap.median_speedup == median(per_seed));
  CHECK(adap.shot_savings ==
        Approx(static_cast<double>(vanilla_lower) / static_cast<double>(adap_lower)));

  CHECK_THROWS(compare(base, std::vector<Method>{Method::vanilla, Method::vanilla}, seeds));
  CHECK_THROWS(compare(base, methods, std::vector<std::uint64_t>{}));
}

TEST_CASE("failed runs are recorded, not fatal") {
  auto base = vqe_config(Method::vanilla);
  base.vqe.hamiltonian_file = "/nonexistent/h.txt";
  const std::vector<Method> methods{Method::vanilla, Method::adap};
  const std::vector<std::uint64_t> seeds{0};
  const auto summary = compare(base, methods, seeds);
  CHECK(summary.runs.size() == 2);
  for (const auto &r : summary.runs) {
    CHECK_FALSE(r.result.has_value());
    CHECK_FALSE(r.error.empty());
  }
  CHECK(to_json(summary).at("runs")[0].at("ok") == false);
}

TEST_CASE("run summary echoes the resolved config") {
  const auto cfg = qaoa_config(Method::adap, 8);
  const auto result = train(cfg);
  const auto j = run_summary(cfg, result);
  CHECK(run_config_from_json(j.at("config")).epochs == 8);
  CHECK(j.at("records").size() == 8);
  CHECK(j.at("task").at("true_maxcut").get<int>() >= 1);
  CHECK(j.at("extra").contains("best_sampled_cut"));
  CHECK(j.at("config").at("conventions").contains("qaoa_param_order"));
}
