#include "dypp/harness/compare.hpp"

#include <algorithm>
#include <stdexcept>

#include "dypp/harness/report.hpp"

namespace dypp::harness {

using nlohmann::json;

std::pair<int, int> convergence_window(TaskKind task, int last_epoch) {
  if (task == TaskKind::qaoa) {
    return {1, std::min(25, last_epoch)};
  }
  return {1, last_epoch};
}

namespace {

Column convergence_column(TaskKind task) {
  return task == TaskKind::qaoa ? Column::metric : Column::loss;
}

json speedup_json(const Speedup &s) {
  return {{"value", s.value},
          {"surpassed", s.surpassed},
          {"vanilla_epoch", s.vanilla_epoch},
          {"dypp_epoch", s.dypp_epoch}};
}

} // namespace

const MethodSummary &ComparisonSummary::summary(predict::Method method) const {
  for (const auto &m : per_method) {
    if (m.method == method) {
      return m;
    }
  }
  throw std::out_of_range("method not compared");
}

const SeededRun *ComparisonSummary::run(predict::Method method, std::uint64_t seed) const {
  for (const auto &r : runs) {
    if (r.method == method && r.seed == seed) {
      return &r;
    }
  }
  return nullptr;
}

ComparisonSummary compare(const RunConfig &base,
                          std::span<const predict::Method> methods,
                          std::span<const std::uint64_t> seeds,
                          const std::function<void(const SeededRun &)> &on_run) {
  if (methods.empty() || seeds.empty()) {
    throw std::invalid_argument("compare needs at least one method and one seed");
  }
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (std::count(methods.begin(), methods.end(), methods[i]) > 1) {
      throw std::invalid_argument("duplicate method: " +
                                  std::string(predict::method_name(methods[i])));
    }
  }
  base.validate();

  ComparisonSummary out;
  out.base = base;
  out.methods.assign(methods.begin(), methods.end());
  out.seeds.assign(seeds.begin(), seeds.end());

  for (std::uint64_t seed : seeds) {
    for (auto method : methods) {
      SeededRun run;
      run.method = method;
      run.seed = seed;
      run.config = base;
      run.config.seed = seed;
      run.config.predictor.method = method;
      try {
        run.result = train(run.config);
      } catch (const std::exception &e) {
        run.error = e.what();
      }
      if (on_run) {
        on_run(run);
      }
      out.runs.push_back(std::move(run));
    }
  }

  const auto baseline = methods.front();
  const int shots = base.execution.shots.shots;
  std::int64_t baseline_lower = 0;
  for (auto method : methods) {
    MethodSummary m;
    m.method = method;
    std::vector<double> values;
    std::vector<double> metric_values;
    std::vector<double> rates;
    std::vector<double> finals;
    for (std::uint64_t seed : seeds) {
      const auto *run = out.run(method, seed);
      if (!run->result) {
        continue;
      }
      const auto &records = run->result->records;
      const auto [first, last] = convergence_window(base.task, records.back().epoch);
      rates.push_back(convergence_rate(records, first, last,
                                       convergence_column(base.task)));
      finals.push_back(records.back().loss);
      const auto totals =
          shot_accounting(records, run->result->samples_per_iteration, shots);
      m.detailed_shots += totals.detailed;
      m.lower_bound_shots += totals.lower_bound;
      const auto *ref = out.run(baseline, seed);
      if (!ref->result) {
        continue;
      }
      const auto &ref_records = ref->result->records;
      m.speedups.push_back(speedup(ref_records, records, true, Column::loss));
      m.metric_speedups.push_back(speedup(ref_records, records,
                                          run->result->metric_lower_is_better,
                                          Column::metric));
      values.push_back(m.speedups.back().value);
      metric_values.push_back(m.metric_speedups.back().value);
    }
    if (!values.empty()) {
      m.median_speedup = median(values);
      m.median_metric_speedup = median(metric_values);
    }
    if (!rates.empty()) {
      m.mean_convergence_rate = mean(rates);
      m.median_final_loss = median(finals);
    }
    if (method == baseline) {
      baseline_lower = m.lower_bound_shots;
    }
    m.shot_savings = m.lower_bound_shots > 0
                         ? static_cast<double>(baseline_lower) /
                               static_cast<double>(m.lower_bound_shots)
                         : 0.0;
    out.per_method.push_back(std::move(m));
  }
  return out;
}

json to_json(const ComparisonSummary &summary) {
  json j;
  j["config"] = to_json(summary.base);
  j["baseline"] = predict::method_name(summary.methods.front());
  j["seeds"] = summary.seeds;
  json methods = json::array();
  for (const auto &m : summary.per_method) {
    json speedups = json::array();
    for (const auto &s : m.speedups) {
      speedups.push_back(speedup_json(s));
    }
    json metric_speedups = json::array();
    for (const auto &s : m.metric_speedups) {
      metric_speedups.push_back(speedup_json(s));
    }
    methods.push_back({{"method", predict::method_name(m.method)},
                       {"median_speedup", m.median_speedup},
                       {"median_metric_speedup", m.median_metric_speedup},
                       {"speedups", speedups},
                       {"metric_speedups", metric_speedups},
                       {"mean_convergence_rate", m.mean_convergence_rate},
                       {"median_final_loss", m.median_final_loss},
                       {"detailed_shots", m.detailed_shots},
                       {"lower_bound_shots", m.lower_bound_shots},
                       {"shot_savings", m.shot_savings}});
  }
  j["methods"] = methods;
  json runs = json::array();
  for (const auto &r : summary.runs) {
    json entry = {{"method", predict::method_name(r.method)}, {"seed", r.seed}};
    if (r.result) {
      const auto totals = shot_accounting(r.result->records,
                                          r.result->samples_per_iteration,
                                          summary.base.execution.shots.shots);
      const auto &last = r.result->records.back();
      entry["ok"] = true;
      entry["epochs_run"] = r.result->records.size();
      entry["final_loss"] = last.loss;
      entry["final_metric"] = last.metric;
      entry["predictions"] = r.result->predictions;
      entry["detailed_shots"] = totals.detailed;
      entry["lower_bound_shots"] = totals.lower_bound;
      entry["task"] = r.result->task;
    } else {
      entry["ok"] = false;
      entry["error"] = r.error;
    }
    runs.push_back(entry);
  }
  j["runs"] = runs;
  return j;
}

} // namespace dypp::harness
