#include "dypp/harness/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dypp/harness/metrics.hpp"

namespace dypp::harness {

using nlohmann::json;

void write_records_csv(std::ostream &out, const std::vector<RunRecord> &records) {
  out << kCsvHeader << '\n' << std::setprecision(17);
  for (const auto &r : records) {
    out << r.epoch << ',' << r.loss << ',' << r.metric << ','
        << (r.was_prediction ? 1 : 0) << ',' << r.cum_executions << ','
        << r.cum_shots << '\n';
  }
}

void write_records_csv(const std::filesystem::path &path,
                       const std::vector<RunRecord> &records) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  write_records_csv(out, records);
}

std::vector<RunRecord> read_records_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::invalid_argument("unexpected record CSV header");
  }
  std::vector<RunRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    std::stringstream row(line);
    RunRecord r;
    int pred = 0;
    char c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0;
    row >> r.epoch >> c1 >> r.loss >> c2 >> r.metric >> c3 >> pred >> c4 >>
        r.cum_executions >> c5 >> r.cum_shots;
    if (!row || c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',' || c5 != ',') {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": malformed record");
    }
    r.was_prediction = pred != 0;
    records.push_back(r);
  }
  return records;
}

std::vector<RunRecord> read_records_csv(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return read_records_csv(in);
}

json record_to_json(const RunRecord &r) {
  return {{"epoch", r.epoch},
          {"loss", r.loss},
          {"metric", r.metric},
          {"was_prediction", r.was_prediction},
          {"cum_executions", r.cum_executions},
          {"cum_shots", r.cum_shots}};
}

json run_summary(const RunConfig &cfg, const RunResult &result) {
  const auto totals = shot_accounting(result.records, result.samples_per_iteration,
                                      cfg.execution.shots.shots);
  json records = json::array();
  for (const auto &r : result.records) {
    records.push_back(record_to_json(r));
  }
  json j;
  j["config"] = to_json(cfg);
  j["task"] = result.task;
  j["initial"] = {{"loss", result.initial.loss}, {"metric", result.initial.metric}};
  j["epochs_run"] = result.records.size();
  j["optimizer_steps"] = result.optimizer_steps;
  j["predictions"] = result.predictions;
  j["early_stopped"] = result.early_stopped;
  if (!result.records.empty()) {
    j["final"] = {{"loss", result.records.back().loss},
                  {"metric", result.records.back().metric}};
  }
  j["shots"] = {{"detailed", totals.detailed},
                {"lower_bound", totals.lower_bound},
                {"samples_per_iteration", result.samples_per_iteration}};
  j["executions"] = result.records.empty() ? 0 : result.records.back().cum_executions;
  j["final_params"] = result.final_params;
  j["extra"] = result.extra;
  j["records"] = records;
  return j;
}

void write_json(const std::filesystem::path &path, const json &j) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << j.dump(2) << '\n';
}

} // namespace dypp::harness
