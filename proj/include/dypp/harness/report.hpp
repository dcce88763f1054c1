#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "dypp/harness/run_config.hpp"
#include "dypp/harness/train.hpp"

namespace dypp::harness {

inline constexpr const char *kCsvHeader =
    "epoch,loss,metric,was_prediction,cum_executions,cum_shots";

void write_records_csv(std::ostream &out, const std::vector<RunRecord> &records);
void write_records_csv(const std::filesystem::path &path,
                       const std::vector<RunRecord> &records);
std::vector<RunRecord> read_records_csv(std::istream &in);
std::vector<RunRecord> read_records_csv(const std::filesystem::path &path);

nlohmann::json record_to_json(const RunRecord &record);

/// Run summary: resolved config, task facts, totals and the record stream.
nlohmann::json run_summary(const RunConfig &cfg, const RunResult &result);

void write_json(const std::filesystem::path &path, const nlohmann::json &j);

} // namespace dypp::harness
