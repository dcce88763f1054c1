#include "dypp/harness/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dypp::harness {

double value_of(const RunRecord &record, Column column) {
  return column == Column::loss ? record.loss : record.metric;
}

Speedup speedup(std::span<const RunRecord> vanilla, std::span<const RunRecord> dypp,
                bool better_is_lower, Column column) {
  if (vanilla.empty() || dypp.empty()) {
    throw std::invalid_argument("speedup needs non-empty record streams");
  }
  const auto better = [&](double x, double y) {
    return better_is_lower ? x < y : x > y;
  };
  Speedup out;
  double best = value_of(vanilla.front(), column);
  out.vanilla_epoch = vanilla.front().epoch;
  for (const auto &r : vanilla) {
    if (better(value_of(r, column), best)) {
      best = value_of(r, column);
      out.vanilla_epoch = r.epoch;
    }
  }
  for (const auto &r : dypp) {
    if (!better(best, value_of(r, column))) {
      out.dypp_epoch = r.epoch;
      out.surpassed = true;
      out.value = static_cast<double>(out.vanilla_epoch) /
                  static_cast<double>(out.dypp_epoch);
      break;
    }
  }
  return out;
}

double convergence_rate(std::span<const RunRecord> records, int first, int last,
                        Column column) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto &r : records) {
    if (r.epoch >= first && r.epoch <= last) {
      xs.push_back(static_cast<double>(r.epoch));
      ys.push_back(value_of(r, column));
    }
  }
  if (xs.size() < 2) {
    throw std::invalid_argument("convergence rate needs at least 2 epochs in range");
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  return std::abs(sxy / sxx);
}

ShotTotals shot_accounting(std::span<const RunRecord> records,
                           std::int64_t samples_per_iteration, int shots) {
  ShotTotals out;
  if (records.empty()) {
    return out;
  }
  out.detailed = records.back().cum_shots;
  const auto iterations = std::count_if(records.begin(), records.end(),
                                        [](const RunRecord &r) { return !r.was_prediction; });
  out.lower_bound = static_cast<std::int64_t>(iterations) * samples_per_iteration *
                    static_cast<std::int64_t>(shots);
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("median of an empty set");
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

double mean(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("mean of an empty set");
  }
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

} // namespace dypp::harness
