#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dypp/harness/train.hpp"

namespace dypp::harness {

enum class Column { loss, metric };

struct Speedup {
  double value = 0.0; // 0 when not surpassed
  bool surpassed = false;
  int vanilla_epoch = 0;
  int dypp_epoch = 0;
};

/**
 * e_v / e_p, where e_v is the epoch of the baseline's best value in
 * `column` and e_p the first epoch at which the other run is at least as
 * good. Throws on empty record lists.
 */
Speedup speedup(std::span<const RunRecord> vanilla, std::span<const RunRecord> dypp,
                bool better_is_lower, Column column = Column::loss);

/// |OLS slope| of `column` against epoch over epochs [first, last].
double convergence_rate(std::span<const RunRecord> records, int first, int last,
                        Column column = Column::loss);

struct ShotTotals {
  std::int64_t detailed = 0;    // every charged shot, gradients included
  std::int64_t lower_bound = 0; // iterations x samples x m
};

/// Iterations are optimizer epochs; prediction epochs count for nothing.
ShotTotals shot_accounting(std::span<const RunRecord> records,
                           std::int64_t samples_per_iteration, int shots);

double value_of(const RunRecord &record, Column column);

double median(std::vector<double> values);
double mean(std::span<const double> values);

} // namespace dypp::harness
