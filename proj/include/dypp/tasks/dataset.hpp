#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <vector>

namespace dypp::tasks {

/// Labelled feature matrix with a fixed train/test split.
struct Dataset {
  std::vector<std::vector<double>> features;
  std::vector<int> labels;
  int num_classes = 0;
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;

  [[nodiscard]] std::size_t size() const { return labels.size(); }
  [[nodiscard]] std::size_t dim() const {
    return features.empty() ? 0 : features.front().size();
  }
  void validate() const;
};

inline constexpr double kTrainFraction = 0.7;

/// Seeded 70/30 split of all rows.
void split_dataset(Dataset &data, std::uint64_t seed);

/**
 * Parses `f1,...,fd,label` CSV with a header row. Labels must lie in
 * [0, num_classes); when num_classes is 0 it is inferred as max label + 1.
 */
Dataset parse_dataset_csv(std::istream &in, std::uint64_t split_seed,
                          int num_classes = 0);
Dataset load_dataset_csv(const std::filesystem::path &path,
                         std::uint64_t split_seed, int num_classes = 0);

/**
 * Gaussian blobs: class centres drawn uniformly in [0.5, pi - 0.5]^dim and
 * samples scattered around them with standard deviation `spread`. Classes
 * are assigned round-robin.
 */
Dataset synth_blobs(int num_classes, int dim, int num_samples, double spread,
                    std::uint64_t seed);

} // namespace dypp::tasks
