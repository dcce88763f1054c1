#include "dypp/tasks/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dypp/sim/random.hpp"

namespace dypp::tasks {

void Dataset::validate() const {
  if (features.size() != labels.size()) {
    throw std::invalid_argument("feature and label row counts differ");
  }
  if (features.empty()) {
    throw std::invalid_argument("dataset is empty");
  }
  for (const auto &row : features) {
    if (row.size() != dim()) {
      throw std::invalid_argument("ragged feature matrix");
    }
  }
  for (int label : labels) {
    if (label < 0 || label >= num_classes) {
      throw std::invalid_argument("label " + std::to_string(label) +
                                  " out of range");
    }
  }
  std::vector<bool> seen(size(), false);
  for (const auto *part : {&train, &test}) {
    for (std::size_t i : *part) {
      if (i >= size() || seen[i]) {
        throw std::invalid_argument("train/test split overlaps or is out of range");
      }
      seen[i] = true;
    }
  }
}

void split_dataset(Dataset &data, std::uint64_t seed) {
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const auto n_train = static_cast<std::size_t>(
      std::llround(kTrainFraction * static_cast<double>(order.size())));
  data.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  data.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
}

Dataset parse_dataset_csv(std::istream &in, std::uint64_t split_seed,
                          int num_classes) {
  Dataset data;
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("dataset CSV is empty");
  }
  const auto columns = static_cast<std::size_t>(
      std::count(line.begin(), line.end(), ',') + 1);
  if (columns < 2) {
    throw std::invalid_argument("dataset CSV needs feature and label columns");
  }
  int line_no = 1;
  int max_label = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) {
      cells.push_back(cell);
    }
    if (cells.size() != columns) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(columns) + " columns");
    }
    std::vector<double> row;
    try {
      for (std::size_t c = 0; c + 1 < columns; ++c) {
        std::size_t used = 0;
        row.push_back(std::stod(cells[c], &used));
        if (used != cells[c].size()) {
          throw std::invalid_argument("trailing characters");
        }
      }
      std::size_t used = 0;
      const int label = std::stoi(cells.back(), &used);
      if (used != cells.back().size()) {
        throw std::invalid_argument("trailing characters");
      }
      data.labels.push_back(label);
      max_label = std::max(max_label, label);
    } catch (const std::exception &) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": malformed value");
    }
    data.features.push_back(std::move(row));
  }
  data.num_classes = num_classes > 0 ? num_classes : max_label + 1;
  split_dataset(data, split_seed);
  data.validate();
  return data;
}

Dataset load_dataset_csv(const std::filesystem::path &path,
                         std::uint64_t split_seed, int num_classes) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open dataset " + path.string());
  }
  return parse_dataset_csv(in, split_seed, num_classes);
}

Dataset synth_blobs(int num_classes, int dim, int num_samples, double spread,
                    std::uint64_t seed) {
  if (num_classes < 2) {
    throw std::invalid_argument("blobs need at least 2 classes");
  }
  if (dim < 1 || num_samples < num_classes) {
    throw std::invalid_argument("blobs need dim >= 1 and a sample per class");
  }
  if (!(spread >= 0.0)) {
    throw std::invalid_argument("spread must be non-negative");
  }
  Rng rng(seed);
  std::uniform_real_distribution<double> centre(0.5, std::numbers::pi - 0.5);
  std::normal_distribution<double> noise(0.0, spread);
  std::vector<std::vector<double>> centres(static_cast<std::size_t>(num_classes));
  for (auto &c : centres) {
    c.resize(static_cast<std::size_t>(dim));
    for (auto &v : c) {
      v = centre(rng);
    }
  }
  Dataset data;
  data.num_classes = num_classes;
  for (int i = 0; i < num_samples; ++i) {
    const int label = i % num_classes;
    std::vector<double> row = centres[static_cast<std::size_t>(label)];
    for (auto &v : row) {
      v += spread > 0.0 ? noise(rng) : 0.0;
    }
    data.features.push_back(std::move(row));
    data.labels.push_back(label);
  }
  split_dataset(data, derive_seed(seed, 1));
  data.validate();
  return data;
}

} // namespace dypp::tasks
