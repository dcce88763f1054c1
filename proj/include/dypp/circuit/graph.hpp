#pragma once

#include <filesystem>
#include <istream>
#include <utility>
#include <vector>

namespace dypp::circuit {

/// Undirected simple graph; edges are stored with u < v.
struct GraphSpec {
  int num_nodes = 0;
  std::vector<std::pair<int, int>> edges;

  /// Throws on self-loops, duplicate edges or out-of-range nodes.
  void validate() const;

  /// `<num_nodes>` on the first line, then one `u v` edge per line.
  static GraphSpec parse(std::istream &in);
  static GraphSpec load(const std::filesystem::path &path);
};

} // namespace dypp::circuit
