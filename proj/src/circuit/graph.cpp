#include "dypp/circuit/graph.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dypp::circuit {

void GraphSpec::validate() const {
  if (num_nodes < 1) {
    throw std::invalid_argument("graph needs at least one node");
  }
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes) {
      throw std::out_of_range("edge (" + std::to_string(u) + ", " +
                              std::to_string(v) + ") out of range");
    }
    if (u == v) {
      throw std::invalid_argument("self-loop on node " + std::to_string(u));
    }
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(u) +
                                  ", " + std::to_string(v) + ")");
    }
  }
}

GraphSpec GraphSpec::parse(std::istream &in) {
  GraphSpec graph;
  std::string line;
  bool have_header = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::istringstream fields(line);
    std::string extra;
    if (!have_header) {
      if (!(fields >> graph.num_nodes) || (fields >> extra)) {
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": expected node count");
      }
      have_header = true;
      continue;
    }
    int u = 0;
    int v = 0;
    if (!(fields >> u >> v) || (fields >> extra)) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected 'u v'");
    }
    graph.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  if (!have_header) {
    throw std::invalid_argument("graph file is empty");
  }
  graph.validate();
  return graph;
}

GraphSpec GraphSpec::load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open graph file " + path.string());
  }
  return parse(in);
}

} // namespace dypp::circuit
