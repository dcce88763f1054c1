#include "dypp/tasks/maxcut.hpp"

#include <random>
#include <stdexcept>
#include <string>

#include "dypp/sim/random.hpp"

namespace dypp::tasks {

GraphSpec generate_erdos_renyi(int num_nodes, double edge_prob,
                               std::uint64_t seed) {
  if (num_nodes < 2) {
    throw std::invalid_argument("Erdos-Renyi graph needs >= 2 nodes");
  }
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
    throw std::invalid_argument("edge probability must be in [0, 1]");
  }
  if (edge_prob == 0.0) {
    throw std::invalid_argument("edge probability 0 cannot produce an edge");
  }
  Rng rng(seed);
  std::bernoulli_distribution coin(edge_prob);
  // Edgeless draws are redrawn.
  constexpr int kMaxAttempts = 10000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    GraphSpec graph;
    graph.num_nodes = num_nodes;
    for (int u = 0; u < num_nodes; ++u) {
      for (int v = u + 1; v < num_nodes; ++v) {
        if (coin(rng)) {
          graph.edges.emplace_back(u, v);
        }
      }
    }
    if (!graph.edges.empty()) {
      return graph;
    }
  }
  throw std::runtime_error("could not draw a graph with at least one edge");
}

int cut_value(const GraphSpec &graph, std::size_t bitstring) {
  const int n = graph.num_nodes;
  int cut = 0;
  for (auto [u, v] : graph.edges) {
    const bool bu = ((bitstring >> (n - 1 - u)) & 1U) != 0;
    const bool bv = ((bitstring >> (n - 1 - v)) & 1U) != 0;
    cut += bu != bv ? 1 : 0;
  }
  return cut;
}

int brute_force_maxcut(const GraphSpec &graph) {
  graph.validate();
  if (graph.num_nodes > kBruteForceMaxNodes) {
    throw std::invalid_argument("brute-force MaxCut limited to " +
                                std::to_string(kBruteForceMaxNodes) + " nodes");
  }
  int best = 0;
  // Node 0 fixed on one side; the complement gives the same cut.
  const std::size_t count = std::size_t{1} << (graph.num_nodes - 1);
  for (std::size_t s = 0; s < count; ++s) {
    best = std::max(best, cut_value(graph, s));
  }
  return best;
}

sim::Observable cut_observable(const GraphSpec &graph) {
  const int n = graph.num_nodes;
  std::vector<sim::PauliTerm> terms;
  const std::string identity(static_cast<std::size_t>(n), 'I');
  terms.push_back(sim::PauliTerm::from_string(
      0.5 * static_cast<double>(graph.edges.size()), identity));
  for (auto [u, v] : graph.edges) {
    std::string zz = identity;
    zz[static_cast<std::size_t>(u)] = 'Z';
    zz[static_cast<std::size_t>(v)] = 'Z';
    terms.push_back(sim::PauliTerm::from_string(-0.5, zz));
  }
  return sim::Observable(n, std::move(terms));
}

MaxCutTask::MaxCutTask(GraphSpec g, int d)
    : graph(std::move(g)), depth(d), circuit(circuit::build_qaoa(graph, d)),
      cost(cut_observable(graph)), true_maxcut(brute_force_maxcut(graph)) {}

double cut_expectation(std::span<const double> theta, const MaxCutTask &task,
                       circuit::Executor &executor) {
  if (static_cast<int>(theta.size()) != 2 * task.depth) {
    throw std::invalid_argument("QAOA expects " + std::to_string(2 * task.depth) +
                                " parameters");
  }
  return executor.expectation(task.circuit, theta, {}, task.cost);
}

double cut_expectation(std::span<const double> theta, const MaxCutTask &task) {
  if (static_cast<int>(theta.size()) != 2 * task.depth) {
    throw std::invalid_argument("QAOA expects " + std::to_string(2 * task.depth) +
                                " parameters");
  }
  return sim::expectation(task.circuit.simulate(theta), task.cost);
}

int best_sampled_cut(std::span<const double> theta, const MaxCutTask &task,
                     circuit::Executor &executor) {
  const auto counts = executor.measure_counts(task.circuit, theta, {});
  int best = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) {
      best = std::max(best, cut_value(task.graph, i));
    }
  }
  return best;
}

} // namespace dypp::tasks
