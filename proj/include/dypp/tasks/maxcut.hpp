#pragma once

#include <cstdint>
#include <span>

#include "dypp/circuit/builders.hpp"
#include "dypp/circuit/executor.hpp"
#include "dypp/circuit/graph.hpp"
#include "dypp/sim/observable.hpp"

namespace dypp::tasks {

using circuit::GraphSpec;

inline constexpr int kBruteForceMaxNodes = 24;

/// G(n, p) graph; an edgeless draw is rejected and redrawn.
GraphSpec generate_erdos_renyi(int num_nodes, double edge_prob,
                               std::uint64_t seed);

/// Largest number of crossing edges over all bipartitions.
int brute_force_maxcut(const GraphSpec &graph);

/// Cut size of a basis-state index (qubit 0 is the most significant bit).
int cut_value(const GraphSpec &graph, std::size_t bitstring);

/// sum_{(u,v)} (1 - Z_u Z_v) / 2 as a Pauli sum.
sim::Observable cut_observable(const GraphSpec &graph);

struct MaxCutTask {
  GraphSpec graph;
  int depth = 1;
  circuit::ParameterizedCircuit circuit;
  sim::Observable cost;
  int true_maxcut = 0;

  MaxCutTask(GraphSpec graph, int depth);
};

/// Expected cut of the QAOA state at theta.
double cut_expectation(std::span<const double> theta, const MaxCutTask &task,
                       circuit::Executor &executor);

/// Exact expected cut, no accounting.
double cut_expectation(std::span<const double> theta, const MaxCutTask &task);

/// Largest cut among one sampled execution's bitstrings.
int best_sampled_cut(std::span<const double> theta, const MaxCutTask &task,
                     circuit::Executor &executor);

} // namespace dypp::tasks
