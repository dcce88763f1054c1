#pragma once

#include <span>
#include <string_view>

#include "dypp/circuit/circuit.hpp"
#include "dypp/circuit/executor.hpp"
#include "dypp/sim/observable.hpp"

namespace dypp::tasks {

enum class AnsatzKind { uccsd, hea };

std::string_view ansatz_name(AnsatzKind kind);
AnsatzKind parse_ansatz_kind(std::string_view name);

struct VqeTask {
  sim::Observable hamiltonian;
  circuit::ParameterizedCircuit ansatz;
  double convergence_tol = 1e-6;
  double exact_energy = 0.0;

  /// `num_electrons` is used by UCCSD; `layers` by the hardware-efficient ansatz.
  VqeTask(sim::Observable hamiltonian, AnsatzKind kind, int num_electrons,
          int layers = 1, double convergence_tol = 1e-6);
};

double vqe_energy(std::span<const double> theta, const VqeTask &task,
                  circuit::Executor &executor);

/// Exact energy, no accounting.
double vqe_energy(std::span<const double> theta, const VqeTask &task);

/// Open transverse-field Ising chain: -J sum Z_i Z_{i+1} - h sum X_i.
sim::Observable transverse_field_ising(int num_qubits, double coupling,
                                       double field);

} // namespace dypp::tasks
