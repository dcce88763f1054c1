#include "dypp/tasks/vqe.hpp"

#include <stdexcept>
#include <string>

#include "dypp/circuit/builders.hpp"
#include "dypp/sim/ground_energy.hpp"

namespace dypp::tasks {

namespace {

circuit::ParameterizedCircuit make_ansatz(const sim::Observable &h,
                                          AnsatzKind kind, int num_electrons,
                                          int layers) {
  switch (kind) {
  case AnsatzKind::uccsd:
    return circuit::build_uccsd(h.num_qubits(), num_electrons);
  case AnsatzKind::hea:
    return circuit::build_hea(h.num_qubits(), layers);
  }
  throw std::invalid_argument("unknown ansatz");
}

} // namespace

std::string_view ansatz_name(AnsatzKind kind) {
  return kind == AnsatzKind::uccsd ? "uccsd" : "hea";
}

AnsatzKind parse_ansatz_kind(std::string_view name) {
  if (name == "uccsd") {
    return AnsatzKind::uccsd;
  }
  if (name == "hea") {
    return AnsatzKind::hea;
  }
  throw std::invalid_argument("unknown ansatz: " + std::string(name));
}

VqeTask::VqeTask(sim::Observable h, AnsatzKind kind, int num_electrons,
                 int layers, double tol)
    : hamiltonian(std::move(h)),
      ansatz(make_ansatz(hamiltonian, kind, num_electrons, layers)),
      convergence_tol(tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("convergence tolerance must be positive");
  }
  exact_energy = hamiltonian.num_qubits() <= sim::kDenseOracleMaxQubits
                     ? sim::exact_ground_energy(hamiltonian)
                     : 0.0;
}

double vqe_energy(std::span<const double> theta, const VqeTask &task,
                  circuit::Executor &executor) {
  return executor.expectation(task.ansatz, theta, {}, task.hamiltonian);
}

double vqe_energy(std::span<const double> theta, const VqeTask &task) {
  return sim::expectation(task.ansatz.simulate(theta), task.hamiltonian);
}

sim::Observable transverse_field_ising(int num_qubits, double coupling,
                                       double field) {
  if (num_qubits < 2) {
    throw std::invalid_argument("Ising chain needs >= 2 qubits");
  }
  const std::string identity(static_cast<std::size_t>(num_qubits), 'I');
  std::vector<sim::PauliTerm> terms;
  for (int q = 0; q + 1 < num_qubits; ++q) {
    std::string zz = identity;
    zz[static_cast<std::size_t>(q)] = 'Z';
    zz[static_cast<std::size_t>(q + 1)] = 'Z';
    terms.push_back(sim::PauliTerm::from_string(-coupling, zz));
  }
  for (int q = 0; q < num_qubits; ++q) {
    std::string x = identity;
    x[static_cast<std::size_t>(q)] = 'X';
    terms.push_back(sim::PauliTerm::from_string(-field, x));
  }
  return sim::Observable(num_qubits, std::move(terms));
}

} // namespace dypp::tasks
