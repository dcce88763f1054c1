#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "dypp/sim/state_vector.hpp"

namespace dypp::sim {

enum class Pauli : std::uint8_t { I, X, Y, Z };

struct PauliTerm {
  double coefficient = 0.0;
  std::vector<Pauli> letters; // letters[q] acts on qubit q

  /// Parses a letter string such as "IXZY".
  static PauliTerm from_string(double coefficient, std::string_view letters);

  [[nodiscard]] std::string letter_string() const;
  /// True when every letter is I or Z.
  [[nodiscard]] bool is_diagonal() const;
};

/// Real-weighted sum of Pauli strings on a fixed qubit count.
class Observable {
public:
  Observable(int num_qubits, std::vector<PauliTerm> terms);

  /// Single-qubit Z on `qubit`.
  static Observable z(int num_qubits, int qubit);

  /**
   * Reads the text Pauli-sum format: one `<coefficient> <letters>` term per
   * line, `#` starts a comment, blank lines are ignored.
   */
  static Observable parse(std::istream &in);
  static Observable load(const std::filesystem::path &path);

  [[nodiscard]] int num_qubits() const { return num_qubits_; }
  [[nodiscard]] const std::vector<PauliTerm> &terms() const { return terms_; }

private:
  int num_qubits_;
  std::vector<PauliTerm> terms_;
};

/// <psi|P|psi> for a single Pauli string (coefficient ignored).
double pauli_expectation(const StateVector &state, const PauliTerm &term);

/// Exact sum_t coeff_t <psi|P_t|psi>.
double expectation(const StateVector &state, const Observable &obs);

} // namespace dypp::sim
