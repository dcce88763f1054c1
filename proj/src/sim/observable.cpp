#include "dypp/sim/observable.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dypp::sim {

PauliTerm PauliTerm::from_string(double coefficient, std::string_view letters) {
  PauliTerm term;
  term.coefficient = coefficient;
  term.letters.reserve(letters.size());
  for (char ch : letters) {
    switch (ch) {
    case 'I':
      term.letters.push_back(Pauli::I);
      break;
    case 'X':
      term.letters.push_back(Pauli::X);
      break;
    case 'Y':
      term.letters.push_back(Pauli::Y);
      break;
    case 'Z':
      term.letters.push_back(Pauli::Z);
      break;
    default:
      throw std::invalid_argument("invalid Pauli letter '" + std::string(1, ch) +
                                  "'");
    }
  }
  return term;
}

std::string PauliTerm::letter_string() const {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  std::string out;
  out.reserve(letters.size());
  for (Pauli p : letters) {
    out.push_back(kLetters[static_cast<int>(p)]);
  }
  return out;
}

bool PauliTerm::is_diagonal() const {
  for (Pauli p : letters) {
    if (p == Pauli::X || p == Pauli::Y) {
      return false;
    }
  }
  return true;
}

Observable::Observable(int num_qubits, std::vector<PauliTerm> terms)
    : num_qubits_(num_qubits), terms_(std::move(terms)) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("observable qubit count out of range");
  }
  if (terms_.empty()) {
    throw std::invalid_argument("observable needs at least one term");
  }
  for (const auto &t : terms_) {
    if (static_cast<int>(t.letters.size()) != num_qubits_) {
      throw std::invalid_argument("Pauli term '" + t.letter_string() +
                                  "' does not match qubit count " +
                                  std::to_string(num_qubits_));
    }
  }
}

Observable Observable::z(int num_qubits, int qubit) {
  std::string letters(static_cast<std::size_t>(num_qubits), 'I');
  letters.at(static_cast<std::size_t>(qubit)) = 'Z';
  return Observable(num_qubits, {PauliTerm::from_string(1.0, letters)});
}

Observable Observable::parse(std::istream &in) {
  std::vector<PauliTerm> terms;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    double coeff = 0.0;
    std::string letters;
    if (!(fields >> coeff)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) {
        continue;
      }
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected '<coefficient> <letters>'");
    }
    std::string extra;
    if (!(fields >> letters) || (fields >> extra)) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected '<coefficient> <letters>'");
    }
    try {
      terms.push_back(PauliTerm::from_string(coeff, letters));
    } catch (const std::invalid_argument &e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " +
                                  e.what());
    }
    if (terms.back().letters.size() != terms.front().letters.size()) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": letter strings must share length");
    }
  }
  if (terms.empty()) {
    throw std::invalid_argument("Hamiltonian has no terms");
  }
  const int n = static_cast<int>(terms.front().letters.size());
  return Observable(n, std::move(terms));
}

Observable Observable::load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open Hamiltonian file " + path.string());
  }
  return parse(in);
}

double pauli_expectation(const StateVector &state, const PauliTerm &term) {
  if (static_cast<int>(term.letters.size()) != state.num_qubits()) {
    throw std::invalid_argument("Pauli term qubit count mismatch");
  }
  std::size_t flip = 0;
  std::size_t phase_mask = 0;
  int num_y = 0;
  for (int q = 0; q < state.num_qubits(); ++q) {
    const std::size_t bit = state.mask(q);
    switch (term.letters[q]) {
    case Pauli::I:
      break;
    case Pauli::X:
      flip |= bit;
      break;
    case Pauli::Y:
      flip |= bit;
      phase_mask |= bit;
      ++num_y;
      break;
    case Pauli::Z:
      phase_mask |= bit;
      break;
    }
  }
  // P|i> = i^{#Y} (-1)^{popcount(i & phase_mask)} |i ^ flip>
  static constexpr complex_t kYPhase[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  const complex_t global = kYPhase[num_y % 4];
  const auto amps = state.amplitudes();
  complex_t total{0.0, 0.0};
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double sign = (std::popcount(i & phase_mask) % 2 == 0) ? 1.0 : -1.0;
    total += std::conj(amps[i ^ flip]) * sign * amps[i];
  }
  return (global * total).real();
}

double expectation(const StateVector &state, const Observable &obs) {
  if (obs.num_qubits() != state.num_qubits()) {
    throw std::invalid_argument("observable acts on " +
                                std::to_string(obs.num_qubits()) +
                                " qubits, state has " +
                                std::to_string(state.num_qubits()));
  }
  double total = 0.0;
  for (const auto &t : obs.terms()) {
    total += t.coefficient * pauli_expectation(state, t);
  }
  return total;
}

} // namespace dypp::sim
