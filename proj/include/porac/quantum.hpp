#pragma once

// Quantum protocols for the parity-oblivious random access code: Born-rule
// evaluation, parity-obliviousness certification and the reconstructed
// d = 3, 4, 5 protocols.

#include <array>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "porac/game.hpp"
#include "porac/linalg.hpp"

namespace porac {

/// Raised when a protocol breaks one of its invariants. The message names
/// the invariant (e.g. "POVM completeness").
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A d-outcome measurement. Elements are either rank-1 projector vectors or
/// full positive semidefinite matrices; outcome index is the guessed dit.
class Measurement {
 public:
  using Element = std::variant<ComplexVector, ComplexMatrix>;

  Measurement() = default;
  explicit Measurement(std::vector<Element> elements) : elements_(std::move(elements)) {}

  static Measurement projective(std::vector<ComplexVector> vectors);
  static Measurement general(std::vector<ComplexMatrix> matrices);

  std::size_t outcomes() const { return elements_.size(); }
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t dim() const;
  bool is_rank_one() const;

  /// Element b as a matrix (|e><e| for vector elements).
  ComplexMatrix element_matrix(std::size_t b) const;
  /// <psi|E_b|psi> without validation.
  double probability(const ComplexVector& state, std::size_t b) const;

  /// Throws ProtocolError naming the broken invariant.
  void validate(double tol) const;

 private:
  std::vector<Element> elements_;
};

/// Pure-state encoding of all d^2 strings plus Bob's two decoding measurements.
struct QuantumProtocol {
  int d = 0;
  std::size_t dim = 0;
  std::vector<ComplexVector> states;        ///< indexed by DitString::index(d)
  std::array<Measurement, 2> measurements;  ///< [0] guesses x1, [1] guesses x2

  const ComplexVector& state(DitString x) const { return states.at(x.index(d)); }
  ComplexVector& state(DitString x) { return states.at(x.index(d)); }
  /// Measurement used to guess x_y, y in {1, 2}.
  const Measurement& measurement(int y) const { return measurements.at(y - 1); }
};

/// Throws ProtocolError if any state is off-normalized by more than tol or
/// either measurement is not a valid d-outcome POVM within tol.
void validate(const QuantumProtocol& p, double tol = kExactTol);

/// Tr(|psi><psi| E_b) for every outcome b.
std::vector<double> born_probabilities(const ComplexVector& state, const Measurement& m);

/// Average success (1/2d^2) Σ_y Σ_x Tr(rho_x E^(y)_{x_y}). Validates at tol first.
double success_probability(const QuantumProtocol& p, double tol = kExactTol);

/// Same sum without validation; the optimizer's consistency reference.
double success_probability_unchecked(const QuantumProtocol& p);

struct ParityReport {
  bool oblivious = false;
  double max_deviation = 0.0;  ///< max entrywise |S_l - S_l'| over parity sums S_l = Σ_{x∈P_l} rho_x
};

ParityReport check_parity_oblivious(const QuantumProtocol& p, double tol);

/// The reconstructed protocols for d in {3, 4, 5}. d = 3 is built from its
/// closed form; d = 4, 5 are embedded from 4-5 digit decimals (see
/// builtin_protocols.cpp for the label repairs).
QuantumProtocol builtin_protocol(int d);

/// Tolerance each builtin satisfies: kExactTol for d = 3, kPrintedTol otherwise.
double builtin_tolerance(int d);

/// |<psi_x|psi_x'>| for every ordered pair of encoding states, rows and
/// columns grouped by parity class (class order, then in-class order).
struct OverlapTable {
  std::vector<DitString> labels;
  std::vector<int> partition;  ///< parity class of each row/column
  std::vector<double> magnitudes;

  std::size_t size() const { return labels.size(); }
  double at(std::size_t row, std::size_t col) const { return magnitudes[row * labels.size() + col]; }
};

OverlapTable mabb_overlap_table(const QuantumProtocol& p);

/// quantum / classical. Throws std::invalid_argument on a zero classical value.
double violation_ratio(double quantum, const ExactProbability& classical);

}  // namespace porac
