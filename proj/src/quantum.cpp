#include "porac/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace porac {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void fail(const std::string& invariant, const std::string& detail) {
  throw ProtocolError(invariant + ": " + detail);
}

}  // namespace

Measurement Measurement::projective(std::vector<ComplexVector> vectors) {
  std::vector<Element> elements;
  elements.reserve(vectors.size());
  for (auto& v : vectors) elements.emplace_back(std::move(v));
  return Measurement(std::move(elements));
}

Measurement Measurement::general(std::vector<ComplexMatrix> matrices) {
  std::vector<Element> elements;
  elements.reserve(matrices.size());
  for (auto& m : matrices) elements.emplace_back(std::move(m));
  return Measurement(std::move(elements));
}

std::size_t Measurement::dim() const {
  if (elements_.empty()) return 0;
  return std::visit(Overloaded{[](const ComplexVector& v) { return v.dim(); },
                               [](const ComplexMatrix& m) { return m.rows(); }},
                    elements_.front());
}

bool Measurement::is_rank_one() const {
  return std::all_of(elements_.begin(), elements_.end(),
                     [](const Element& e) { return std::holds_alternative<ComplexVector>(e); });
}

ComplexMatrix Measurement::element_matrix(std::size_t b) const {
  return std::visit(Overloaded{[](const ComplexVector& v) {
                                 ComplexMatrix m(v.dim(), v.dim());
                                 for (std::size_t r = 0; r < v.dim(); ++r)
                                   for (std::size_t c = 0; c < v.dim(); ++c)
                                     m(r, c) = v[r] * std::conj(v[c]);
                                 return m;
                               },
                               [](const ComplexMatrix& m) { return m; }},
                    elements_.at(b));
}

double Measurement::probability(const ComplexVector& state, std::size_t b) const {
  return std::visit(Overloaded{[&](const ComplexVector& v) { return std::norm(inner_product(v, state)); },
                               [&](const ComplexMatrix& m) {
                                 return inner_product(state, m * state).real();
                               }},
                    elements_.at(b));
}

void Measurement::validate(double tol) const {
  if (elements_.empty()) fail("POVM outcome count", "measurement has no elements");
  const std::size_t n = dim();
  ComplexMatrix total(n, n);
  for (std::size_t b = 0; b < elements_.size(); ++b) {
    std::visit(Overloaded{[&](const ComplexVector& v) {
                            if (v.dim() != n) fail("POVM element dimension", "element " + std::to_string(b));
                            const double dev = std::abs(std::norm(v.norm()) - 1.0);
                            if (dev > tol) {
                              std::ostringstream msg;
                              msg << "rank-1 element " << b << " has |<e|e> - 1| = " << dev;
                              fail("POVM element normalization", msg.str());
                            }
                          },
                          [&](const ComplexMatrix& m) {
                            if (m.rows() != n || m.cols() != n) {
                              fail("POVM element dimension", "element " + std::to_string(b));
                            }
                            if (!is_hermitian(m, tol)) {
                              fail("POVM element Hermiticity", "element " + std::to_string(b));
                            }
                            if (!is_positive_semidefinite(m, tol)) {
                              fail("POVM element positivity", "element " + std::to_string(b));
                            }
                          }},
               elements_[b]);
    total += element_matrix(b);
  }
  const double dev = max_abs_diff(total, ComplexMatrix::identity(n));
  if (dev > tol) {
    std::ostringstream msg;
    msg << "max |Σ_b E_b - I| = " << dev << " exceeds tolerance " << tol;
    fail("POVM completeness", msg.str());
  }
}

void validate(const QuantumProtocol& p, double tol) {
  if (p.d < 2) fail("alphabet size", "d must be at least 2");
  if (p.dim == 0) fail("Hilbert-space dimension", "dim must be positive");
  const auto strings = static_cast<std::size_t>(p.d) * p.d;
  if (p.states.size() != strings) {
    fail("state count", "expected " + std::to_string(strings) + " states, got " +
                            std::to_string(p.states.size()));
  }
  for (std::size_t i = 0; i < strings; ++i) {
    const auto label = DitString::from_index(static_cast<int>(i), p.d).label();
    if (p.states[i].dim() != p.dim) fail("state dimension", "state " + label);
    const double dev = std::abs(std::norm(p.states[i].norm()) - 1.0);
    if (dev > tol) {
      std::ostringstream msg;
      msg << "state " << label << " has |<psi|psi> - 1| = " << dev;
      fail("state normalization", msg.str());
    }
  }
  for (int y = 1; y <= 2; ++y) {
    const auto& m = p.measurement(y);
    if (m.outcomes() != static_cast<std::size_t>(p.d)) {
      fail("POVM outcome count", "measurement " + std::to_string(y) + " has " +
                                     std::to_string(m.outcomes()) + " outcomes, expected d");
    }
    if (m.dim() != p.dim) fail("POVM element dimension", "measurement " + std::to_string(y));
    try {
      m.validate(tol);
    } catch (const ProtocolError& e) {
      throw ProtocolError(std::string(e.what()) + " (measurement " + std::to_string(y) + ")");
    }
  }
}

std::vector<double> born_probabilities(const ComplexVector& state, const Measurement& m) {
  if (state.dim() != m.dim()) {
    throw std::invalid_argument("born_probabilities: state and measurement dimensions differ");
  }
  std::vector<double> probs(m.outcomes());
  for (std::size_t b = 0; b < m.outcomes(); ++b) probs[b] = m.probability(state, b);
  return probs;
}

double success_probability_unchecked(const QuantumProtocol& p) {
  const int d = p.d;
  double total = 0.0;
  for (int i = 0; i < d * d; ++i) {
    const auto x = DitString::from_index(i, d);
    for (int y = 1; y <= 2; ++y) total += p.measurement(y).probability(p.states[i], x.dit(y));
  }
  return total / (2.0 * d * d);
}

double success_probability(const QuantumProtocol& p, double tol) {
  validate(p, tol);
  return success_probability_unchecked(p);
}

ParityReport check_parity_oblivious(const QuantumProtocol& p, double tol) {
  const auto table = parity_partitions(p.d);
  std::vector<ComplexMatrix> sums;
  sums.reserve(table.classes.size());
  for (const auto& cls : table.classes) {
    ComplexMatrix s(p.dim, p.dim);
    for (const auto& x : cls) {
      const auto& v = p.state(x);
      for (std::size_t r = 0; r < p.dim; ++r)
        for (std::size_t c = 0; c < p.dim; ++c) s(r, c) += v[r] * std::conj(v[c]);
    }
    sums.push_back(std::move(s));
  }
  ParityReport report;
  for (std::size_t a = 0; a < sums.size(); ++a)
    for (std::size_t b = a + 1; b < sums.size(); ++b)
      report.max_deviation = std::max(report.max_deviation, max_abs_diff(sums[a], sums[b]));
  report.oblivious = report.max_deviation <= tol;
  return report;
}

OverlapTable mabb_overlap_table(const QuantumProtocol& p) {
  OverlapTable table;
  const auto partitions = parity_partitions(p.d);
  for (std::size_t l = 0; l < partitions.classes.size(); ++l)
    for (const auto& x : partitions.classes[l]) {
      table.labels.push_back(x);
      table.partition.push_back(static_cast<int>(l));
    }
  const std::size_t n = table.labels.size();
  table.magnitudes.resize(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      table.magnitudes[r * n + c] = std::abs(inner_product(p.state(table.labels[r]), p.state(table.labels[c])));
  return table;
}

double violation_ratio(double quantum, const ExactProbability& classical) {
  if (classical.numerator() == 0) {
    throw std::invalid_argument("violation_ratio: classical value is zero");
  }
  return quantum / classical.value();
}

}  // namespace porac
