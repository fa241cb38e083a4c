#pragma once

// Classical side of the two-dit parity-oblivious random access code:
// parity classes, deterministic strategies, the cardinality leak criterion,
// and exact exhaustive search for the optimal classical success probability.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace porac {

/// Two-dit input string x = x1 x2 over {0..d-1}.
struct DitString {
  int first = 0;
  int second = 0;

  int dit(int y) const { return y == 1 ? first : second; }
  /// Position in string index order 00, 01, ..., (d-1)(d-1).
  int index(int d) const { return first * d + second; }
  static DitString from_index(int index, int d) { return {index / d, index % d}; }
  int parity(int d) const { return (first + second) % d; }
  std::string label() const;

  friend auto operator<=>(const DitString&, const DitString&) = default;
};

/// Throws std::invalid_argument unless d >= 2.
void require_alphabet(int d);

/// The d classes P_l = { x : x1 + x2 = l mod d }. Members of each class are
/// listed with x1 ascending.
struct PartitionTable {
  int d = 0;
  std::vector<std::vector<DitString>> classes;

  int class_of(DitString x) const { return x.parity(d); }
};

PartitionTable parity_partitions(int d);

/// Deterministic strategy: encoding[x.index(d)] is the symbol sent for x;
/// decodings[y-1][symbol] is Bob's guess for x_y.
struct ClassicalStrategy {
  int d = 0;
  std::vector<int> encoding;
  std::array<std::vector<int>, 2> decodings;

  /// One past the largest symbol the encoding uses.
  int symbol_count() const;
};

/// Probability kept as a reduced fraction.
class ExactProbability {
 public:
  ExactProbability() = default;
  ExactProbability(std::uint64_t numerator, std::uint64_t denominator);

  std::uint64_t numerator() const { return num_; }
  std::uint64_t denominator() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  friend bool operator==(const ExactProbability&, const ExactProbability&) = default;
  friend std::strong_ordering operator<=>(const ExactProbability& a, const ExactProbability& b);

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

/// True when some used symbol class meets two parity classes with different
/// cardinalities, i.e. receiving that symbol shifts Bob's belief about x1+x2.
bool leaks_parity(const ClassicalStrategy& strategy);

/// (1/2d^2) Σ_{y,x} [decoding_y(encoding(x)) == x_y], exactly.
ExactProbability strategy_success(const ClassicalStrategy& strategy);

/// Completes `encoding` with majority-vote decodings (smallest guess on ties).
ClassicalStrategy optimal_decoding_for(const std::vector<int>& encoding, int d);

struct BruteForceOptions {
  bool allow_long = false;  ///< permit d >= 4 (d^(d^2) encodings)
  unsigned threads = 1;     ///< 0 means hardware concurrency
};

struct ClassicalOptimum {
  ExactProbability value;
  ClassicalStrategy strategy;  ///< first optimum in counter order
  std::uint64_t encodings_examined = 0;
  std::uint64_t encodings_admissible = 0;
};

/// Number of encodings onto at most d symbols, d^(d^2). Saturates at UINT64_MAX.
std::uint64_t encoding_space_size(int d);

/// Exhaustive optimum over deterministic strategies whose encodings use at
/// most d symbols. Encodings are base-d counters over the strings in index
/// order with string 00 as the most significant digit; the winner is the
/// smallest counter attaining the maximum, whatever the thread count.
/// Throws std::length_error for d >= 4 unless options.allow_long.
ClassicalOptimum brute_force_classical_bound(int d, bool parity_oblivious,
                                             BruteForceOptions options = {});

/// Variant of the search with an explicit symbol cap (encodings onto
/// {0..symbols-1}); used to check that the d-symbol cap is lossless.
ClassicalOptimum brute_force_with_symbols(int d, int symbols, bool parity_oblivious,
                                          BruteForceOptions options = {});

/// (d+1)/(2d).
ExactProbability noncontextual_bound(int d);

}  // namespace porac
