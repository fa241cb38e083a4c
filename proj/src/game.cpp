#include "porac/game.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace porac {

std::string DitString::label() const {
  return std::to_string(first) + std::to_string(second);
}

void require_alphabet(int d) {
  if (d < 2) {
    throw std::invalid_argument("alphabet size d must be at least 2, got " + std::to_string(d));
  }
}

PartitionTable parity_partitions(int d) {
  require_alphabet(d);
  PartitionTable table{d, std::vector<std::vector<DitString>>(d)};
  for (int x1 = 0; x1 < d; ++x1)
    for (int x2 = 0; x2 < d; ++x2) {
      const DitString x{x1, x2};
      table.classes[x.parity(d)].push_back(x);
    }
  return table;
}

int ClassicalStrategy::symbol_count() const {
  if (encoding.empty()) return 0;
  return *std::max_element(encoding.begin(), encoding.end()) + 1;
}

// ---------------------------------------------------------------------------
// ExactProbability

ExactProbability::ExactProbability(std::uint64_t numerator, std::uint64_t denominator) {
  if (denominator == 0) throw std::invalid_argument("ExactProbability: zero denominator");
  if (numerator > denominator) throw std::invalid_argument("ExactProbability: value exceeds 1");
  const std::uint64_t g = std::gcd(numerator, denominator);
  num_ = numerator / (g == 0 ? 1 : g);
  den_ = denominator / (g == 0 ? 1 : g);
  if (num_ == 0) den_ = 1;
}

std::string ExactProbability::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const ExactProbability& a, const ExactProbability& b) {
  // Values are <= 1 with small denominators in practice; 128-bit keeps it exact.
  const auto lhs = static_cast<unsigned __int128>(a.num_) * b.den_;
  const auto rhs = static_cast<unsigned __int128>(b.num_) * a.den_;
  return lhs <=> rhs;
}

// ---------------------------------------------------------------------------
// Strategies

namespace {

void require_total_encoding(const ClassicalStrategy& s) {
  require_alphabet(s.d);
  if (static_cast<int>(s.encoding.size()) != s.d * s.d) {
    throw std::invalid_argument("strategy encoding must assign a symbol to all d^2 strings");
  }
  for (int sym : s.encoding) {
    if (sym < 0) throw std::invalid_argument("strategy encoding uses a negative symbol");
  }
}

void require_total_decodings(const ClassicalStrategy& s) {
  require_total_encoding(s);
  const auto used = static_cast<std::size_t>(s.symbol_count());
  for (const auto& dec : s.decodings) {
    if (dec.size() < used) {
      throw std::invalid_argument("strategy decoding is not defined on every used symbol");
    }
  }
}

}  // namespace

bool leaks_parity(const ClassicalStrategy& strategy) {
  require_total_encoding(strategy);
  const int d = strategy.d;
  const int symbols = strategy.symbol_count();
  std::vector<int> counts(static_cast<std::size_t>(symbols) * d, 0);
  for (int i = 0; i < d * d; ++i) {
    const auto x = DitString::from_index(i, d);
    ++counts[static_cast<std::size_t>(strategy.encoding[i]) * d + x.parity(d)];
  }
  for (int j = 0; j < symbols; ++j) {
    const auto row = counts.begin() + static_cast<std::ptrdiff_t>(j) * d;
    if (std::all_of(row, row + d, [](int c) { return c == 0; })) continue;  // unused
    if (!std::all_of(row, row + d, [&](int c) { return c == *row; })) return true;
  }
  return false;
}

ExactProbability strategy_success(const ClassicalStrategy& strategy) {
  require_total_decodings(strategy);
  const int d = strategy.d;
  std::uint64_t hits = 0;
  for (int i = 0; i < d * d; ++i) {
    const auto x = DitString::from_index(i, d);
    const int sym = strategy.encoding[i];
    for (int y = 1; y <= 2; ++y) {
      if (strategy.decodings[y - 1][sym] == x.dit(y)) ++hits;
    }
  }
  return {hits, static_cast<std::uint64_t>(2 * d * d)};
}

ClassicalStrategy optimal_decoding_for(const std::vector<int>& encoding, int d) {
  ClassicalStrategy s{d, encoding, {}};
  require_total_encoding(s);
  const int symbols = s.symbol_count();
  for (int y = 1; y <= 2; ++y) {
    std::vector<int> votes(static_cast<std::size_t>(symbols) * d, 0);
    for (int i = 0; i < d * d; ++i) {
      ++votes[static_cast<std::size_t>(encoding[i]) * d + DitString::from_index(i, d).dit(y)];
    }
    auto& dec = s.decodings[y - 1];
    dec.resize(symbols);
    for (int j = 0; j < symbols; ++j) {
      const auto row = votes.begin() + static_cast<std::ptrdiff_t>(j) * d;
      dec[j] = static_cast<int>(std::max_element(row, row + d) - row);  // first max = smallest b
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Exhaustive search

namespace {

struct ChunkBest {
  int hits = -1;
  std::uint64_t counter = 0;
  std::uint64_t admissible = 0;
};

std::uint64_t checked_pow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r *= base;
  }
  return r;
}

// Digit i of the counter is the symbol of string i; string 0 is most significant.
std::vector<int> encoding_from_counter(std::uint64_t counter, int strings, int symbols) {
  std::vector<int> enc(strings);
  for (int i = strings - 1; i >= 0; --i) {
    enc[i] = static_cast<int>(counter % symbols);
    counter /= symbols;
  }
  return enc;
}

ChunkBest search_chunk(int d, int symbols, bool parity_oblivious, std::uint64_t begin,
                       std::uint64_t end) {
  ChunkBest best;
  if (begin >= end) return best;
  const int strings = d * d;
  std::vector<int> enc = encoding_from_counter(begin, strings, symbols);

  std::vector<int> first(strings), second(strings), parity(strings);
  for (int i = 0; i < strings; ++i) {
    const auto x = DitString::from_index(i, d);
    first[i] = x.first;
    second[i] = x.second;
    parity[i] = x.parity(d);
  }
  const auto cells = static_cast<std::size_t>(symbols) * d;
  std::vector<int> votes1(cells), votes2(cells), parity_counts(cells), used(symbols);

  for (std::uint64_t counter = begin; counter < end; ++counter) {
    std::fill(votes1.begin(), votes1.end(), 0);
    std::fill(votes2.begin(), votes2.end(), 0);
    std::fill(parity_counts.begin(), parity_counts.end(), 0);
    std::fill(used.begin(), used.end(), 0);
    for (int i = 0; i < strings; ++i) {
      const std::size_t base = static_cast<std::size_t>(enc[i]) * d;
      ++votes1[base + first[i]];
      ++votes2[base + second[i]];
      ++parity_counts[base + parity[i]];
      used[enc[i]] = 1;
    }

    bool admissible = true;
    if (parity_oblivious) {
      for (int j = 0; j < symbols && admissible; ++j) {
        if (!used[j]) continue;
        const std::size_t base = static_cast<std::size_t>(j) * d;
        for (int l = 1; l < d; ++l) {
          if (parity_counts[base + l] != parity_counts[base]) {
            admissible = false;
            break;
          }
        }
      }
    }

    if (admissible) {
      ++best.admissible;
      int hits = 0;
      for (int j = 0; j < symbols; ++j) {
        if (!used[j]) continue;
        const std::size_t base = static_cast<std::size_t>(j) * d;
        hits += *std::max_element(votes1.begin() + base, votes1.begin() + base + d);
        hits += *std::max_element(votes2.begin() + base, votes2.begin() + base + d);
      }
      if (hits > best.hits) {
        best.hits = hits;
        best.counter = counter;
      }
    }

    // Odometer increment, least significant digit = last string.
    for (int i = strings - 1; i >= 0; --i) {
      if (++enc[i] < symbols) break;
      enc[i] = 0;
    }
  }
  return best;
}

}  // namespace

std::uint64_t encoding_space_size(int d) {
  require_alphabet(d);
  return checked_pow(static_cast<std::uint64_t>(d), d * d);
}

ClassicalOptimum brute_force_with_symbols(int d, int symbols, bool parity_oblivious,
                                          BruteForceOptions options) {
  require_alphabet(d);
  if (symbols < 1 || symbols > d * d) {
    throw std::invalid_argument("symbol cap must lie in [1, d^2]");
  }
  const std::uint64_t total = checked_pow(static_cast<std::uint64_t>(symbols), d * d);
  if (total == std::numeric_limits<std::uint64_t>::max()) {
    throw std::length_error("encoding space does not fit in 64 bits");
  }

  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::max(1u, threads);
  if (total < 4096) threads = 1;

  std::vector<ChunkBest> results(threads);
  const std::uint64_t chunk = total / threads + 1;
  auto work = [&](unsigned t) {
    const std::uint64_t begin = std::min(total, chunk * t);
    const std::uint64_t end = std::min(total, begin + chunk);
    results[t] = search_chunk(d, symbols, parity_oblivious, begin, end);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  ChunkBest best;
  std::uint64_t admissible = 0;
  for (const auto& r : results) {  // chunks are in counter order, so strict > keeps the smallest
    admissible += r.admissible;
    if (r.hits > best.hits) best = r;
  }
  if (best.hits < 0) {
    throw std::logic_error("no admissible encoding found");  // constant encoding is always admissible
  }

  ClassicalOptimum out;
  out.strategy = optimal_decoding_for(encoding_from_counter(best.counter, d * d, symbols), d);
  out.value = ExactProbability(static_cast<std::uint64_t>(best.hits),
                               static_cast<std::uint64_t>(2 * d * d));
  out.encodings_examined = total;
  out.encodings_admissible = admissible;
  return out;
}

ClassicalOptimum brute_force_classical_bound(int d, bool parity_oblivious,
                                             BruteForceOptions options) {
  require_alphabet(d);
  if (d >= 5 || (d == 4 && !options.allow_long)) {
    std::ostringstream msg;
    msg << "exhaustive search at d=" << d << " covers " << d << "^" << d * d << " = ";
    const auto size = encoding_space_size(d);
    if (size == std::numeric_limits<std::uint64_t>::max()) {
      msg << "more than 1.8e19";
    } else {
      msg << size;
    }
    msg << " encodings; ";
    msg << (d == 4 ? "pass the long-running flag to proceed" : "only d <= 4 is supported");
    throw std::length_error(msg.str());
  }
  return brute_force_with_symbols(d, d, parity_oblivious, options);
}

ExactProbability noncontextual_bound(int d) {
  require_alphabet(d);
  return {static_cast<std::uint64_t>(d + 1), static_cast<std::uint64_t>(2 * d)};
}

}  // namespace porac
