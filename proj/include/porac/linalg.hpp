#pragma once

// Dense complex vectors and matrices sized for d-level protocols (d <= ~16).
// Everything here is double precision; exact arithmetic lives in game.hpp.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace porac {

using Complex = std::complex<double>;

/// Tolerance for objects built from closed forms.
inline constexpr double kExactTol = 1e-9;
/// Tolerance for objects parsed from 4-5 digit printed decimals.
inline constexpr double kPrintedTol = 5e-3;

class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t dim) : entries_(dim) {}
  ComplexVector(std::initializer_list<Complex> entries) : entries_(entries) {}
  explicit ComplexVector(std::vector<Complex> entries) : entries_(std::move(entries)) {}

  static ComplexVector basis(std::size_t dim, std::size_t k);

  std::size_t dim() const { return entries_.size(); }
  Complex& operator[](std::size_t i) { return entries_[i]; }
  const Complex& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const Complex> entries() const { return entries_; }

  double norm() const;
  ComplexVector normalized() const;

  ComplexVector& operator+=(const ComplexVector& other);
  ComplexVector& operator-=(const ComplexVector& other);
  ComplexVector& operator*=(Complex s);

  friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

 private:
  std::vector<Complex> entries_;
};

ComplexVector operator+(ComplexVector a, const ComplexVector& b);
ComplexVector operator-(ComplexVector a, const ComplexVector& b);
ComplexVector operator*(Complex s, ComplexVector v);

/// Row-major dense matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix from_columns(std::span<const ComplexVector> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ComplexVector column(std::size_t c) const;
  void set_column(std::size_t c, const ComplexVector& v);

  ComplexMatrix adjoint() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& v);

/// Σ conj(a_i) b_i. Throws std::invalid_argument on dimension mismatch.
Complex inner_product(const ComplexVector& a, const ComplexVector& b);

/// |v><v| for a normalized v; throws if |<v|v> - 1| > tol.
ComplexMatrix outer_product(const ComplexVector& v, double tol = kExactTol);

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// max(|U†U - I|, |UU† - I|), entrywise.
double unitarity_deviation(const ComplexMatrix& u);
double hermiticity_deviation(const ComplexMatrix& m);

bool is_unitary(const ComplexMatrix& u, double tol = kExactTol);
bool is_hermitian(const ComplexMatrix& m, double tol = kExactTol);

/// True when the Hermitian m has no eigenvalue below -tol (Cholesky of m + tol·I).
bool is_positive_semidefinite(const ComplexMatrix& m, double tol = kExactTol);

/// Q factor of the thin QR decomposition with real positive R diagonal,
/// computed by twice-iterated modified Gram-Schmidt. This is the retraction
/// used everywhere a matrix has to be pulled back onto the unitary group.
/// Throws std::domain_error if the columns are numerically dependent.
ComplexMatrix qr_retract(const ComplexMatrix& m);

/// Extends `partial` (linearly independent, fewer than dim vectors) to an
/// orthonormal basis of C^dim. Candidates are the canonical basis vectors
/// e_0, e_1, ... in index order, Gram-Schmidt orthogonalized against the span
/// built so far. Returns only the new vectors.
std::vector<ComplexVector> orthonormal_completion(std::span<const ComplexVector> partial,
                                                  std::size_t dim);

/// Counter-based SplitMix64 stream. Same seed, same draws, on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64();
  /// Uniform in (0, 1].
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();

  /// Independent stream for parallel worker `stream`:
  /// seed ^ mix64(stream + golden_gamma).
  Rng child(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Haar-random unitary: QR of a complex Ginibre matrix with R's diagonal made
/// real positive (which Gram-Schmidt does by construction).
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);

}  // namespace porac
