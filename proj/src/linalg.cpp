#include "porac/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace porac {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw std::invalid_argument(msg.str());
  }
}

// Subtracts from v its projection onto each vector in q (assumed orthonormal).
void project_out(ComplexVector& v, std::span<const ComplexVector> q) {
  for (const auto& e : q) {
    v -= inner_product(e, v) * e;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexVector

ComplexVector ComplexVector::basis(std::size_t dim, std::size_t k) {
  if (k >= dim) throw std::out_of_range("ComplexVector::basis: index out of range");
  ComplexVector v(dim);
  v[k] = 1.0;
  return v;
}

double ComplexVector::norm() const {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

ComplexVector ComplexVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("ComplexVector::normalized: zero vector");
  ComplexVector out = *this;
  out *= 1.0 / n;
  return out;
}

ComplexVector& ComplexVector::operator+=(const ComplexVector& other) {
  require_same_dim(dim(), other.dim(), "ComplexVector +=");
  for (std::size_t i = 0; i < dim(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexVector& ComplexVector::operator-=(const ComplexVector& other) {
  require_same_dim(dim(), other.dim(), "ComplexVector -=");
  for (std::size_t i = 0; i < dim(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexVector& ComplexVector::operator*=(Complex s) {
  for (auto& z : entries_) z *= s;
  return *this;
}

ComplexVector operator+(ComplexVector a, const ComplexVector& b) { return a += b; }
ComplexVector operator-(ComplexVector a, const ComplexVector& b) { return a -= b; }
ComplexVector operator*(Complex s, ComplexVector v) { return v *= s; }

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_columns(std::span<const ComplexVector> columns) {
  if (columns.empty()) return {};
  const std::size_t rows = columns.front().dim();
  ComplexMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

ComplexVector ComplexMatrix::column(std::size_t c) const {
  ComplexVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void ComplexMatrix::set_column(std::size_t c, const ComplexVector& v) {
  require_same_dim(rows_, v.dim(), "ComplexMatrix::set_column");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(rows_, other.rows_, "ComplexMatrix +=");
  require_same_dim(cols_, other.cols_, "ComplexMatrix +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(rows_, other.rows_, "ComplexMatrix -=");
  require_same_dim(cols_, other.cols_, "ComplexMatrix -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.cols(), b.rows(), "ComplexMatrix *");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& v) {
  require_same_dim(a.cols(), v.dim(), "ComplexMatrix * ComplexVector");
  ComplexVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
  return out;
}

// ---------------------------------------------------------------------------
// Free functions

Complex inner_product(const ComplexVector& a, const ComplexVector& b) {
  require_same_dim(a.dim(), b.dim(), "inner_product");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

ComplexMatrix outer_product(const ComplexVector& v, double tol) {
  const double deviation = std::abs(std::norm(v.norm()) - 1.0);
  if (deviation > tol) {
    std::ostringstream msg;
    msg << "outer_product: vector not normalized, |<v|v> - 1| = " << deviation;
    throw std::invalid_argument(msg.str());
  }
  ComplexMatrix m(v.dim(), v.dim());
  for (std::size_t r = 0; r < v.dim(); ++r)
    for (std::size_t c = 0; c < v.dim(); ++c) m(r, c) = v[r] * std::conj(v[c]);
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.rows(), b.rows(), "max_abs_diff");
  require_same_dim(a.cols(), b.cols(), "max_abs_diff");
  double worst = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
  return worst;
}

double unitarity_deviation(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("unitarity_deviation: matrix not square");
  const auto id = ComplexMatrix::identity(u.rows());
  const auto ud = u.adjoint();
  return std::max(max_abs_diff(ud * u, id), max_abs_diff(u * ud, id));
}

double hermiticity_deviation(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermiticity_deviation: matrix not square");
  return max_abs_diff(m, m.adjoint());
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  return u.rows() == u.cols() && unitarity_deviation(u) <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && hermiticity_deviation(m) <= tol;
}

bool is_positive_semidefinite(const ComplexMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  const std::size_t n = m.rows();
  // Cholesky on the Hermitian part shifted by tol: succeeds iff lambda_min > -tol.
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = 0.5 * (m(j, j) + std::conj(m(j, j))).real() + tol;
    for (std::size_t k = 0; k < j; ++k) diag -= std::norm(l(j, k));
    if (!(diag > 0.0)) return false;
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = 0.5 * (m(i, j) + std::conj(m(j, i)));
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return true;
}

ComplexMatrix qr_retract(const ComplexMatrix& m) {
  std::vector<ComplexVector> q;
  q.reserve(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    ComplexVector v = m.column(c);
    const double original = v.norm();
    project_out(v, q);
    project_out(v, q);
    const double n = v.norm();
    if (!(n > 1e-12 * std::max(original, 1.0))) {
      throw std::domain_error("qr_retract: columns are numerically dependent");
    }
    v *= 1.0 / n;
    q.push_back(std::move(v));
  }
  return ComplexMatrix::from_columns(q);
}

std::vector<ComplexVector> orthonormal_completion(std::span<const ComplexVector> partial,
                                                  std::size_t dim) {
  if (partial.size() >= dim) {
    throw std::invalid_argument("orthonormal_completion: partial set already spans the space");
  }
  std::vector<ComplexVector> span_basis;
  span_basis.reserve(dim);
  for (const auto& p : partial) {
    require_same_dim(p.dim(), dim, "orthonormal_completion");
    ComplexVector v = p;
    project_out(v, span_basis);
    project_out(v, span_basis);
    if (v.norm() <= 1e-9 * std::max(p.norm(), 1.0)) {
      throw std::invalid_argument("orthonormal_completion: input vectors are linearly dependent");
    }
    span_basis.push_back(v.normalized());
  }

  std::vector<ComplexVector> added;
  for (std::size_t k = 0; k < dim && span_basis.size() < dim; ++k) {
    ComplexVector v = ComplexVector::basis(dim, k);
    project_out(v, span_basis);
    project_out(v, span_basis);
    if (v.norm() <= 1e-6) continue;
    v *= 1.0 / v.norm();
    span_basis.push_back(v);
    added.push_back(std::move(v));
  }
  return added;
}

// ---------------------------------------------------------------------------
// Rng

std::uint64_t Rng::next_u64() {
  ++counter_;
  return mix64(seed_ + counter_ * kGoldenGamma);
}

double Rng::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Rng Rng::child(std::uint64_t stream) const {
  return Rng(seed_ ^ mix64(stream + kGoldenGamma));
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  if (dim == 0) throw std::invalid_argument("random_unitary: dimension must be positive");
  ComplexMatrix g(dim, dim);
  const double scale = std::sqrt(0.5);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) g(r, c) = Complex(rng.normal(), rng.normal()) * scale;
  return qr_retract(g);
}

}  // namespace porac
