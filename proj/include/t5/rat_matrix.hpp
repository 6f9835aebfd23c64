#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include "t5/rational.hpp"

namespace t5 {

/// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RatMatrix identity(std::size_t n);
  static RatMatrix zero(std::size_t rows, std::size_t cols) { return RatMatrix(rows, cols); }
  static RatMatrix diagonal(std::span<const Rational> d);
  static RatMatrix column(std::span<const Rational> v);
  static RatMatrix from_rows(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
  /// Outer product a * b^T.
  static RatMatrix outer(std::span<const Rational> a, std::span<const Rational> b);
  /// Stack blocks with equal column count.
  static RatMatrix vstack(std::span<const RatMatrix> blocks);
  static RatMatrix hstack(std::span<const RatMatrix> blocks);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  /// Bounds-checked access; throws ShapeError.
  const Rational& operator()(std::size_t r, std::size_t c) const;
  Rational& operator()(std::size_t r, std::size_t c);

  const std::vector<Rational>& entries() const { return data_; }

  RatMatrix transpose() const;
  RatMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const RatMatrix& b);
  std::vector<Rational> col_vector(std::size_t c) const;
  Rational trace() const;
  bool is_zero() const;
  bool is_symmetric() const;
  std::vector<double> to_doubles() const;

  RatMatrix& operator+=(const RatMatrix& o);
  RatMatrix& operator-=(const RatMatrix& o);
  RatMatrix& operator*=(const Rational& s);

  friend RatMatrix operator+(RatMatrix a, const RatMatrix& b) { return a += b; }
  friend RatMatrix operator-(RatMatrix a, const RatMatrix& b) { return a -= b; }
  friend RatMatrix operator-(RatMatrix a) { return a *= Rational(-1); }
  friend RatMatrix operator*(RatMatrix a, const Rational& s) { return a *= s; }
  friend RatMatrix operator*(const Rational& s, RatMatrix a) { return a *= s; }
  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

std::ostream& operator<<(std::ostream& os, const RatMatrix& m);

std::vector<Rational> operator*(const RatMatrix& a, std::span<const Rational> x);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);
/// Frobenius inner product of equally shaped matrices.
Rational frobenius(const RatMatrix& a, const RatMatrix& b);

// Exact kernel. Elimination runs on integers (rows are scaled by the lcm of
// their denominators) so determinant and rank use fraction-free Bareiss steps.

Rational determinant(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
RatMatrix adjugate(const RatMatrix& m);
/// Throws SingularMatrix when det = 0.
RatMatrix inverse(const RatMatrix& m);
/// Columns form a basis of ker(m).
RatMatrix nullspace(const RatMatrix& m);
/// Monic characteristic polynomial det(lambda I - m), coefficients from the
/// constant term up: c[0] + c[1] lambda + ... + c[n] lambda^n with c[n] = 1.
std::vector<Rational> char_poly(const RatMatrix& m);

/// Column-major vectorization of a 2x2 or 4x2 matrix.
RatMatrix vec(const RatMatrix& m);
/// Inverse of vec: a 4-vector becomes 2x2, an 8-vector becomes 4x2.
RatMatrix unvec(const RatMatrix& v);

}  // namespace t5
