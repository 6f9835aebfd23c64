#include "t5/rat_matrix.hpp"

#include <ostream>
#include <string>
#include <utility>

#include "t5/errors.hpp"

namespace t5 {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeError("RatMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

RatMatrix RatMatrix::diagonal(std::span<const Rational> d) {
  RatMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.data_[i * d.size() + i] = d[i];
  return m;
}

RatMatrix RatMatrix::column(std::span<const Rational> v) {
  return from_rows(v.size(), 1, std::vector<Rational>(v.begin(), v.end()));
}

RatMatrix RatMatrix::from_rows(std::size_t rows, std::size_t cols, std::vector<Rational> entries) {
  if (entries.size() != rows * cols) throw ShapeError("RatMatrix: entry count does not match shape");
  RatMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.data_ = std::move(entries);
  return m;
}

RatMatrix RatMatrix::outer(std::span<const Rational> a, std::span<const Rational> b) {
  RatMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m.data_[i * b.size() + j] = a[i] * b[j];
  return m;
}

RatMatrix RatMatrix::vstack(std::span<const RatMatrix> blocks) {
  if (blocks.empty()) return {};
  const std::size_t nc = blocks.front().cols();
  std::size_t nr = 0;
  for (const auto& b : blocks) {
    if (b.cols() != nc) throw ShapeError("vstack: column mismatch");
    nr += b.rows();
  }
  RatMatrix m(nr, nc);
  std::size_t r = 0;
  for (const auto& b : blocks) {
    m.set_block(r, 0, b);
    r += b.rows();
  }
  return m;
}

RatMatrix RatMatrix::hstack(std::span<const RatMatrix> blocks) {
  if (blocks.empty()) return {};
  const std::size_t nr = blocks.front().rows();
  std::size_t nc = 0;
  for (const auto& b : blocks) {
    if (b.rows() != nr) throw ShapeError("hstack: row mismatch");
    nc += b.cols();
  }
  RatMatrix m(nr, nc);
  std::size_t c = 0;
  for (const auto& b : blocks) {
    m.set_block(0, c, b);
    c += b.cols();
  }
  return m;
}

const Rational& RatMatrix::operator()(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_)
    throw ShapeError("RatMatrix index (" + std::to_string(r) + "," + std::to_string(c) + ") out of range");
  return data_[r * cols_ + c];
}

Rational& RatMatrix::operator()(std::size_t r, std::size_t c) {
  if (r >= rows_ || c >= cols_)
    throw ShapeError("RatMatrix index (" + std::to_string(r) + "," + std::to_string(c) + ") out of range");
  return data_[r * cols_ + c];
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
  return t;
}

RatMatrix RatMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeError("block out of range");
  RatMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b.data_[i * nc + j] = data_[(r0 + i) * cols_ + c0 + j];
  return b;
}

void RatMatrix::set_block(std::size_t r0, std::size_t c0, const RatMatrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw ShapeError("set_block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) data_[(r0 + i) * cols_ + c0 + j] = b.data_[i * b.cols_ + j];
}

std::vector<Rational> RatMatrix::col_vector(std::size_t c) const {
  if (c >= cols_) throw ShapeError("column out of range");
  std::vector<Rational> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = data_[i * cols_ + c];
  return v;
}

Rational RatMatrix::trace() const {
  if (!square()) throw ShapeError("trace of non-square matrix");
  Rational t;
  for (std::size_t i = 0; i < rows_; ++i) t += data_[i * cols_ + i];
  return t;
}

bool RatMatrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool RatMatrix::is_symmetric() const { return square() && *this == transpose(); }

std::vector<double> RatMatrix::to_doubles() const {
  std::vector<double> out;
  out.reserve(data_.size());
  for (const auto& x : data_) out.push_back(x.to_double());
  return out;
}

RatMatrix& RatMatrix::operator+=(const RatMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix sum: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

RatMatrix& RatMatrix::operator-=(const RatMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix difference: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

RatMatrix& RatMatrix::operator*=(const Rational& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw ShapeError("matrix product: inner dimension mismatch");
  RatMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a.data_[i * a.cols_ + k];
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Rational& bkj = b.data_[k * b.cols_ + j];
        if (!bkj.is_zero()) c.data_[i * b.cols_ + j] += aik * bkj;
      }
    }
  return c;
}

std::ostream& operator<<(std::ostream& os, const RatMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
  }
  return os << ']';
}

std::vector<Rational> operator*(const RatMatrix& a, std::span<const Rational> x) {
  if (a.cols() != x.size()) throw ShapeError("matrix-vector product: dimension mismatch");
  std::vector<Rational> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw ShapeError("dot: length mismatch");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational frobenius(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("frobenius: shape mismatch");
  return dot(a.entries(), b.entries());
}

namespace {

using IntRows = std::vector<std::vector<mpz_class>>;

// Scales every row to integers; returns the product of the row scale factors.
mpz_class integer_rows(const RatMatrix& m, IntRows& out) {
  out.assign(m.rows(), std::vector<mpz_class>(m.cols()));
  mpz_class scale = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).raw().get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const mpq_class& q = m(i, j).raw();
      out[i][j] = q.get_num() * (l / q.get_den());
    }
    scale *= l;
  }
  return scale;
}

// Fraction-free Bareiss elimination to row echelon form. Returns the rank;
// `sign` tracks row swaps and `last_pivot` the final leading minor.
std::size_t bareiss(IntRows& a, std::size_t cols, int& sign, mpz_class& last_pivot) {
  const std::size_t rows = a.size();
  sign = 1;
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      std::swap(a[piv], a[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  last_pivot = prev;
  return r;
}

}  // namespace

Rational determinant(const RatMatrix& m) {
  if (!m.square()) throw ShapeError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntRows a;
  const mpz_class scale = integer_rows(m, a);
  int sign = 1;
  mpz_class last;
  // A skipped column means a zero column in the remaining block, so rank < n.
  if (bareiss(a, n, sign, last) < n || a[n - 1][n - 1] == 0) return 0;
  return Rational(mpq_class(sign * a[n - 1][n - 1], scale));
}

std::size_t rank(const RatMatrix& m) {
  if (m.empty()) return 0;
  IntRows a;
  integer_rows(m, a);
  int sign = 1;
  mpz_class last;
  return bareiss(a, m.cols(), sign, last);
}

RatMatrix inverse(const RatMatrix& m) {
  if (!m.square()) throw ShapeError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) throw SingularMatrix("inverse: matrix is singular");
    std::swap(a[piv], a[c]);
    const Rational p = a[c][c].inv();
    for (std::size_t j = c; j < 2 * n; ++j) a[c][j] *= p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c].is_zero()) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < 2 * n; ++j)
        if (!a[c][j].is_zero()) a[i][j] -= f * a[c][j];
    }
  }
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = a[i][n + j];
  return inv;
}

RatMatrix adjugate(const RatMatrix& m) {
  if (!m.square()) throw ShapeError("adjugate of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return {};
  if (n == 1) return RatMatrix{{Rational(1)}};
  const Rational d = determinant(m);
  if (!d.is_zero()) return d * inverse(m);
  // Singular: cofactor expansion, adj(m)(j,i) = (-1)^(i+j) det(minor_ij).
  RatMatrix adj(n, n);
  RatMatrix minor(n - 1, n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = m(r, c);
        }
        ++mr;
      }
      Rational cof = determinant(minor);
      if ((i + j) % 2) cof = -cof;
      adj(j, i) = cof;
    }
  return adj;
}

RatMatrix nullspace(const RatMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const Rational p = a[r][c].inv();
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0, k = 0; c < cols; ++c) {
    if (k < pivots.size() && pivots[k] == c) {
      ++k;
      continue;
    }
    free_cols.push_back(c);
  }
  RatMatrix basis(cols, free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    basis(free_cols[f], f) = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) basis(pivots[k], f) = -a[k][free_cols[f]];
  }
  return basis;
}

std::vector<Rational> char_poly(const RatMatrix& m) {
  if (!m.square()) throw ShapeError("char_poly of non-square matrix");
  // Faddeev-LeVerrier: N_k = m N_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(m N_k)/k.
  const std::size_t n = m.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  RatMatrix nk = RatMatrix::zero(n, n);
  const RatMatrix id = RatMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    nk = m * nk + c[n - k + 1] * id;
    c[n - k] = -(m * nk).trace() / Rational(static_cast<long>(k));
  }
  return c;
}

RatMatrix vec(const RatMatrix& m) {
  if (m.cols() != 2 || (m.rows() != 2 && m.rows() != 4)) throw ShapeError("vec: expected a 2x2 or 4x2 matrix");
  RatMatrix v(m.rows() * 2, 1);
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) v(c * m.rows() + r, 0) = m(r, c);
  return v;
}

RatMatrix unvec(const RatMatrix& v) {
  if (v.cols() != 1 || (v.rows() != 4 && v.rows() != 8)) throw ShapeError("unvec: expected a 4- or 8-vector");
  const std::size_t nr = v.rows() / 2;
  RatMatrix m(nr, 2);
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t r = 0; r < nr; ++r) m(r, c) = v(c * nr + r, 0);
  return m;
}

}  // namespace t5
