#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wpmep/errors.hpp"

namespace wpmep {

/// Prime field F_q with elements represented as 0..q-1.
class FieldSpec {
 public:
  static constexpr int kMaxPrime = 251;

  explicit FieldSpec(int q = 2) : q_(q) {
    if (q < 2 || !is_prime(q)) throw ValidationError("field size must be a prime, got " + std::to_string(q));
    if (q > kMaxPrime) throw ValidationError("field size above " + std::to_string(kMaxPrime) + " is not supported");
    inverse_.assign(q, 0);
    for (int a = 1; a < q; ++a)
      for (int b = 1; b < q; ++b)
        if (a * b % q == 1) inverse_[a] = b;
  }

  static bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  int q() const { return q_; }
  int add(int a, int b) const { return (a + b) % q_; }
  int sub(int a, int b) const { return (a - b + q_) % q_; }
  int neg(int a) const { return (q_ - a) % q_; }
  int mul(int a, int b) const { return a * b % q_; }
  int inv(int a) const {
    if (a == 0) throw DomainError("zero has no inverse");
    return inverse_[a];
  }
  int reduce(long long a) const {
    long long r = a % q_;
    return static_cast<int>(r < 0 ? r + q_ : r);
  }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.q_ == b.q_; }

 private:
  int q_;
  std::vector<int> inverse_;
};

/// Row vector over a prime field.
using Vec = std::vector<int>;

/// Dense matrix over a prime field, row-major. Vectors act on the left:
/// the image of a row vector v is v * M.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {}
  Matrix(int cols, const std::vector<Vec>& rows) : rows_(static_cast<int>(rows.size())), cols_(cols) {
    data_.reserve(static_cast<std::size_t>(rows_) * cols_);
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols) throw DomainError("matrix row has wrong length");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  int operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  Vec row(int r) const {
    auto first = data_.begin() + static_cast<std::ptrdiff_t>(r) * cols_;
    return Vec(first, first + cols_);
  }
  std::vector<Vec> row_list() const {
    std::vector<Vec> out;
    for (int r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
  }
  void set_row(int r, const Vec& v) {
    for (int c = 0; c < cols_; ++c) (*this)(r, c) = v.at(c);
  }
  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](int x) { return x == 0; });
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;
  friend auto operator<=>(const Matrix& a, const Matrix& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    return a.data_ <=> b.data_;
  }

  const std::vector<int>& data() const { return data_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> data_;
};

inline Matrix multiply(const FieldSpec& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix product shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      int x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(x, b(k, j)));
    }
  return out;
}

/// Row vector times matrix.
inline Vec multiply(const FieldSpec& f, const Vec& v, const Matrix& m) {
  if (static_cast<int>(v.size()) != m.rows()) throw DomainError("vector-matrix shape mismatch");
  Vec out(m.cols(), 0);
  for (int k = 0; k < m.rows(); ++k) {
    if (v[k] == 0) continue;
    for (int j = 0; j < m.cols(); ++j) out[j] = f.add(out[j], f.mul(v[k], m(k, j)));
  }
  return out;
}

inline Vec add(const FieldSpec& f, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DomainError("vector length mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
  return out;
}
inline Vec sub(const FieldSpec& f, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DomainError("vector length mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
  return out;
}
inline Vec scale(const FieldSpec& f, int s, const Vec& a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.mul(s, a[i]);
  return out;
}
inline int dot(const FieldSpec& f, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DomainError("vector length mismatch");
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}
inline bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

struct RowEchelon {
  Matrix matrix;            ///< nonzero rows only
  std::vector<int> pivots;  ///< pivot column of each row
};

/// Reduced row-echelon form; zero rows are dropped.
inline RowEchelon rref(const FieldSpec& f, Matrix m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    for (int j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
    int s = f.inv(m(r, c));
    for (int j = 0; j < m.cols(); ++j) m(r, j) = f.mul(s, m(r, j));
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      int t = m(i, c);
      for (int j = 0; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(t, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix out(r, m.cols());
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return {out, pivots};
}

inline int rank(const FieldSpec& f, const Matrix& m) { return rref(f, m).matrix.rows(); }

inline bool is_invertible(const FieldSpec& f, const Matrix& m) {
  return m.rows() == m.cols() && rank(f, m) == m.rows();
}

/// Inverse of a square matrix, or nullopt when singular.
inline std::optional<Matrix> inverse(const FieldSpec& f, const Matrix& m) {
  if (m.rows() != m.cols()) throw DomainError("inverse of a non-square matrix");
  const int n = m.rows();
  Matrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto red = rref(f, aug);
  if (red.matrix.rows() < n || red.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = red.matrix(i, n + j);
  return out;
}

/// Basis (as rows, in RREF) of {x : M x^T = 0}.
inline Matrix nullspace(const FieldSpec& f, const Matrix& m) {
  auto red = rref(f, m);
  const int n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (int p : red.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec x(n, 0);
    x[free] = 1;
    for (int r = 0; r < red.matrix.rows(); ++r) x[red.pivots[r]] = f.neg(red.matrix(r, free));
    basis.push_back(x);
  }
  return rref(f, Matrix(n, basis)).matrix;
}

/// Index of a vector in lexicographic order, first coordinate most significant.
inline std::uint32_t encode(const FieldSpec& f, const Vec& v) {
  std::uint32_t idx = 0;
  for (int x : v) idx = idx * static_cast<std::uint32_t>(f.q()) + static_cast<std::uint32_t>(x);
  return idx;
}
inline Vec decode(const FieldSpec& f, std::uint32_t idx, int length) {
  Vec v(length);
  for (int i = length - 1; i >= 0; --i) {
    v[i] = static_cast<int>(idx % f.q());
    idx /= f.q();
  }
  return v;
}

/// q^n, or nullopt if it exceeds limit.
inline std::optional<std::uint64_t> checked_power(int q, int n, std::uint64_t limit) {
  std::uint64_t out = 1;
  for (int i = 0; i < n; ++i) {
    if (out > limit / static_cast<std::uint64_t>(q)) return std::nullopt;
    out *= static_cast<std::uint64_t>(q);
  }
  return out;
}

/// Order of GL_n(F_q).
inline std::uint64_t general_linear_order(int q, int n) {
  std::uint64_t qn = 1;
  for (int i = 0; i < n; ++i) qn *= static_cast<std::uint64_t>(q);
  std::uint64_t out = 1, qi = 1;
  for (int i = 0; i < n; ++i) {
    out *= qn - qi;
    qi *= static_cast<std::uint64_t>(q);
  }
  return out;
}

/// Every invertible n x n matrix, in lexicographic order of entries.
inline std::vector<Matrix> all_invertible_matrices(const FieldSpec& f, int n, std::uint64_t max_count) {
  auto total = checked_power(f.q(), n * n, max_count * 64);
  if (!total) throw BoundExceeded("too many " + std::to_string(n) + "x" + std::to_string(n) + " matrices to scan");
  if (general_linear_order(f.q(), n) > max_count) throw BoundExceeded("GL_n(q) larger than the configured bound");
  std::vector<Matrix> out;
  for (std::uint64_t idx = 0; idx < *total; ++idx) {
    Vec entries = decode(f, static_cast<std::uint32_t>(idx), n * n);
    Matrix m(n, n);
    for (int i = 0; i < n * n; ++i) m(i / n, i % n) = entries[i];
    if (is_invertible(f, m)) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace wpmep
