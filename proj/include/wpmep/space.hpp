#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "wpmep/errors.hpp"
#include "wpmep/field.hpp"
#include "wpmep/label_set.hpp"
#include "wpmep/poset.hpp"

namespace wpmep {

/// Caps for every exhaustive enumeration. Exceeding one throws BoundExceeded.
struct Bounds {
  std::uint64_t max_vectors = std::uint64_t{1} << 16;  ///< |H|
  std::uint64_t max_codes = 200000;                    ///< subspaces of H
  std::uint64_t max_homs = std::uint64_t{1} << 16;     ///< linear maps C -> H
  std::uint64_t max_group = std::uint64_t{1} << 20;    ///< isometry group order
  std::uint64_t max_matrices = std::uint64_t{1} << 20; ///< raw matrix scans
  int max_aut_elements = 8;                            ///< |Omega| for Aut(P)
  int max_functional_elements = 12;                    ///< |Omega| for 2^Omega scans
  std::uint64_t max_lattice_points = 4096;             ///< q^k for subspace lattices

  /// Sets every count bound to n; element caps are left alone.
  static Bounds uniform(std::uint64_t n) {
    Bounds b;
    b.max_vectors = b.max_codes = b.max_homs = b.max_group = b.max_matrices = b.max_lattice_points = n;
    return b;
  }
};

/// H = prod_i F_q^{k_i}; coordinates i follow the poset element order and
/// their blocks are laid out consecutively.
class AlphabetSpec {
 public:
  AlphabetSpec(FieldSpec field, std::vector<int> dims) : field_(std::move(field)), dims_(std::move(dims)) {
    int offset = 0;
    for (int k : dims_) {
      if (k < 1) throw ValidationError("block dimensions must be at least 1, got " + std::to_string(k));
      offsets_.push_back(offset);
      offset += k;
    }
    length_ = offset;
  }
  static AlphabetSpec uniform(int q, int n, int k = 1) { return AlphabetSpec(FieldSpec(q), std::vector<int>(n, k)); }

  const FieldSpec& field() const { return field_; }
  int q() const { return field_.q(); }
  int coordinates() const { return static_cast<int>(dims_.size()); }
  int dim(int i) const { return dims_.at(i); }
  const std::vector<int>& dims() const { return dims_; }
  int offset(int i) const { return offsets_.at(i); }
  /// Total length N = sum of k_i.
  int length() const { return length_; }
  /// Coordinate owning position t of a flat vector.
  int coordinate_of(int t) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), t);
    return static_cast<int>(it - offsets_.begin()) - 1;
  }

  std::uint64_t vector_count(std::uint64_t limit) const {
    auto n = checked_power(q(), length_, limit);
    if (!n) throw BoundExceeded("|H| = " + std::to_string(q()) + "^" + std::to_string(length_) + " exceeds the vector bound");
    return *n;
  }

  Vec block(const Vec& beta, int i) const {
    check(beta);
    return Vec(beta.begin() + offset(i), beta.begin() + offset(i) + dim(i));
  }
  /// Embedding eta_i of a block into H.
  Vec embed(int i, const Vec& block) const {
    if (static_cast<int>(block.size()) != dim(i)) throw DomainError("block length mismatch");
    Vec out(length_, 0);
    std::copy(block.begin(), block.end(), out.begin() + offset(i));
    return out;
  }
  void check(const Vec& beta) const {
    if (static_cast<int>(beta.size()) != length_)
      throw DomainError("vector has length " + std::to_string(beta.size()) + ", expected " + std::to_string(length_));
  }

  friend bool operator==(const AlphabetSpec& a, const AlphabetSpec& b) {
    return a.field_ == b.field_ && a.dims_ == b.dims_;
  }

 private:
  FieldSpec field_;
  std::vector<int> dims_;
  std::vector<int> offsets_;
  int length_ = 0;
};

/// A poset, a weight function and an alphabet over the same coordinate set.
struct MetricSpace {
  MetricSpace(Poset p, WeightFunction w, AlphabetSpec s) : poset(std::move(p)), omega(std::move(w)), space(std::move(s)) {
    if (omega.size() != poset.size()) throw ValidationError("weight function size does not match the poset");
    if (space.coordinates() != poset.size()) throw ValidationError("dimension list size does not match the poset");
  }
  MetricSpace(Poset p, AlphabetSpec s) : MetricSpace(p, WeightFunction::uniform(p.size()), std::move(s)) {}

  Poset poset;
  WeightFunction omega;
  AlphabetSpec space;
};

/// supp(beta): coordinates with a nonzero block.
inline LabelSet support(const AlphabetSpec& s, const Vec& beta) {
  s.check(beta);
  LabelSet out;
  for (int t = 0; t < s.length(); ++t)
    if (beta[t] != 0) out.insert(s.coordinate_of(t));
  return out;
}

inline LabelSet p_support(const AlphabetSpec& s, const Poset& p, const Vec& beta) {
  return ideal_closure(p, support(s, beta));
}

inline Rational weight(const MetricSpace& m, const Vec& beta) {
  return m.omega.sum(p_support(m.space, m.poset, beta));
}
inline int p_weight(const AlphabetSpec& s, const Poset& p, const Vec& beta) { return p_support(s, p, beta).size(); }
inline Rational distance(const MetricSpace& m, const Vec& alpha, const Vec& beta) {
  return weight(m, sub(m.space.field(), beta, alpha));
}

/// Per-vector tables over all of H: P-support and weight class. Classes are
/// numbered by increasing weight, class 0 is weight zero.
class WeightIndex {
 public:
  WeightIndex(const MetricSpace& m, const Bounds& bounds = {}) : q_(m.space.q()), length_(m.space.length()) {
    const std::uint64_t n = m.space.vector_count(bounds.max_vectors);
    closure_.resize(n);
    std::vector<Rational> w(n);
    for (std::uint64_t v = 0; v < n; ++v) {
      Vec beta = decode(m.space.field(), static_cast<std::uint32_t>(v), length_);
      closure_[v] = p_support(m.space, m.poset, beta);
      w[v] = m.omega.sum(closure_[v]);
      weights_.push_back(w[v]);
    }
    std::sort(weights_.begin(), weights_.end());
    weights_.erase(std::unique(weights_.begin(), weights_.end()), weights_.end());
    class_.resize(n);
    for (std::uint64_t v = 0; v < n; ++v)
      class_[v] = static_cast<int>(std::lower_bound(weights_.begin(), weights_.end(), w[v]) - weights_.begin());
  }

  std::uint64_t size() const { return class_.size(); }
  int weight_class(std::uint32_t v) const { return class_[v]; }
  const Rational& weight(std::uint32_t v) const { return weights_[class_[v]]; }
  LabelSet closure(std::uint32_t v) const { return closure_[v]; }
  /// Distinct weights in increasing order.
  const std::vector<Rational>& weights() const { return weights_; }

 private:
  int q_;
  int length_;
  std::vector<LabelSet> closure_;
  std::vector<int> class_;
  std::vector<Rational> weights_;
};

/// Subspace of F_q^N stored by its reduced row-echelon generator matrix.
/// Equal codes have identical bases.
class LinearCode {
 public:
  LinearCode() = default;
  LinearCode(const FieldSpec& f, int length, const std::vector<Vec>& generators) : length_(length) {
    auto red = rref(f, Matrix(length, generators));
    basis_ = std::move(red.matrix);
    pivots_ = std::move(red.pivots);
  }
  LinearCode(const FieldSpec& f, const Matrix& generators) : length_(generators.cols()) {
    auto red = rref(f, generators);
    basis_ = std::move(red.matrix);
    pivots_ = std::move(red.pivots);
  }
  static LinearCode zero(int length) {
    LinearCode c;
    c.length_ = length;
    c.basis_ = Matrix(0, length);
    return c;
  }
  static LinearCode full(const FieldSpec& f, int length) { return LinearCode(f, Matrix::identity(length)); }

  int length() const { return length_; }
  int dimension() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  bool contains(const FieldSpec& f, Vec v) const {
    if (static_cast<int>(v.size()) != length_) throw DomainError("vector length does not match the code");
    for (int r = 0; r < dimension(); ++r) {
      int c = v[pivots_[r]];
      if (c == 0) continue;
      for (int j = 0; j < length_; ++j) v[j] = f.sub(v[j], f.mul(c, basis_(r, j)));
    }
    return is_zero(v);
  }
  bool is_subcode_of(const FieldSpec& f, const LinearCode& other) const {
    for (int r = 0; r < dimension(); ++r)
      if (!other.contains(f, basis_.row(r))) return false;
    return true;
  }
  /// Coordinates of a codeword in the RREF basis (its pivot entries).
  Vec coefficients(const Vec& codeword) const {
    Vec c;
    for (int p : pivots_) c.push_back(codeword.at(p));
    return c;
  }

  friend bool operator==(const LinearCode& a, const LinearCode& b) {
    return a.length_ == b.length_ && a.basis_ == b.basis_;
  }
  /// Canonical order: dimension, then lexicographic RREF.
  friend auto operator<=>(const LinearCode& a, const LinearCode& b) {
    if (auto c = a.length_ <=> b.length_; c != 0) return c;
    return a.basis_ <=> b.basis_;
  }

 private:
  int length_ = 0;
  Matrix basis_;
  std::vector<int> pivots_;
};

inline LinearCode code_sum(const FieldSpec& f, const LinearCode& a, const LinearCode& b) {
  auto rows = a.basis().row_list();
  auto more = b.basis().row_list();
  rows.insert(rows.end(), more.begin(), more.end());
  return LinearCode(f, a.length(), rows);
}

/// Dual code under the standard inner product.
inline LinearCode dual_code(const FieldSpec& f, const LinearCode& c) {
  if (c.dimension() == 0) return LinearCode::full(f, c.length());
  return LinearCode(f, nullspace(f, c.basis()));
}

inline LinearCode code_intersection(const FieldSpec& f, const LinearCode& a, const LinearCode& b) {
  return dual_code(f, code_sum(f, dual_code(f, a), dual_code(f, b)));
}

/// Image of a code under v -> v * M.
inline LinearCode code_image(const FieldSpec& f, const LinearCode& c, const Matrix& m) {
  std::vector<Vec> rows;
  for (int r = 0; r < c.dimension(); ++r) rows.push_back(multiply(f, c.basis().row(r), m));
  return LinearCode(f, m.cols(), rows);
}

/// delta(I): vectors supported inside I.
inline LinearCode delta_subspace(const AlphabetSpec& s, LabelSet coords) {
  if (!coords.is_subset_of(LabelSet::full(s.coordinates()))) throw DomainError("coordinate set outside the space");
  std::vector<Vec> rows;
  for (int i : coords.indices())
    for (int t = 0; t < s.dim(i); ++t) {
      Vec v(s.length(), 0);
      v[s.offset(i) + t] = 1;
      rows.push_back(v);
    }
  return LinearCode(s.field(), s.length(), rows);
}

/// Codewords c * basis for every coefficient vector c in lexicographic order.
inline std::vector<Vec> enumerate_codewords(const FieldSpec& f, const LinearCode& c,
                                            std::uint64_t max_vectors = std::uint64_t{1} << 16) {
  auto n = checked_power(f.q(), c.dimension(), max_vectors);
  if (!n) throw BoundExceeded("code has too many codewords to enumerate");
  std::vector<Vec> out;
  out.reserve(*n);
  for (std::uint64_t i = 0; i < *n; ++i)
    out.push_back(multiply(f, decode(f, static_cast<std::uint32_t>(i), c.dimension()), c.basis()));
  return out;
}

inline std::vector<std::uint32_t> codeword_indices(const FieldSpec& f, const LinearCode& c,
                                                   std::uint64_t max_vectors = std::uint64_t{1} << 16) {
  std::vector<std::uint32_t> out;
  for (const auto& v : enumerate_codewords(f, c, max_vectors)) out.push_back(encode(f, v));
  return out;
}

/// Number of d-dimensional subspaces of F_q^n.
inline std::uint64_t gaussian_binomial(int q, int n, int d) {
  if (d < 0 || d > n) return 0;
  // Product formula evaluated with exact integer division step by step.
  std::uint64_t num = 1, den = 1;
  for (int i = 0; i < d; ++i) {
    std::uint64_t a = 1, b = 1;
    for (int t = 0; t < n - i; ++t) a *= static_cast<std::uint64_t>(q);
    for (int t = 0; t < i + 1; ++t) b *= static_cast<std::uint64_t>(q);
    num *= a - 1;
    den *= b - 1;
    std::uint64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
  }
  return num / den;
}

inline std::uint64_t subspace_count(int q, int n) {
  std::uint64_t total = 0;
  for (int d = 0; d <= n; ++d) total += gaussian_binomial(q, n, d);
  return total;
}

/// Every subspace of F_q^N with dimension in [min_dim, max_dim], once each, in
/// canonical order (dimension, then lexicographic RREF).
inline std::vector<LinearCode> enumerate_codes(const FieldSpec& f, int length, const Bounds& bounds = {},
                                               int min_dim = 0, int max_dim = -1) {
  if (max_dim < 0 || max_dim > length) max_dim = length;
  if (!checked_power(f.q(), length, bounds.max_vectors)) throw BoundExceeded("ambient space exceeds the vector bound");
  std::uint64_t expected = 0;
  for (int d = min_dim; d <= max_dim; ++d) expected += gaussian_binomial(f.q(), length, d);
  if (expected > bounds.max_codes)
    throw BoundExceeded(std::to_string(expected) + " subspaces exceed the code bound");
  std::vector<LinearCode> out;
  out.reserve(expected);
  for (int d = min_dim; d <= max_dim; ++d) {
    if (d == 0) {
      out.push_back(LinearCode::zero(length));
      continue;
    }
    // Pivot sets in lexicographic order; free entries sit right of the pivot
    // in non-pivot columns.
    std::vector<int> pivots(d);
    std::iota(pivots.begin(), pivots.end(), 0);
    std::vector<LinearCode> level;
    while (true) {
      std::vector<std::pair<int, int>> free;
      for (int r = 0; r < d; ++r)
        for (int c = pivots[r] + 1; c < length; ++c)
          if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.emplace_back(r, c);
      auto fillings = *checked_power(f.q(), static_cast<int>(free.size()), ~std::uint64_t{0});
      for (std::uint64_t x = 0; x < fillings; ++x) {
        Matrix m(d, length);
        for (int r = 0; r < d; ++r) m(r, pivots[r]) = 1;
        std::uint64_t rest = x;
        for (auto it = free.rbegin(); it != free.rend(); ++it) {
          m(it->first, it->second) = static_cast<int>(rest % f.q());
          rest /= f.q();
        }
        level.emplace_back(f, m);
      }
      int i = d - 1;
      while (i >= 0 && pivots[i] == length - d + i) --i;
      if (i < 0) break;
      ++pivots[i];
      for (int j = i + 1; j < d; ++j) pivots[j] = pivots[j - 1] + 1;
    }
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

inline std::vector<LinearCode> enumerate_codes(const AlphabetSpec& s, const Bounds& bounds = {}) {
  return enumerate_codes(s.field(), s.length(), bounds);
}

/// Calls visit(images) for every linear map C -> F_q^N, given by the images
/// of the RREF basis rows (a dim C x N matrix), in lexicographic order.
inline void for_each_hom(const FieldSpec& f, const LinearCode& c, int target_length, const Bounds& bounds,
                         const std::function<void(const Matrix&)>& visit) {
  auto total = checked_power(f.q(), target_length * c.dimension(), bounds.max_homs);
  if (!total) throw BoundExceeded("too many linear maps from the code to enumerate");
  const int d = c.dimension();
  for (std::uint64_t x = 0; x < *total; ++x) {
    Vec entries = decode(f, static_cast<std::uint32_t>(x), d * target_length);
    Matrix m(d, target_length);
    for (int i = 0; i < d * target_length; ++i) m(i / target_length, i % target_length) = entries[i];
    visit(m);
  }
}

inline std::vector<Matrix> hom_enumerate(const FieldSpec& f, const LinearCode& c, int target_length,
                                         const Bounds& bounds = {}) {
  std::vector<Matrix> out;
  for_each_hom(f, c, target_length, bounds, [&](const Matrix& m) { out.push_back(m); });
  return out;
}

/// Image of a codeword under the map sending basis row r to images.row(r).
inline Vec apply_hom(const FieldSpec& f, const LinearCode& c, const Matrix& images, const Vec& codeword) {
  return multiply(f, c.coefficients(codeword), images);
}

}  // namespace wpmep
