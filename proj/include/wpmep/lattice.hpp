#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wpmep/errors.hpp"
#include "wpmep/space.hpp"

namespace wpmep {

/// Subset of a finite ground set {0, ..., n-1}, stored as a bitset.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(int universe) : universe_(universe), words_((universe + 63) / 64, 0) {}
  PointSet(int universe, const std::vector<int>& points) : PointSet(universe) {
    for (int x : points) insert(x);
  }
  static PointSet full(int universe) {
    PointSet s(universe);
    for (int x = 0; x < universe; ++x) s.insert(x);
    return s;
  }

  int universe() const { return universe_; }
  bool contains(int x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
  void insert(int x) {
    if (x < 0 || x >= universe_) throw DomainError("point " + std::to_string(x) + " outside the ground set");
    words_[x >> 6] |= std::uint64_t{1} << (x & 63);
  }
  int size() const {
    int n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
  }
  bool empty() const { return size() == 0; }
  bool is_subset_of(const PointSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  std::vector<int> elements() const {
    std::vector<int> out;
    for (int x = 0; x < universe_; ++x)
      if (contains(x)) out.push_back(x);
    return out;
  }
  friend PointSet operator&(PointSet a, const PointSet& b) {
    for (std::size_t i = 0; i < a.words_.size(); ++i) a.words_[i] &= b.words_[i];
    return a;
  }
  friend PointSet operator|(PointSet a, const PointSet& b) {
    for (std::size_t i = 0; i < a.words_.size(); ++i) a.words_[i] |= b.words_[i];
    return a;
  }
  friend bool operator==(const PointSet& a, const PointSet& b) = default;
  /// Size first; equal sizes compare their sorted element lists.
  friend std::strong_ordering operator<=>(const PointSet& a, const PointSet& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      std::uint64_t diff = a.words_[i] ^ b.words_[i];
      if (diff == 0) continue;
      std::uint64_t low = diff & (~diff + 1);
      return (a.words_[i] & low) ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

 private:
  int universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Intersection-closed family of subsets of X containing X, in canonical order.
class FiniteLattice {
 public:
  FiniteLattice(int ground, std::vector<PointSet> members) : ground_(ground) {
    for (const auto& m : members)
      if (m.universe() != ground) throw ValidationError("member over a different ground set");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    members_ = std::move(members);
    if (members_.empty() || members_.back() != PointSet::full(ground))
      throw ValidationError("the ground set must be a member");
    for (std::size_t a = 0; a < members_.size(); ++a)
      for (std::size_t b = a + 1; b < members_.size(); ++b)
        if (!std::binary_search(members_.begin(), members_.end(), members_[a] & members_[b]))
          throw ValidationError("family is not closed under intersection (members " + std::to_string(a) + " and " +
                                std::to_string(b) + ")");
    below_.resize(members_.size());
    for (std::size_t y = 0; y < members_.size(); ++y)
      for (std::size_t u = 0; u <= y; ++u)
        if (members_[u].is_subset_of(members_[y])) below_[y].push_back(static_cast<int>(u));
  }

  /// Closes an arbitrary family under intersection and adds X.
  static FiniteLattice closure_of(int ground, std::vector<PointSet> family) {
    family.push_back(PointSet::full(ground));
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
    for (bool grew = true; grew;) {
      grew = false;
      const std::size_t n = family.size();
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
          auto c = family[a] & family[b];
          if (!std::binary_search(family.begin(), family.begin() + static_cast<std::ptrdiff_t>(n), c) &&
              std::find(family.begin() + static_cast<std::ptrdiff_t>(n), family.end(), c) == family.end()) {
            family.push_back(c);
            grew = true;
          }
        }
      std::sort(family.begin(), family.end());
      family.erase(std::unique(family.begin(), family.end()), family.end());
    }
    return FiniteLattice(ground, std::move(family));
  }

  int ground() const { return ground_; }
  int size() const { return static_cast<int>(members_.size()); }
  const PointSet& member(int i) const { return members_.at(i); }
  const std::vector<PointSet>& members() const { return members_; }
  int index_of(const PointSet& s) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), s);
    if (it == members_.end() || *it != s) throw DomainError("not a member of the lattice");
    return static_cast<int>(it - members_.begin());
  }
  bool is_member(const PointSet& s) const { return std::binary_search(members_.begin(), members_.end(), s); }
  /// Indices of members contained in member y, in canonical order (y last).
  const std::vector<int>& below(int y) const { return below_.at(y); }
  int top() const { return size() - 1; }
  bool has_empty_member() const { return members_.front().empty(); }

 private:
  int ground_;
  std::vector<PointSet> members_;
  std::vector<std::vector<int>> below_;
};

/// Smallest member containing a.
inline int lattice_closure(const FiniteLattice& l, const PointSet& a) {
  if (a.universe() != l.ground()) throw DomainError("subset over a different ground set");
  PointSet acc = PointSet::full(l.ground());
  for (const auto& m : l.members())
    if (a.is_subset_of(m)) acc = acc & m;
  return l.index_of(acc);
}

inline int bottom(const FiniteLattice& l) { return lattice_closure(l, PointSet(l.ground())); }

/// Closure index of every singleton {x}.
inline std::vector<int> singleton_closures(const FiniteLattice& l) {
  std::vector<int> out(l.ground());
  for (int x = 0; x < l.ground(); ++x) out[x] = lattice_closure(l, PointSet(l.ground(), {x}));
  return out;
}

/// Members that are not the closure of any single point.
inline std::vector<int> non_principal_members(const FiniteLattice& l) {
  auto sc = singleton_closures(l);
  std::vector<int> out;
  for (int y = 0; y < l.size(); ++y)
    if (std::find(sc.begin(), sc.end(), y) == sc.end()) out.push_back(y);
  return out;
}

/// Moebius function of a lattice, one column mu(., Y) at a time, memoized.
class MoebiusTable {
 public:
  explicit MoebiusTable(const FiniteLattice& l) : lattice_(&l), columns_(l.size()) {}

  /// mu(u, y); zero unless member u is contained in member y.
  std::int64_t operator()(int u, int y) const {
    const auto& col = column(y);
    const auto& b = lattice_->below(y);
    auto it = std::lower_bound(b.begin(), b.end(), u);
    return it != b.end() && *it == u ? col[static_cast<std::size_t>(it - b.begin())] : 0;
  }

  /// Values aligned with lattice.below(y).
  const std::vector<std::int64_t>& column(int y) const {
    auto& col = columns_.at(y);
    if (col) return *col;
    const auto& b = lattice_->below(y);
    std::vector<std::int64_t> mu(b.size(), 0);
    mu.back() = 1;
    // Larger members come later in canonical order, so fill from the top down.
    for (int a = static_cast<int>(b.size()) - 2; a >= 0; --a) {
      std::int64_t s = 0;
      const auto& ua = lattice_->member(b[a]);
      for (std::size_t c = a + 1; c < b.size(); ++c)
        if (ua.is_subset_of(lattice_->member(b[c]))) s += mu[c];
      mu[a] = -s;
    }
    col = std::move(mu);
    return *col;
  }

  const FiniteLattice& lattice() const { return *lattice_; }

 private:
  const FiniteLattice* lattice_;
  mutable std::vector<std::optional<std::vector<std::int64_t>>> columns_;
};

inline MoebiusTable moebius(const FiniteLattice& l) { return MoebiusTable(l); }

/// Half the total absolute Moebius mass below member y.
inline std::int64_t half_moebius_mass(const MoebiusTable& mu, int y) {
  std::int64_t total = 0;
  for (auto v : mu.column(y)) total += v < 0 ? -v : v;
  return total / 2;
}

struct IndicatorIdentity {
  bool identity = true;       ///< sum of mu(U,Y) 1_U equals 1_E pointwise
  bool non_principal = true;  ///< Y is not the closure of a point
  bool split_holds = true;    ///< negative and positive parts agree pointwise
  bool ok() const { return identity && split_holds == non_principal; }
};

/// Checks the Moebius indicator identity at member y, and that its split
/// form holds exactly when y is not a point closure.
/// `sc` holds singleton_closures of the lattice.
inline IndicatorIdentity moebius_indicator_identity(const MoebiusTable& mu, int y, const std::vector<int>& sc) {
  const auto& l = mu.lattice();
  const auto& b = l.below(y);
  const auto& col = mu.column(y);
  IndicatorIdentity out;
  out.non_principal = std::find(sc.begin(), sc.end(), y) == sc.end();
  for (int x = 0; x < l.ground(); ++x) {
    std::int64_t neg = 0, pos = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (l.member(b[i]).contains(x)) (col[i] < 0 ? neg : pos) += col[i] < 0 ? -col[i] : col[i];
    if (pos - neg != (sc[x] == y ? 1 : 0)) out.identity = false;
    if (pos != neg) out.split_holds = false;
  }
  return out;
}

inline IndicatorIdentity moebius_indicator_identity(const MoebiusTable& mu, int y) {
  return moebius_indicator_identity(mu, y, singleton_closures(mu.lattice()));
}

/// Multisets of lattice members on the two sides of an isometry equation.
struct Solution {
  std::vector<PointSet> left;
  std::vector<PointSet> right;
  int length() const { return static_cast<int>(std::max(left.size(), right.size())); }
};

inline std::vector<int> indicator_counts(int ground, const std::vector<PointSet>& side) {
  std::vector<int> out(ground, 0);
  for (const auto& s : side)
    for (int x : s.elements()) ++out.at(x);
  return out;
}

inline bool is_solution(int ground, const Solution& s) {
  return indicator_counts(ground, s.left) == indicator_counts(ground, s.right);
}

inline bool is_trivial(const Solution& s) {
  auto a = s.left, b = s.right;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

/// Members below y with negative Moebius value on the left (multiplicity
/// -mu) and with positive value on the right (multiplicity mu).
inline Solution construct_minimal_solution(const MoebiusTable& mu, int y) {
  const auto& l = mu.lattice();
  if (l.has_empty_member()) throw DomainError("the empty set is a member");
  auto sc = singleton_closures(l);
  if (std::find(sc.begin(), sc.end(), y) != sc.end())
    throw DomainError("member " + std::to_string(y) + " is the closure of a point");
  Solution s;
  const auto& b = l.below(y);
  const auto& col = mu.column(y);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::int64_t k = 0; k < (col[i] < 0 ? -col[i] : col[i]); ++k)
      (col[i] < 0 ? s.left : s.right).push_back(l.member(b[i]));
  return s;
}

struct MinimalLength {
  bool all_trivial = false;  ///< no admissible top member; every solution is trivial
  std::int64_t length = 0;
  int witness = -1;          ///< member attaining the minimum
};

/// Minimum of half the Moebius mass over the given candidate tops.
inline MinimalLength minimal_length_over(const MoebiusTable& mu, const std::vector<int>& tops) {
  if (mu.lattice().has_empty_member()) throw DomainError("the empty set is a member");
  MinimalLength out;
  if (tops.empty()) {
    out.all_trivial = true;
    return out;
  }
  for (int y : tops) {
    auto n = half_moebius_mass(mu, y);
    if (out.witness < 0 || n < out.length) out = {false, n, y};
  }
  return out;
}

inline MinimalLength minimal_nontrivial_length(const MoebiusTable& mu) {
  return minimal_length_over(mu, non_principal_members(mu.lattice()));
}

/// Exhaustive search: smallest m such that two different multisets of
/// members, each of size at most m, have the same indicator sum. Limited
/// to 8 members and max_length 6.
inline std::optional<int> exhaustive_minimal_length(const FiniteLattice& l, int max_length) {
  if (l.size() > 8 || max_length > 6) throw BoundExceeded("exhaustive solution search is limited to 8 members, length 6");
  std::map<std::vector<int>, std::vector<int>> seen;  // indicator sum -> multiset (member multiplicities)
  std::vector<int> mult(l.size(), 0);
  std::optional<int> best;
  // Multisets in order of size so the first collision has minimal length.
  for (int m = 1; m <= max_length && !best; ++m) {
    std::function<void(int, int)> rec = [&](int start, int left) {
      if (best) return;
      if (left == 0) {
        std::vector<int> counts(l.ground(), 0);
        for (int i = 0; i < l.size(); ++i)
          for (int x : l.member(i).elements()) counts[x] += mult[i];
        auto [it, fresh] = seen.emplace(counts, mult);
        if (!fresh && it->second != mult) best = m;
        return;
      }
      for (int i = start; i < l.size(); ++i) {
        ++mult[i];
        rec(i, left - 1);
        --mult[i];
      }
    };
    rec(0, m);
  }
  return best;
}

/// Subspace lattice of F_q^k with the q^k vectors as ground points.
struct SubspaceLattice {
  FieldSpec field;
  int k;
  FiniteLattice lattice;
  std::vector<int> dims;  ///< dimension of each member
};

inline SubspaceLattice subspace_lattice(int q, int k, const Bounds& bounds = {}) {
  FieldSpec f(q);
  auto points = checked_power(q, k, bounds.max_lattice_points);
  if (!points) throw BoundExceeded("subspace lattice needs q^k <= " + std::to_string(bounds.max_lattice_points));
  const int n = static_cast<int>(*points);
  std::vector<PointSet> members;
  for (const auto& c : enumerate_codes(f, k, bounds)) {
    PointSet s(n);
    for (auto idx : codeword_indices(f, c)) s.insert(static_cast<int>(idx));
    members.push_back(s);
  }
  FiniteLattice l(n, members);
  std::vector<int> dims;
  for (const auto& m : l.members()) {
    int d = 0;
    for (int size = m.size(); size > 1; size /= q) ++d;
    dims.push_back(d);
  }
  return {f, k, std::move(l), std::move(dims)};
}

/// Subsets of {1..n} with a base point 0 added to each, so no member is empty.
inline FiniteLattice pointed_boolean_lattice(int n) {
  if (n < 0 || n > 12) throw DomainError("pointed Boolean lattice needs 0 <= n <= 12");
  std::vector<PointSet> members;
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    PointSet s(n + 1, {0});
    for (int i = 0; i < n; ++i)
      if (bits >> i & 1u) s.insert(i + 1);
    members.push_back(s);
  }
  return FiniteLattice(n + 1, members);
}

/// All subsets of an n-set, including the empty set.
inline FiniteLattice power_set_lattice(int n) {
  if (n < 0 || n > 12) throw DomainError("power set lattice needs 0 <= n <= 12");
  std::vector<PointSet> members;
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    PointSet s(n);
    for (int i = 0; i < n; ++i)
      if (bits >> i & 1u) s.insert(i);
    members.push_back(s);
  }
  return FiniteLattice(n, members);
}

/// Intersection closure of `generators` random subsets of an n-point set.
inline FiniteLattice random_intersection_closed(std::mt19937& rng, int n, int generators) {
  std::bernoulli_distribution coin(0.5);
  std::vector<PointSet> family;
  for (int g = 0; g < generators; ++g) {
    PointSet s(n);
    for (int x = 0; x < n; ++x)
      if (coin(rng)) s.insert(x);
    family.push_back(s);
  }
  return FiniteLattice::closure_of(n, family);
}

/// Minimal nontrivial solution length over the subspace lattice of F_q^k
/// with tops restricted to subspaces of dimension > e. Subspaces of
/// dimension at most e play the role of cyclic submodules of Mat_{e,k}(F_q)
/// over Mat_e(F_q), whose submodule lattice is this one.
inline std::int64_t zeta(int q, int k, int e, const Bounds& bounds = {}) {
  if (e < 1 || k <= e) throw DomainError("zeta needs k > e >= 1");
  auto s = subspace_lattice(q, k, bounds);
  MoebiusTable mu(s.lattice);
  std::vector<int> tops;
  for (int y = 0; y < s.lattice.size(); ++y)
    if (s.dims[y] > e) tops.push_back(y);
  return minimal_length_over(mu, tops).length;
}

/// Product of (q^i + 1) for i = 1..e.
inline std::int64_t zeta_formula(int q, int e) {
  std::int64_t out = 1, qi = 1;
  for (int i = 1; i <= e; ++i) {
    qi *= q;
    out *= qi + 1;
  }
  return out;
}

/// For subspaces A, B, C, D of F_q^n: {A,B} = {C,D}; 1_A + 1_B = 1_C + 1_D;
/// A u B = C u D together with A n B = C n D.
inline std::array<bool, 3> subgroup_indicator_equivalence(const FieldSpec& f, int n, const LinearCode& a,
                                                          const LinearCode& b, const LinearCode& c,
                                                          const LinearCode& d, const Bounds& bounds = {}) {
  auto points = checked_power(f.q(), n, bounds.max_lattice_points);
  if (!points) throw BoundExceeded("ambient space too large");
  const int total = static_cast<int>(*points);
  auto as_set = [&](const LinearCode& code) {
    PointSet s(total);
    for (auto idx : codeword_indices(f, code)) s.insert(static_cast<int>(idx));
    return s;
  };
  auto sa = as_set(a), sb = as_set(b), sc = as_set(c), sd = as_set(d);
  bool same = (a == c && b == d) || (a == d && b == c);
  bool indicator = indicator_counts(total, {sa, sb}) == indicator_counts(total, {sc, sd});
  bool union_meet = (sa | sb) == (sc | sd) && (sa & sb) == (sc & sd);
  return {same, indicator, union_meet};
}

struct HammingSolution {
  Solution solution;  ///< point sets over the codewords of C
  bool is_solution = false;
  bool is_trivial = false;
};

/// For a map f on a code in (F_q^k)^n: compares the kernels of the
/// coordinate projections composed with f against those restricted to C.
/// A solution means f preserves Hamming weight; a trivial one means f
/// extends to a Hamming isometry.
inline HammingSolution hamming_extension_via_solutions(const AlphabetSpec& s, const LinearCode& c,
                                                       const Matrix& images, const Bounds& bounds = {}) {
  for (int i = 1; i < s.coordinates(); ++i)
    if (s.dim(i) != s.dim(0)) throw DomainError("all coordinates must have the same dimension");
  const auto& f = s.field();
  auto words = enumerate_codewords(f, c, bounds.max_vectors);
  const int total = static_cast<int>(words.size());
  HammingSolution out;
  for (int i = 0; i < s.coordinates(); ++i) {
    PointSet kernel_f(total), kernel(total);
    for (int w = 0; w < total; ++w) {
      auto img = apply_hom(f, c, images, words[w]);
      if (!support(s, img).contains(i)) kernel_f.insert(w);
      if (!support(s, words[w]).contains(i)) kernel.insert(w);
    }
    out.solution.left.push_back(kernel_f);
    out.solution.right.push_back(kernel);
  }
  out.is_solution = is_solution(total, out.solution);
  out.is_trivial = is_trivial(out.solution);
  return out;
}

}  // namespace wpmep
