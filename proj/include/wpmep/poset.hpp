#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "wpmep/errors.hpp"
#include "wpmep/label_set.hpp"

namespace wpmep {

/// Exact rational used for coordinate weights and weight sums.
using Rational = boost::rational<std::int64_t>;

/// A permutation of element indices, perm[i] is the image of i.
using Permutation = std::vector<int>;

/// Parses "n/d" or "n" into an exact rational. Throws ValidationError.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
      throw ValidationError("malformed rational \"" + std::string(text) + "\"");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  std::int64_t num = parse_int(text.substr(0, slash));
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ValidationError("zero denominator in \"" + std::string(text) + "\"");
  return Rational(num, den);
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Strictly positive rational weight per coordinate index.
class WeightFunction {
 public:
  WeightFunction() = default;
  explicit WeightFunction(std::vector<Rational> values) : values_(std::move(values)) {
    for (const auto& v : values_)
      if (v <= Rational(0)) throw ValidationError("weights must be strictly positive, got " + to_string(v));
  }

  static WeightFunction uniform(int n) { return WeightFunction(std::vector<Rational>(n, Rational(1))); }

  int size() const { return static_cast<int>(values_.size()); }
  const Rational& operator[](int i) const { return values_.at(i); }
  const std::vector<Rational>& values() const { return values_; }

  Rational sum(LabelSet s) const {
    Rational total(0);
    for (int i : s.indices()) total += values_.at(i);
    return total;
  }

  bool is_identically_one() const {
    return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v == Rational(1); });
  }
  bool is_integer_valued() const {
    return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v.denominator() == 1; });
  }

  friend bool operator==(const WeightFunction&, const WeightFunction&) = default;

 private:
  std::vector<Rational> values_;
};

/// A finite partial order on labelled elements.
///
/// The relation is stored as principal down-sets: down(i) = {j : j <= i}.
/// Construction validates reflexivity, antisymmetry and transitivity.
class Poset {
 public:
  /// Builds from an explicit relation matrix, leq[i][j] meaning i <= j.
  static Poset from_relation(std::vector<std::string> labels, const std::vector<std::vector<bool>>& leq) {
    const int n = static_cast<int>(labels.size());
    check_labels(labels);
    if (static_cast<int>(leq.size()) != n) throw ValidationError("relation matrix has wrong row count");
    Poset p(std::move(labels));
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(leq[i].size()) != n) throw ValidationError("relation matrix has wrong column count");
      for (int j = 0; j < n; ++j)
        if (leq[i][j]) p.down_[j].insert(i);
    }
    for (int i = 0; i < n; ++i) {
      if (!p.leq(i, i)) throw ValidationError("relation is not reflexive at " + p.labels_[i]);
      for (int j = 0; j < n; ++j) {
        if (i != j && p.leq(i, j) && p.leq(j, i))
          throw ValidationError("relation is not antisymmetric: " + p.labels_[i] + " and " + p.labels_[j]);
        for (int k = 0; k < n; ++k)
          if (p.leq(i, j) && p.leq(j, k) && !p.leq(i, k))
            throw ValidationError("relation is not transitive: " + p.labels_[i] + " <= " + p.labels_[j] +
                                  " <= " + p.labels_[k]);
      }
    }
    p.finish();
    return p;
  }

  /// Builds from cover pairs (lower, upper); the reflexive-transitive closure
  /// is taken. A directed cycle among the covers is rejected and reported.
  static Poset from_covers(std::vector<std::string> labels,
                           const std::vector<std::pair<std::string, std::string>>& covers) {
    check_labels(labels);
    const int n = static_cast<int>(labels.size());
    Poset p(std::move(labels));
    std::vector<std::vector<int>> up(n);
    for (const auto& [lo, hi] : covers) {
      int a = p.index_of(lo);
      int b = p.index_of(hi);
      if (a == b) throw ValidationError("cover relation " + lo + " < " + hi + " is a self loop");
      up[a].push_back(b);
    }
    if (auto cycle = find_cycle(up); !cycle.empty()) {
      std::string witness;
      for (int v : cycle) witness += p.labels_[v] + " < ";
      witness += p.labels_[cycle.front()];
      throw ValidationError("cover relations contain a cycle: " + witness);
    }
    // Closure by repeated propagation along covers; n is small.
    for (int i = 0; i < n; ++i) p.down_[i].insert(i);
    for (bool changed = true; changed;) {
      changed = false;
      for (int a = 0; a < n; ++a)
        for (int b : up[a]) {
          LabelSet merged = p.down_[b] | p.down_[a];
          if (merged != p.down_[b]) {
            p.down_[b] = merged;
            changed = true;
          }
        }
    }
    p.finish();
    return p;
  }

  static Poset chain(int n) {
    std::vector<std::pair<std::string, std::string>> covers;
    for (int i = 1; i < n; ++i) covers.emplace_back(std::to_string(i), std::to_string(i + 1));
    return from_covers(default_labels(n), covers);
  }
  static Poset antichain(int n) { return from_covers(default_labels(n), {}); }

  static std::vector<std::string> default_labels(int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back(std::to_string(i));
    return out;
  }

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_.at(i); }

  int index_of(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw DomainError("unknown label \"" + std::string(label) + "\"");
    return static_cast<int>(it - labels_.begin());
  }
  LabelSet set_of(const std::vector<std::string>& labels) const {
    LabelSet s;
    for (const auto& l : labels) s.insert(index_of(l));
    return s;
  }
  std::vector<std::string> labels_of(LabelSet s) const {
    std::vector<std::string> out;
    for (int i : s.indices()) out.push_back(labels_.at(i));
    return out;
  }

  bool leq(int i, int j) const { return down_[j].contains(i); }
  bool less(int i, int j) const { return i != j && leq(i, j); }
  /// Principal ideal generated by i.
  LabelSet down(int i) const { return down_[i]; }
  LabelSet up(int i) const { return up_[i]; }
  LabelSet all() const { return LabelSet::full(size()); }

  /// Relation matrix, leq_matrix()[i][j] == leq(i, j).
  std::vector<std::vector<bool>> leq_matrix() const {
    std::vector<std::vector<bool>> m(size(), std::vector<bool>(size(), false));
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j) m[i][j] = leq(i, j);
    return m;
  }

  /// Cover pairs (i, j): i < j with nothing strictly between.
  std::vector<std::pair<int, int>> covers() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j) {
        if (!less(i, j)) continue;
        bool direct = true;
        for (int k = 0; k < size() && direct; ++k)
          if (less(i, k) && less(k, j)) direct = false;
        if (direct) out.emplace_back(i, j);
      }
    return out;
  }

  friend bool operator==(const Poset& a, const Poset& b) { return a.labels_ == b.labels_ && a.down_ == b.down_; }

 private:
  explicit Poset(std::vector<std::string> labels)
      : labels_(std::move(labels)), down_(labels_.size()), up_(labels_.size()) {}

  static void check_labels(const std::vector<std::string>& labels) {
    if (labels.size() > static_cast<std::size_t>(LabelSet::kMaxElements))
      throw ValidationError("posets are limited to 32 elements");
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i].empty()) throw ValidationError("empty element label");
      for (std::size_t j = 0; j < i; ++j)
        if (labels[i] == labels[j]) throw ValidationError("duplicate element label \"" + labels[i] + "\"");
    }
  }

  void finish() {
    for (int j = 0; j < size(); ++j)
      for (int i : down_[j].indices()) up_[i].insert(j);
  }

  static std::vector<int> find_cycle(const std::vector<std::vector<int>>& up) {
    const int n = static_cast<int>(up.size());
    std::vector<int> state(n, 0), parent(n, -1);
    std::vector<int> cycle;
    auto dfs = [&](auto&& self, int v) -> bool {
      state[v] = 1;
      for (int w : up[v]) {
        if (state[w] == 1) {
          for (int x = v; x != w; x = parent[x]) cycle.push_back(x);
          cycle.push_back(w);
          std::reverse(cycle.begin(), cycle.end());
          return true;
        }
        if (state[w] == 0) {
          parent[w] = v;
          if (self(self, w)) return true;
        }
      }
      state[v] = 2;
      return false;
    };
    for (int v = 0; v < n; ++v)
      if (state[v] == 0 && dfs(dfs, v)) return cycle;
    return {};
  }

  std::vector<std::string> labels_;
  std::vector<LabelSet> down_;
  std::vector<LabelSet> up_;
};

inline void check_subset(const Poset& p, LabelSet b) {
  if (!b.is_subset_of(p.all())) throw DomainError("set contains an index outside the poset");
}

/// Smallest ideal containing b: every element below some member of b.
inline LabelSet ideal_closure(const Poset& p, LabelSet b) {
  check_subset(p, b);
  LabelSet out;
  for (int i : b.indices()) out = out | p.down(i);
  return out;
}

inline bool is_ideal(const Poset& p, LabelSet s) { return ideal_closure(p, s) == s; }

/// All ideals in canonical order (cardinality, then lexicographic).
inline std::vector<LabelSet> all_ideals(const Poset& p) {
  std::vector<LabelSet> out;
  if (p.size() > 24) throw BoundExceeded("ideal enumeration limited to 24 elements");
  const std::uint32_t count = std::uint32_t{1} << p.size();
  for (std::uint32_t bits = 0; bits < count; ++bits)
    if (is_ideal(p, LabelSet(bits))) out.emplace_back(bits);
  std::sort(out.begin(), out.end());
  return out;
}

/// Levels len(y): size of the longest chain with y as its greatest element.
inline std::vector<int> levels(const Poset& p) {
  const int n = p.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Down-sets strictly grow along the order, so sorting by their size is a
  // linear extension.
  std::sort(order.begin(), order.end(), [&](int a, int b) { return p.down(a).size() < p.down(b).size(); });
  std::vector<int> len(n, 1);
  for (int v : order)
    for (int u : p.down(v).indices())
      if (u != v) len[v] = std::max(len[v], len[u] + 1);
  return len;
}

inline int level(const Poset& p, int y) {
  if (y < 0 || y >= p.size()) throw DomainError("element index out of range");
  return levels(p)[y];
}
inline int level(const Poset& p, std::string_view label) { return level(p, p.index_of(label)); }

/// Level sets W_1, ..., W_m partitioning the elements; m is the height.
inline std::vector<LabelSet> level_sets(const Poset& p) {
  auto len = levels(p);
  int height = len.empty() ? 0 : *std::max_element(len.begin(), len.end());
  std::vector<LabelSet> out(height);
  for (int i = 0; i < p.size(); ++i) out[len[i] - 1].insert(i);
  return out;
}

struct HierarchyResult {
  bool hierarchical = true;
  /// (u, v) with len(u) + 1 <= len(v) but u not below v.
  std::optional<std::pair<int, int>> witness;
};

inline HierarchyResult is_hierarchical(const Poset& p) {
  auto len = levels(p);
  for (int u = 0; u < p.size(); ++u)
    for (int v = 0; v < p.size(); ++v)
      if (len[u] + 1 <= len[v] && !p.leq(u, v)) return {false, std::pair{u, v}};
  return {};
}

/// Alternative form of the hierarchy test: every element of a lower level is
/// below every element of every higher level.
inline bool is_hierarchical_by_levels(const Poset& p) {
  auto w = level_sets(p);
  for (std::size_t r = 0; r < w.size(); ++r)
    for (std::size_t s = r + 1; s < w.size(); ++s)
      for (int u : w[r].indices())
        for (int v : w[s].indices())
          if (!p.leq(u, v)) return false;
  return true;
}

/// Dual poset: same labels, relation reversed.
inline Poset dual(const Poset& p) {
  auto m = p.leq_matrix();
  std::vector<std::vector<bool>> t(p.size(), std::vector<bool>(p.size()));
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j) t[i][j] = m[j][i];
  return Poset::from_relation(p.labels(), t);
}

inline bool is_automorphism(const Poset& p, const Permutation& perm) {
  for (int u = 0; u < p.size(); ++u)
    for (int v = 0; v < p.size(); ++v)
      if (p.leq(u, v) != p.leq(perm[u], perm[v])) return false;
  return true;
}

inline Permutation identity_permutation(int n) {
  Permutation id(n);
  std::iota(id.begin(), id.end(), 0);
  return id;
}

inline Permutation compose(const Permutation& outer, const Permutation& inner) {
  Permutation out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[inner[i]];
  return out;
}

inline Permutation inverse(const Permutation& perm) {
  Permutation out(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out[perm[i]] = static_cast<int>(i);
  return out;
}

/// All order automorphisms in lexicographic order (identity first), by brute
/// force over permutations.
inline std::vector<Permutation> automorphisms(const Poset& p, int max_elements = 8) {
  if (p.size() > max_elements)
    throw BoundExceeded("automorphism enumeration capped at " + std::to_string(max_elements) + " elements");
  std::vector<Permutation> out;
  Permutation perm = identity_permutation(p.size());
  do {
    if (is_automorphism(p, perm)) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// Automorphisms that also preserve the weight function.
inline std::vector<Permutation> weight_preserving_automorphisms(const Poset& p, const WeightFunction& w,
                                                                int max_elements = 8) {
  std::vector<Permutation> out;
  for (auto& perm : automorphisms(p, max_elements)) {
    bool ok = true;
    for (int i = 0; i < p.size() && ok; ++i) ok = w[perm[i]] == w[i];
    if (ok) out.push_back(std::move(perm));
  }
  return out;
}

struct UdpResult {
  bool holds = true;
  /// Ideals (I, J) of equal weight not related by any weight-preserving automorphism.
  std::optional<std::pair<LabelSet, LabelSet>> witness;
};

/// Every pair (I, J) of ideals, I before J in canonical order, with equal
/// weight sum but no weight-preserving automorphism carrying I onto J.
inline std::vector<std::pair<LabelSet, LabelSet>> udp_violations(const Poset& p, const WeightFunction& w,
                                                                  int max_elements = 8, bool first_only = false) {
  if (w.size() != p.size()) throw DomainError("weight function does not match the poset");
  auto ideals = all_ideals(p);
  auto auts = weight_preserving_automorphisms(p, w, max_elements);
  std::vector<Rational> sums;
  sums.reserve(ideals.size());
  for (auto i : ideals) sums.push_back(w.sum(i));
  std::vector<std::pair<LabelSet, LabelSet>> out;
  for (std::size_t a = 0; a < ideals.size(); ++a)
    for (std::size_t b = a + 1; b < ideals.size(); ++b) {
      if (sums[a] != sums[b]) continue;
      bool related = std::any_of(auts.begin(), auts.end(), [&](const Permutation& perm) {
        return apply_permutation(perm, ideals[a]) == ideals[b];
      });
      if (!related) {
        out.emplace_back(ideals[a], ideals[b]);
        if (first_only) return out;
      }
    }
  return out;
}

/// Unique decomposition property: ideals of equal weight sum are images of
/// each other under a weight-preserving automorphism.
inline UdpResult udp_check(const Poset& p, const WeightFunction& w, int max_elements = 8) {
  auto bad = udp_violations(p, w, max_elements, true);
  if (bad.empty()) return {};
  return {false, bad.front()};
}

/// Weight 2^i on the i-th element; all subset sums are distinct.
inline WeightFunction powers_of_two_weight(const Poset& p) {
  if (p.size() > 62) throw DomainError("too many elements for power-of-two weights");
  std::vector<Rational> v;
  for (int i = 0; i < p.size(); ++i) v.emplace_back(std::int64_t{1} << i);
  return WeightFunction(std::move(v));
}

/// Every labelled poset on n elements, generated from the transitively closed,
/// antisymmetric strict relations. Order follows the bit pattern of the strict
/// relation, so the first entry is the antichain.
inline std::vector<Poset> all_labeled_posets(int n) {
  if (n > 6) throw BoundExceeded("labelled poset enumeration limited to 6 elements");
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) slots.emplace_back(i, j);
  std::vector<Poset> out;
  const std::uint64_t total = std::uint64_t{1} << slots.size();
  std::vector<std::uint32_t> below(n);  // below[j]: strict lower set of j
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    std::fill(below.begin(), below.end(), 0u);
    bool ok = true;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if ((bits >> s) & 1u) {
        auto [i, j] = slots[s];
        if ((below[i] >> j) & 1u) ok = false;  // both i<j and j<i
        below[j] |= 1u << i;
      }
    if (!ok) continue;
    for (int j = 0; j < n && ok; ++j)
      for (std::uint32_t b = below[j]; b != 0 && ok; b &= b - 1) {
        int i = std::countr_zero(b);
        if ((below[i] & ~below[j]) != 0) ok = false;
      }
    if (!ok) continue;
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int j = 0; j < n; ++j) {
      leq[j][j] = true;
      for (std::uint32_t b = below[j]; b != 0; b &= b - 1) leq[std::countr_zero(b)][j] = true;
    }
    out.push_back(Poset::from_relation(Poset::default_labels(n), leq));
  }
  return out;
}

}  // namespace wpmep
