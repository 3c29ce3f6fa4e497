#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wpmep/errors.hpp"
#include "wpmep/isometry.hpp"
#include "wpmep/space.hpp"

namespace wpmep {

/// Which property the extension problem is posed for.
enum class MepMode { Weight, PSupport };

inline const char* to_string(MepMode m) { return m == MepMode::Weight ? "weight" : "psupport"; }

/// A linear map on a code together with the code; the map sends RREF basis
/// row r of the code to images.row(r).
struct CodeMap {
  LinearCode code;
  Matrix images;
};

struct TraceEntry {
  std::string name;
  bool value;
};

struct MepVerdict {
  bool holds = true;
  /// False when the scan was limited to low-dimensional codes and found nothing.
  bool exhaustive = true;
  std::optional<CodeMap> counterexample;
  std::vector<TraceEntry> trace;
  std::uint64_t codes_checked = 0;
  std::uint64_t maps_checked = 0;
};

/// Group of isometries for the mode: GL_{(P,w)}(H) or GL_P(H).
inline std::vector<Isometry> mode_group(const MetricSpace& m, MepMode mode, const Bounds& bounds = {}) {
  return mode == MepMode::Weight ? weight_isometry_group(m, bounds) : p_support_group(m.space, m.poset, bounds);
}

inline bool preserves_weight(const MetricSpace& m, const CodeMap& f) {
  const auto& fs = m.space.field();
  for (const auto& c : enumerate_codewords(fs, f.code))
    if (weight(m, apply_hom(fs, f.code, f.images, c)) != weight(m, c)) return false;
  return true;
}

inline bool preserves_p_support(const AlphabetSpec& s, const Poset& p, const CodeMap& f) {
  for (const auto& c : enumerate_codewords(s.field(), f.code))
    if (p_support(s, p, apply_hom(s.field(), f.code, f.images, c)) != p_support(s, p, c)) return false;
  return true;
}

inline bool preserves(const MetricSpace& m, MepMode mode, const CodeMap& f) {
  return mode == MepMode::Weight ? preserves_weight(m, f) : preserves_p_support(m.space, m.poset, f);
}

/// Searches the group for phi with phi restricted to the code equal to f. The
/// returned isometry is replayed on every codeword.
inline std::optional<Isometry> extend_to_isometry(const MetricSpace& m, const std::vector<Isometry>& group,
                                                  const CodeMap& f) {
  const auto& fs = m.space.field();
  for (const auto& g : group) {
    auto mat = to_matrix(m.space, g);
    bool match = true;
    for (int r = 0; r < f.code.dimension() && match; ++r)
      match = multiply(fs, f.code.basis().row(r), mat) == f.images.row(r);
    if (!match) continue;
    for (const auto& c : enumerate_codewords(fs, f.code))
      if (multiply(fs, c, mat) != apply_hom(fs, f.code, f.images, c))
        throw ContractError("extension agrees on the basis but not on a codeword");
    return g;
  }
  return std::nullopt;
}

inline std::optional<Isometry> extend_to_isometry(const MetricSpace& m, const CodeMap& f, MepMode mode = MepMode::Weight,
                                                  const Bounds& bounds = {}) {
  return extend_to_isometry(m, mode_group(m, mode, bounds), f);
}

/// Per-vector key whose equality defines the preserved quantity.
class PreservedKey {
 public:
  PreservedKey(const MetricSpace& m, MepMode mode, const Bounds& bounds) : index_(m, bounds), mode_(mode) {}
  std::uint32_t operator()(std::uint32_t v) const {
    return mode_ == MepMode::Weight ? static_cast<std::uint32_t>(index_.weight_class(v)) : index_.closure(v).bits();
  }
  const WeightIndex& index() const { return index_; }

 private:
  WeightIndex index_;
  MepMode mode_;
};

/// Calls visit(images) for every linear map C -> H preserving the key, in
/// lexicographic order of basis images. Images are chosen row by row and
/// each partial choice is checked on every codeword it determines. Returns
/// false if visit asked to stop.
inline bool for_each_preserving_map(const MetricSpace& m, const PreservedKey& key, const LinearCode& c,
                                    const std::function<bool(const Matrix&)>& visit) {
  const auto& fs = m.space.field();
  const int d = c.dimension();
  const int n = m.space.length();
  const std::uint32_t total = static_cast<std::uint32_t>(key.index().size());
  const auto combos = static_cast<std::uint32_t>(*checked_power(fs.q(), d, ~std::uint64_t{0}));
  // Codewords grouped by the last basis row with a nonzero coefficient.
  std::vector<std::vector<Vec>> coeffs_by_last(d);
  std::vector<std::vector<std::uint32_t>> word_key_by_last(d);
  for (std::uint32_t x = 1; x < combos; ++x) {
    Vec coeff = decode(fs, x, d);
    int last = d - 1;
    while (coeff[last] == 0) --last;
    coeffs_by_last[last].push_back(coeff);
    word_key_by_last[last].push_back(key(encode(fs, multiply(fs, coeff, c.basis()))));
  }
  std::vector<std::vector<std::uint32_t>> candidates(d);
  for (int r = 0; r < d; ++r) {
    auto want = key(encode(fs, c.basis().row(r)));
    for (std::uint32_t v = 0; v < total; ++v)
      if (key(v) == want) candidates[r].push_back(v);
  }
  Matrix images(d, n);
  std::vector<Vec> rows(d);
  std::function<bool(int)> extend = [&](int r) -> bool {
    if (r == d) return visit(images);
    for (std::uint32_t cand : candidates[r]) {
      rows[r] = decode(fs, cand, n);
      bool ok = true;
      for (std::size_t w = 0; w < coeffs_by_last[r].size() && ok; ++w) {
        Vec img(n, 0);
        for (int i = 0; i <= r; ++i)
          if (coeffs_by_last[r][w][i] != 0) img = add(fs, img, scale(fs, coeffs_by_last[r][w][i], rows[i]));
        ok = key(encode(fs, img)) == word_key_by_last[r][w];
      }
      if (!ok) continue;
      images.set_row(r, rows[r]);
      if (!extend(r + 1)) return false;
    }
    return true;
  };
  return extend(0);
}

inline std::vector<Matrix> preserving_maps(const MetricSpace& m, MepMode mode, const LinearCode& c,
                                           const Bounds& bounds = {}) {
  PreservedKey key(m, mode, bounds);
  std::vector<Matrix> out;
  for_each_preserving_map(m, key, c, [&](const Matrix& images) {
    out.push_back(images);
    if (out.size() > bounds.max_homs) throw BoundExceeded("too many preserving maps on one code");
    return true;
  });
  return out;
}

/// Exhaustive MEP check: every code (by dimension, then RREF) and every
/// preserving map (by basis images) is tested for an extension in the group.
/// The first failure is returned, so counterexamples are minimal in that order.
/// max_dim < N limits the scan to codes of dimension at most max_dim.
inline MepVerdict mep_brute_force(const MetricSpace& m, MepMode mode = MepMode::Weight, const Bounds& bounds = {},
                                  int max_dim = -1) {
  const auto& fs = m.space.field();
  const int n = m.space.length();
  if (max_dim < 0 || max_dim > n) max_dim = n;
  PreservedKey key(m, mode, bounds);
  auto group = mode_group(m, mode, bounds);
  std::vector<Matrix> group_mats;
  for (const auto& g : group) group_mats.push_back(to_matrix(m.space, g));
  MepVerdict out;
  out.exhaustive = max_dim == n;
  for (const auto& c : enumerate_codes(fs, n, bounds, 1, max_dim)) {
    ++out.codes_checked;
    std::vector<std::vector<std::uint32_t>> restrictions;
    restrictions.reserve(group_mats.size());
    for (const auto& g : group_mats) {
      std::vector<std::uint32_t> r;
      for (int row = 0; row < c.dimension(); ++row) r.push_back(encode(fs, multiply(fs, c.basis().row(row), g)));
      restrictions.push_back(std::move(r));
    }
    std::sort(restrictions.begin(), restrictions.end());
    for_each_preserving_map(m, key, c, [&](const Matrix& images) {
      ++out.maps_checked;
      std::vector<std::uint32_t> probe;
      for (int row = 0; row < c.dimension(); ++row) probe.push_back(encode(fs, images.row(row)));
      if (std::binary_search(restrictions.begin(), restrictions.end(), probe)) return true;
      out.holds = false;
      out.counterexample = CodeMap{c, images};
      return false;
    });
    if (!out.holds) break;
  }
  out.trace.push_back({"codes scanned up to dimension " + std::to_string(max_dim), true});
  out.trace.push_back({"every preserving map extends", out.holds});
  return out;
}

/// Re-validates a counterexample: the map preserves the quantity and an
/// exhaustive group scan finds no extension.
inline bool replay_counterexample(const MetricSpace& m, MepMode mode, const CodeMap& f, const Bounds& bounds = {}) {
  if (f.images.rows() != f.code.dimension() || f.images.cols() != m.space.length()) return false;
  if (!preserves(m, mode, f)) return false;
  return !extend_to_isometry(m, mode_group(m, mode, bounds), f).has_value();
}

inline std::string join_labels(const Poset& p, LabelSet s) {
  std::string out;
  for (int i : s.indices()) out += (out.empty() ? "" : ",") + p.label(i);
  return out;
}

struct Condition {
  bool value = true;
  std::string note;
  std::string witness;
};

struct ConditionReport {
  Condition a, b, c, d, e;
};

/// Pairs (u, v) on the same level with equal weight but different block
/// dimensions; empty when none.
inline std::optional<std::pair<int, int>> level_weight_dimension_clash(const MetricSpace& m, bool use_weight) {
  auto len = levels(m.poset);
  for (int u = 0; u < m.poset.size(); ++u)
    for (int v = u + 1; v < m.poset.size(); ++v)
      if (len[u] == len[v] && (!use_weight || m.omega[u] == m.omega[v]) && m.space.dim(u) != m.space.dim(v))
        return std::pair{u, v};
  return std::nullopt;
}

inline ConditionReport condition_report(const MetricSpace& m, const Bounds& bounds = {}) {
  const auto& p = m.poset;
  ConditionReport r;
  r.a = {true, "by instantiation: finite-dimensional vector spaces over a field", ""};
  r.b = {true, "by instantiation: every subspace map extends over a field", ""};
  r.c = {true, "all block dimensions are at least 1", ""};
  auto udp = udp_check(p, m.omega, bounds.max_aut_elements);
  auto clash_d = level_weight_dimension_clash(m, true);
  r.d.value = udp.holds && !clash_d;
  if (!udp.holds) {
    r.d.note = "unique decomposition property fails";
    r.d.witness = "ideals {" + join_labels(p, udp.witness->first) + "} and {" + join_labels(p, udp.witness->second) + "}";
  } else if (clash_d) {
    r.d.note = "same level and weight, different block dimension";
    r.d.witness = p.label(clash_d->first) + ", " + p.label(clash_d->second);
  }
  auto hier = is_hierarchical(p);
  auto clash_e = level_weight_dimension_clash(m, false);
  r.e.value = hier.hierarchical && !clash_e;
  if (!hier.hierarchical) {
    r.e.note = "poset is not hierarchical";
    r.e.witness = p.label(hier.witness->first) + " not below " + p.label(hier.witness->second);
  } else if (clash_e) {
    r.e.note = "same level, different block dimension";
    r.e.witness = p.label(clash_e->first) + ", " + p.label(clash_e->second);
  }
  return r;
}

/// Level-and-weight threshold: for every level r and weight b, either all
/// blocks in {i in W_r : w(i) = b} are one-dimensional or the class has at
/// most q members. With by_weight false the classes are whole levels.
inline Condition threshold_condition(const MetricSpace& m, bool by_weight = true) {
  auto w = level_sets(m.poset);
  for (std::size_t r = 0; r < w.size(); ++r) {
    std::vector<Rational> values;
    for (int i : w[r].indices()) values.push_back(m.omega[i]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (!by_weight) values.resize(1);
    for (const auto& b : values) {
      int members = 0;
      bool all_one = true;
      for (int i : w[r].indices())
        if (!by_weight || m.omega[i] == b) {
          ++members;
          all_one = all_one && m.space.dim(i) == 1;
        }
      if (!all_one && members > m.space.q()) {
        std::string where = "level " + std::to_string(r + 1);
        if (by_weight) where += ", weight " + to_string(b);
        return {false, where + ": " + std::to_string(members) + " blocks of dimension > 1 exceed q", ""};
      }
    }
  }
  return {};
}

/// Closed-form MEP verdict. Unit weights: hierarchy with constant block
/// dimension per level plus the level threshold. Hierarchical posets with
/// general weights: the weighted condition D plus the level-and-weight
/// threshold. Otherwise throws PredicateUnavailable.
inline MepVerdict mep_predicate(const MetricSpace& m, const Bounds& bounds = {}) {
  MepVerdict out;
  auto report = condition_report(m, bounds);
  if (m.omega.is_identically_one()) {
    auto t = threshold_condition(m, false);
    out.trace = {{"hierarchical", is_hierarchical(m.poset).hierarchical},
                 {"condition E", report.e.value},
                 {"level threshold", t.value}};
    out.holds = report.e.value && t.value;
    return out;
  }
  if (!is_hierarchical(m.poset).hierarchical)
    throw PredicateUnavailable("no closed form for non-hierarchical posets with non-unit weights; use brute force");
  auto t = threshold_condition(m, true);
  out.trace = {{"hierarchical", true}, {"condition D", report.d.value}, {"level-and-weight threshold", t.value}};
  out.holds = report.d.value && t.value;
  return out;
}

/// MEP for P-support over a field alphabet: always holds.
inline MepVerdict mep_p_support_predicate(const MetricSpace&) {
  MepVerdict out;
  out.trace = {{"conditions A and B hold for vector spaces", true}, {"field alphabet", true}};
  return out;
}

struct OrbitCheck {
  bool holds = true;
  std::optional<std::pair<Vec, Vec>> witness;  ///< equal weight, different orbits
};

/// Whether the isometry group acts transitively on each weight sphere.
inline OrbitCheck single_orbit_check(const MetricSpace& m, const Bounds& bounds = {}) {
  const auto& fs = m.space.field();
  WeightIndex index(m, bounds);
  auto group = weight_isometry_group(m, bounds);
  const auto total = static_cast<std::uint32_t>(index.size());
  std::vector<std::uint32_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : group) {
    auto mat = to_matrix(m.space, g);
    for (std::uint32_t v = 0; v < total; ++v) {
      auto a = find(v);
      auto b = find(encode(fs, multiply(fs, decode(fs, v, m.space.length()), mat)));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::int64_t> rep(index.weights().size(), -1);
  for (std::uint32_t v = 0; v < total; ++v) {
    auto cls = index.weight_class(v);
    if (rep[cls] < 0) {
      rep[cls] = v;
    } else if (find(static_cast<std::uint32_t>(rep[cls])) != find(v)) {
      return {false, std::pair{decode(fs, static_cast<std::uint32_t>(rep[cls]), m.space.length()),
                               decode(fs, v, m.space.length())}};
    }
  }
  return {};
}

struct Decomposition {
  Isometry phi;                  ///< element of GL_P(H)
  std::vector<LinearCode> parts; ///< parts[j] lies in delta(W_{j+1})
  int top_level = 0;             ///< smallest r with C inside delta(W_1 u ... u W_r)
};

namespace detail {

inline LabelSet levels_up_to(const std::vector<LabelSet>& w, int r) {
  LabelSet out;
  for (int j = 0; j < r; ++j) out = out | w[j];
  return out;
}

inline Vec restrict_to(const AlphabetSpec& s, const Vec& v, LabelSet coords) {
  Vec out(v.size(), 0);
  for (int t = 0; t < s.length(); ++t)
    if (coords.contains(s.coordinate_of(t))) out[t] = v[t];
  return out;
}

}  // namespace detail

/// Maps a code into a direct sum of level-supported codes by an element of
/// GL_P(H), following the level-by-level induction: at the top level r, a
/// complement L of D = C n delta(W_1..W_{r-1}) is sheared onto its W_r part
/// by an automorphism fixing everything off W_r, and the procedure recurses on D.
inline Decomposition canonical_decomposition(const AlphabetSpec& s, const Poset& p, const LinearCode& c) {
  if (auto h = is_hierarchical(p); !h.hierarchical)
    throw DomainError("canonical decomposition needs a hierarchical poset");
  const auto& fs = s.field();
  const int n = s.length();
  auto w = level_sets(p);
  const int height = static_cast<int>(w.size());
  int top = 0;
  while (!c.is_subcode_of(fs, delta_subspace(s, detail::levels_up_to(w, top)))) ++top;

  Decomposition out{identity_isometry(s, p), std::vector<LinearCode>(height, LinearCode::zero(n)), top};
  Matrix total = Matrix::identity(n);  // matrix of the accumulated map
  LinearCode current = c;
  for (int r = top; r >= 1; --r) {
    LabelSet lower = detail::levels_up_to(w, r - 1);
    LabelSet level = w[r - 1];
    auto d = code_intersection(fs, current, delta_subspace(s, lower));
    // Complement L of D inside the current code.
    std::vector<Vec> basis = d.basis().row_list();
    std::vector<Vec> complement;
    for (const auto& row : current.basis().row_list()) {
      auto trial = basis;
      trial.push_back(row);
      if (rank(fs, Matrix(n, trial)) > static_cast<int>(basis.size())) {
        basis = trial;
        complement.push_back(row);
      }
    }
    // Shear sigma(g) = g - Lambda(g restricted to W_r) with Lambda sending the
    // W_r part of each complement vector to its lower part.
    std::vector<int> level_pos, lower_pos;
    for (int t = 0; t < n; ++t) {
      if (level.contains(s.coordinate_of(t))) level_pos.push_back(t);
      if (lower.contains(s.coordinate_of(t))) lower_pos.push_back(t);
    }
    const int lp = static_cast<int>(level_pos.size());
    std::vector<Vec> src, dst;
    for (const auto& v : complement) {
      Vec a(lp), b(n, 0);
      for (int x = 0; x < lp; ++x) a[x] = v[level_pos[x]];
      for (int t : lower_pos) b[t] = v[t];
      src.push_back(a);
      dst.push_back(b);
    }
    for (int x = 0; x < lp && static_cast<int>(src.size()) < lp; ++x) {
      Vec unit(lp, 0);
      unit[x] = 1;
      auto trial = src;
      trial.push_back(unit);
      if (rank(fs, Matrix(lp, trial)) > static_cast<int>(src.size())) {
        src = trial;
        dst.push_back(Vec(n, 0));
      }
    }
    Matrix sigma = Matrix::identity(n);
    if (lp > 0) {
      auto inv = inverse(fs, Matrix(lp, src));
      if (!inv) throw ContractError("level projection of the complement is not injective");
      Matrix lambda = multiply(fs, *inv, Matrix(n, dst));
      for (int x = 0; x < lp; ++x)
        for (int t : lower_pos) sigma(level_pos[x], t) = fs.neg(lambda(x, t));
    }
    std::vector<Vec> top_part;
    for (const auto& v : complement) top_part.push_back(multiply(fs, v, sigma));
    out.parts[r - 1] = LinearCode(fs, n, top_part);
    total = multiply(fs, total, sigma);
    current = code_image(fs, d, sigma);
  }
  auto phi = read_structure(s, p, total);
  if (!phi || phi->lambda != identity_permutation(p.size()))
    throw ContractError("decomposition map is not in GL_P(H)");
  out.phi = *phi;
  return out;
}

struct DecompositionCheck {
  bool ok = true;
  std::string failure;
};

/// Replays a decomposition: phi preserves P-support on all of H, each part
/// lies in its level, the sum is direct, equals phi[C], and phi fixes every
/// vector supported above the code's top level.
inline DecompositionCheck validate_decomposition(const AlphabetSpec& s, const Poset& p, const LinearCode& c,
                                                 const Decomposition& d, const Bounds& bounds = {}) {
  const auto& fs = s.field();
  auto w = level_sets(p);
  auto mat = to_matrix(s, d.phi);
  if (!is_invertible(fs, mat)) return {false, "phi is singular"};
  const auto total = s.vector_count(bounds.max_vectors);
  for (std::uint64_t v = 0; v < total; ++v) {
    Vec a = decode(fs, static_cast<std::uint32_t>(v), s.length());
    if (p_support(s, p, multiply(fs, a, mat)) != p_support(s, p, a)) return {false, "phi changes a P-support"};
  }
  if (d.parts.size() != w.size()) return {false, "wrong number of parts"};
  LinearCode sum = LinearCode::zero(s.length());
  int dims = 0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (!d.parts[j].is_subcode_of(fs, delta_subspace(s, w[j]))) return {false, "part outside its level"};
    sum = code_sum(fs, sum, d.parts[j]);
    dims += d.parts[j].dimension();
  }
  if (sum.dimension() != dims) return {false, "sum is not direct"};
  if (dims != c.dimension()) return {false, "dimension changed"};
  if (code_image(fs, c, mat) != sum) return {false, "phi[C] differs from the sum of parts"};
  LabelSet above;
  for (std::size_t j = d.top_level; j < w.size(); ++j) above = above | w[j];
  auto fixed = delta_subspace(s, above);
  for (const auto& v : enumerate_codewords(fs, fixed, bounds.max_vectors))
    if (multiply(fs, v, mat) != v) return {false, "phi moves a vector above the top level"};
  return {};
}

}  // namespace wpmep
