#pragma once

#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wpmep/fourier.hpp"
#include "wpmep/isometry.hpp"
#include "wpmep/lattice.hpp"
#include "wpmep/mep.hpp"

namespace wpmep::acceptance {

struct Options {
  bool small = false;        ///< restrict poset grids to at most two elements
  std::uint32_t seed = 2024;  ///< random intersection-closed families
};

struct Result {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

namespace detail {

inline std::vector<Poset> posets_up_to(int n) {
  std::vector<Poset> out;
  for (int k = 1; k <= n; ++k)
    for (auto& p : all_labeled_posets(k)) out.push_back(std::move(p));
  return out;
}

inline std::set<Matrix> matrices_of(const AlphabetSpec& s, const std::vector<Isometry>& group) {
  std::set<Matrix> out;
  for (const auto& g : group) out.insert(to_matrix(s, g));
  return out;
}

inline Poset vee() { return Poset::from_covers({"1", "2", "3"}, {{"1", "2"}, {"1", "3"}}); }
inline Poset wedge() { return Poset::from_covers({"1", "2", "3"}, {{"1", "3"}, {"2", "3"}}); }
inline Poset chain_plus_point() { return Poset::from_covers({"a", "b", "c"}, {{"a", "b"}}); }

/// Collects failures; the criterion passes when none were recorded.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ = failed_ || !ok;
  }
  bool passed() const { return !failed_; }
  std::string summary(const std::string& extra = "") const {
    std::ostringstream out;
    out << checks_ << " checks";
    if (!extra.empty()) out << ", " << extra;
    for (const auto& f : failures_) out << "; FAILED: " << f;
    return out.str();
  }

 private:
  std::size_t checks_ = 0;
  bool failed_ = false;
  std::vector<std::string> failures_;
};

inline std::string describe(const Poset& p) {
  std::string out = "{";
  for (auto [lo, hi] : p.covers()) out += (out.size() > 1 ? "," : "") + p.label(lo) + "<" + p.label(hi);
  return out + "} on " + std::to_string(p.size());
}

}  // namespace detail

/// Brute-force MEP equals hierarchy, condition E and the level threshold for
/// every labeled poset on at most three elements, q = 2, unit weights and dims.
inline Result mep_predicate_equivalence(const Options& o) {
  detail::Tally t;
  int holds = 0, total = 0;
  for (const auto& p : detail::posets_up_to(o.small ? 2 : 3)) {
    MetricSpace m(p, AlphabetSpec::uniform(2, p.size()));
    auto brute = mep_brute_force(m);
    auto report = condition_report(m);
    bool predicate = is_hierarchical(p).hierarchical && report.e.value && threshold_condition(m, false).value;
    t.check(brute.holds == predicate, "poset " + detail::describe(p));
    t.check(mep_predicate(m).holds == predicate, "closed form for " + detail::describe(p));
    if (!brute.holds) t.check(replay_counterexample(m, MepMode::Weight, *brute.counterexample), "replay");
    holds += brute.holds;
    ++total;
  }
  return {1, "MEP equals the closed-form predicate", t.passed(),
          t.summary(std::to_string(total) + " posets, MEP holds on " + std::to_string(holds))};
}

/// Antichain of planes over F_2: MEP holds for two coordinates and fails
/// for three, the failure found among codes of dimension at most three.
inline Result threshold_sharpness(const Options&) {
  detail::Tally t;
  MetricSpace two(Poset::antichain(2), AlphabetSpec::uniform(2, 2, 2));
  auto v2 = mep_brute_force(two);
  t.check(v2.holds && v2.exhaustive, "n = 2 should hold");
  MetricSpace three(Poset::antichain(3), AlphabetSpec::uniform(2, 3, 2));
  auto v3 = mep_brute_force(three, MepMode::Weight, {}, 3);
  t.check(!v3.holds, "n = 3 should fail");
  std::string where;
  if (v3.counterexample) {
    t.check(replay_counterexample(three, MepMode::Weight, *v3.counterexample), "counterexample replay");
    where = "counterexample on a code of dimension " + std::to_string(v3.counterexample->code.dimension());
  }
  return {2, "threshold sharpness for k = 2 over F_2", t.passed(), t.summary(where)};
}

/// zeta over subspace lattices equals prod (q^i + 1); constructed minimal
/// solutions replay and exhaustive search confirms minimality over F_2^2.
inline Result zeta_formula_check(const Options&) {
  detail::Tally t;
  std::string values;
  for (auto [q, e, k] : std::vector<std::array<int, 3>>{{2, 1, 2}, {3, 1, 2}, {5, 1, 2}, {2, 2, 3}}) {
    auto s = subspace_lattice(q, k);
    MoebiusTable mu(s.lattice);
    std::vector<int> tops;
    for (int y = 0; y < s.lattice.size(); ++y)
      if (s.dims[y] > e) tops.push_back(y);
    auto best = minimal_length_over(mu, tops);
    auto z = zeta(q, k, e);
    t.check(z == zeta_formula(q, e) && z == best.length, "zeta formula at q=" + std::to_string(q));
    auto sol = construct_minimal_solution(mu, best.witness);
    t.check(is_solution(s.lattice.ground(), sol) && !is_trivial(sol) && sol.length() == z, "constructed solution");
    values += (values.empty() ? "" : ",") + std::to_string(z);
  }
  auto plane = subspace_lattice(2, 2);
  t.check(exhaustive_minimal_length(plane.lattice, 4) == 3, "exhaustive minimality over F_2^2");
  return {3, "zeta equals the product formula", t.passed(), t.summary("values " + values)};
}

/// Structured isometry group equals the brute-force weight-preserving
/// automorphisms; zeta is a homomorphism with kernel GL_P and the admissible image.
inline Result isometry_group_structure(const Options& o) {
  detail::Tally t;
  std::vector<MetricSpace> grid;
  for (int q : {2, 3}) {
    std::vector<std::pair<Poset, std::vector<int>>> shapes{{Poset::chain(1), {1}},
                                                           {Poset::chain(1), {2}},
                                                           {Poset::chain(2), {1, 1}},
                                                           {Poset::antichain(2), {1, 1}},
                                                           {Poset::chain(2), {1, 2}},
                                                           {Poset::chain(2), {2, 1}},
                                                           {Poset::antichain(2), {1, 2}}};
    if (!o.small)
      for (const auto& p : {Poset::chain(3), Poset::antichain(3), detail::vee(), detail::wedge()})
        shapes.emplace_back(p, std::vector<int>{1, 1, 1});
    for (const auto& [p, dims] : shapes) {
      const int n = p.size();
      std::vector<Rational> mixed;
      for (int i = 0; i < n; ++i) mixed.push_back(i == 1 ? Rational(3, 2) : Rational(1));
      AlphabetSpec s(FieldSpec(q), dims);
      grid.emplace_back(p, WeightFunction::uniform(n), s);
      grid.emplace_back(p, powers_of_two_weight(p), s);
      grid.emplace_back(p, WeightFunction(mixed), s);
    }
  }
  std::size_t elements = 0;
  for (const auto& m : grid) {
    auto structured = weight_isometry_group(m);
    auto brute = brute_force_isometry_group(m);
    auto mats = detail::matrices_of(m.space, structured);
    t.check(mats.size() == structured.size() && mats == std::set<Matrix>(brute.begin(), brute.end()),
            "group equality on " + detail::describe(m.poset));
    auto sf = weight_sum_functional(m.poset, m.omega);
    std::set<Permutation> image;
    std::set<Matrix> kernel;
    for (const auto& g : structured) {
      auto mat = to_matrix(m.space, g);
      auto d = decompose(m.space, m.poset, sf, mat);
      image.insert(d.lambda);
      if (d.lambda == identity_permutation(m.poset.size())) kernel.insert(mat);
    }
    for (std::size_t a = 0; a < structured.size(); a += 1 + structured.size() / 16)
      for (std::size_t b = 0; b < structured.size(); b += 1 + structured.size() / 16) {
        auto both = compose(m.space, m.poset, structured[a], structured[b]);
        t.check(decompose(m.space, m.poset, sf, to_matrix(m.space, both)).lambda ==
                    compose(structured[a].lambda, structured[b].lambda),
                "homomorphism");
      }
    auto admissible = admissible_automorphisms(m.poset, sf, m.space);
    t.check(image == std::set<Permutation>(admissible.begin(), admissible.end()), "image equals admissible set");
    t.check(kernel == detail::matrices_of(m.space, p_support_group(m.space, m.poset)), "kernel equals GL_P");
    elements += structured.size();
  }
  return {4, "isometry group structure", t.passed(),
          t.summary(std::to_string(grid.size()) + " instances, " + std::to_string(elements) + " group elements")};
}

/// Canonical decomposition replays for every code over every hierarchical
/// poset on at most three elements.
inline Result canonical_decomposition_check(const Options& o) {
  detail::Tally t;
  std::size_t codes = 0;
  for (const auto& p : detail::posets_up_to(o.small ? 2 : 3)) {
    if (!is_hierarchical(p).hierarchical) continue;
    auto s = AlphabetSpec::uniform(2, p.size());
    for (const auto& c : enumerate_codes(s.field(), s.length())) {
      auto d = canonical_decomposition(s, p, c);
      auto check = validate_decomposition(s, p, c, d);
      t.check(check.ok, detail::describe(p) + ": " + check.failure);
      ++codes;
    }
  }
  return {5, "canonical decomposition replays", t.passed(), t.summary(std::to_string(codes) + " codes")};
}

/// MacWilliams identity for the 3-chain and 3-antichain; refuted with a
/// replayable witness for a chain of two plus an isolated point.
inline Result macwilliams_dichotomy(const Options&) {
  detail::Tally t;
  for (const auto& p : {Poset::chain(3), Poset::antichain(3)})
    t.check(macwilliams_identity_check(MetricSpace(p, AlphabetSpec::uniform(2, 3))).holds, detail::describe(p));
  MetricSpace bad(detail::chain_plus_point(), AlphabetSpec::uniform(2, 3));
  auto r = macwilliams_identity_check(bad);
  t.check(!r.holds && r.witness.has_value(), "identity should fail");
  if (r.witness) t.check(replay_macwilliams_witness(bad, r.witness->first, r.witness->second), "witness replay");
  return {6, "MacWilliams identity dichotomy", t.passed(), t.summary()};
}

/// l(l(Q)) = Q for hierarchical unit-weight instances and not for the
/// non-hierarchical one; the verdict does not depend on the character.
inline Result fourier_reflexivity(const Options& o) {
  detail::Tally t;
  for (const auto& p : detail::posets_up_to(o.small ? 2 : 3)) {
    MetricSpace m(p, AlphabetSpec::uniform(2, p.size()));
    bool hier = is_hierarchical(p).hierarchical;
    auto q = weight_partition(m);
    t.check(is_fourier_reflexive(m.space.field(), m.space.length(), q) == hier, detail::describe(p));
    t.check(dual_weight_partition(m).block_count() == q.block_count(), "partition sizes");
  }
  for (int q : {3, 5}) {
    for (const auto& p : {Poset::chain(2), detail::chain_plus_point()}) {
      MetricSpace m(p, AlphabetSpec::uniform(q, p.size()));
      auto audit = character_independence_audit(m.space.field(), m.space.length(), weight_partition(m));
      t.check(audit.independent, "character independence at q=" + std::to_string(q));
    }
  }
  return {7, "Fourier-reflexivity and character independence", t.passed(), t.summary()};
}

/// Unit-weight UDP equals hierarchy on every labeled poset with at most five elements.
inline Result udp_equals_hierarchy(const Options& o) {
  detail::Tally t;
  std::size_t count = 0;
  for (const auto& p : detail::posets_up_to(o.small ? 2 : 5)) {
    t.check(udp_check(p, WeightFunction::uniform(p.size())).holds == is_hierarchical(p).hierarchical,
            detail::describe(p));
    ++count;
  }
  return {8, "unit-weight UDP equals hierarchy", t.passed(), t.summary(std::to_string(count) + " posets")};
}

/// Moebius indicator identity on random intersection-closed families and
/// on all subspace lattices with at most 81 points.
inline Result moebius_identities(const Options& o) {
  detail::Tally t;
  std::mt19937 rng(o.seed);
  const int families = o.small ? 50 : 400;
  for (int i = 0; i < families; ++i) {
    int n = 1 + i % 5;
    auto l = random_intersection_closed(rng, n, 1 + i % 6);
    MoebiusTable mu(l);
    auto sc = singleton_closures(l);
    for (int y = 0; y < l.size(); ++y) t.check(moebius_indicator_identity(mu, y, sc).ok(), "random family");
  }
  int lattices = 0;
  for (int q = 2; q <= 81; ++q) {
    if (!FieldSpec::is_prime(q)) continue;
    for (int k = 1; *checked_power(q, k, ~std::uint64_t{0}) <= 81; ++k) {
      if (o.small && *checked_power(q, k, ~std::uint64_t{0}) > 27) break;
      auto s = subspace_lattice(q, k);
      MoebiusTable mu(s.lattice);
      auto sc = singleton_closures(s.lattice);
      for (int y = 0; y < s.lattice.size(); ++y)
        t.check(moebius_indicator_identity(mu, y, sc).ok(),
                "subspace lattice q=" + std::to_string(q) + " k=" + std::to_string(k));
      ++lattices;
    }
  }
  return {9, "Moebius indicator identities", t.passed(),
          t.summary(std::to_string(families) + " random families, " + std::to_string(lattices) + " subspace lattices")};
}

/// Powers-of-two weights: weight classes equal P-support classes and the
/// weight isometry group equals GL_P.
inline Result powers_of_two_bridge(const Options& o) {
  detail::Tally t;
  for (const auto& p : detail::posets_up_to(o.small ? 2 : 3)) {
    MetricSpace m(p, powers_of_two_weight(p), AlphabetSpec::uniform(2, p.size()));
    WeightIndex index(m);
    std::vector<std::uint32_t> closures(index.size());
    for (std::uint32_t v = 0; v < index.size(); ++v) closures[v] = index.closure(v).bits();
    std::vector<int> classes(index.size());
    for (std::uint32_t v = 0; v < index.size(); ++v) classes[v] = index.weight_class(v);
    bool same = true;
    for (std::uint32_t a = 0; a < index.size(); ++a)
      for (std::uint32_t b = 0; b < index.size(); ++b)
        same = same && ((classes[a] == classes[b]) == (closures[a] == closures[b]));
    t.check(same, "classes on " + detail::describe(p));
    t.check(detail::matrices_of(m.space, weight_isometry_group(m)) ==
                detail::matrices_of(m.space, p_support_group(m.space, p)),
            "groups on " + detail::describe(p));
  }
  return {10, "powers-of-two weights recover P-support", t.passed(), t.summary()};
}

using Criterion = std::function<Result(const Options&)>;

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{mep_predicate_equivalence, threshold_sharpness,    zeta_formula_check,
                                          isometry_group_structure,  canonical_decomposition_check,
                                          macwilliams_dichotomy,     fourier_reflexivity,    udp_equals_hierarchy,
                                          moebius_identities,        powers_of_two_bridge};
  return all;
}

/// Runs criterion id (1-based), timing it and turning exceptions into failures.
inline Result run(int id, const Options& o) {
  auto start = std::chrono::steady_clock::now();
  Result r;
  try {
    r = criteria().at(static_cast<std::size_t>(id - 1))(o);
  } catch (const std::exception& e) {
    r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline std::string format_line(const Result& r) {
  std::ostringstream out;
  out << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << " (" << r.detail << "; ";
  out.precision(2);
  out << std::fixed << r.seconds << " s)";
  return out.str();
}

}  // namespace wpmep::acceptance
