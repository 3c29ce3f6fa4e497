#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wpmep/errors.hpp"
#include "wpmep/mep.hpp"
#include "wpmep/space.hpp"

namespace wpmep {

/// Element of Z[zeta_p] in the basis zeta^0 .. zeta^{p-2}.
class CyclotomicInteger {
 public:
  explicit CyclotomicInteger(int p) : p_(p), coeffs_(p - 1, 0) {}

  /// Sum of counts[e] * zeta^e for e in [0, p), reduced with
  /// zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}).
  static CyclotomicInteger from_exponent_counts(int p, const std::vector<std::int64_t>& counts) {
    if (static_cast<int>(counts.size()) != p) throw DomainError("need one count per exponent");
    CyclotomicInteger out(p);
    for (int e = 0; e < p - 1; ++e) out.coeffs_[e] = counts[e] - counts[p - 1];
    return out;
  }
  static CyclotomicInteger integer(int p, std::int64_t n) {
    std::vector<std::int64_t> counts(p, 0);
    counts[0] = n;
    return from_exponent_counts(p, counts);
  }

  int prime() const { return p_; }
  const std::vector<std::int64_t>& coefficients() const { return coeffs_; }
  bool is_integer() const {
    for (std::size_t e = 1; e < coeffs_.size(); ++e)
      if (coeffs_[e] != 0) return false;
    return true;
  }
  friend CyclotomicInteger operator+(CyclotomicInteger a, const CyclotomicInteger& b) {
    if (a.p_ != b.p_) throw DomainError("cyclotomic integers over different primes");
    for (std::size_t e = 0; e < a.coeffs_.size(); ++e) a.coeffs_[e] += b.coeffs_[e];
    return a;
  }
  friend bool operator==(const CyclotomicInteger&, const CyclotomicInteger&) = default;
  friend auto operator<=>(const CyclotomicInteger&, const CyclotomicInteger&) = default;

  std::string to_string() const {
    std::string out;
    for (std::size_t e = 0; e < coeffs_.size(); ++e) {
      if (coeffs_[e] == 0) continue;
      if (!out.empty()) out += coeffs_[e] < 0 ? " - " : " + ";
      else if (coeffs_[e] < 0) out += "-";
      auto mag = coeffs_[e] < 0 ? -coeffs_[e] : coeffs_[e];
      if (e == 0 || mag != 1) out += std::to_string(mag);
      if (e > 0) out += "z" + (e > 1 ? "^" + std::to_string(e) : std::string());
    }
    return out.empty() ? "0" : out;
  }

 private:
  int p_;
  std::vector<std::int64_t> coeffs_;
};

/// Partition of the vector indices 0..|H|-1. Blocks are numbered by their
/// smallest member, so equal partitions have equal block_of vectors.
class Partition {
 public:
  Partition() = default;

  template <class Key>
  static Partition from_keys(const std::vector<Key>& keys) {
    std::map<Key, int> ids;
    Partition out;
    out.block_of_.reserve(keys.size());
    for (const auto& k : keys) {
      auto [it, fresh] = ids.emplace(k, static_cast<int>(ids.size()));
      out.block_of_.push_back(it->second);
    }
    out.count_ = static_cast<int>(ids.size());
    return out;
  }

  std::size_t universe() const { return block_of_.size(); }
  int block_count() const { return count_; }
  int block_of(std::uint32_t v) const { return block_of_.at(v); }
  const std::vector<int>& labels() const { return block_of_; }
  std::vector<std::vector<std::uint32_t>> blocks() const {
    std::vector<std::vector<std::uint32_t>> out(count_);
    for (std::uint32_t v = 0; v < block_of_.size(); ++v) out[block_of_[v]].push_back(v);
    return out;
  }
  /// Whether every block of this partition lies inside a block of other.
  bool refines(const Partition& other) const {
    std::vector<int> image(count_, -1);
    for (std::size_t v = 0; v < block_of_.size(); ++v) {
      int& slot = image[block_of_[v]];
      if (slot < 0) slot = other.block_of_[v];
      else if (slot != other.block_of_[v]) return false;
    }
    return true;
  }
  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> block_of_;
  int count_ = 0;
};

/// Vectors of the ambient space grouped by (P,w)-weight.
inline Partition weight_partition(const MetricSpace& m, const Bounds& bounds = {}) {
  WeightIndex index(m, bounds);
  std::vector<int> keys(index.size());
  for (std::uint32_t v = 0; v < index.size(); ++v) keys[v] = index.weight_class(v);
  return Partition::from_keys(keys);
}

/// Same weight function over the dual poset.
inline Partition dual_weight_partition(const MetricSpace& m, const Bounds& bounds = {}) {
  return weight_partition(MetricSpace(dual(m.poset), m.omega, m.space), bounds);
}

/// Sum over the block of zeta^(mult * <alpha, beta>).
inline CyclotomicInteger character_sum(const FieldSpec& f, const std::vector<Vec>& block, const Vec& alpha,
                                       int mult = 1) {
  std::vector<std::int64_t> counts(f.q(), 0);
  for (const auto& beta : block) ++counts[f.mul(mult, dot(f, alpha, beta))];
  return CyclotomicInteger::from_exponent_counts(f.q(), counts);
}

/// The partition l(G): alpha and gamma share a block when their character
/// sums agree on every block of G. `mult` swaps the character x -> zeta^x
/// for x -> zeta^(mult x).
inline Partition dual_partition(const FieldSpec& f, int length, const Partition& g, int mult = 1) {
  if (mult % f.q() == 0) throw DomainError("character multiplier must be nonzero");
  const auto total = static_cast<std::uint32_t>(g.universe());
  std::vector<Vec> vectors(total);
  for (std::uint32_t v = 0; v < total; ++v) vectors[v] = decode(f, v, length);
  const int p = f.q();
  const int blocks = g.block_count();
  std::vector<std::vector<std::int64_t>> signatures(total);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(blocks) * p);
  for (std::uint32_t a = 0; a < total; ++a) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::uint32_t b = 0; b < total; ++b)
      ++counts[static_cast<std::size_t>(g.block_of(b)) * p + f.mul(mult % p, dot(f, vectors[a], vectors[b]))];
    auto& sig = signatures[a];
    sig.reserve(static_cast<std::size_t>(blocks) * (p - 1));
    for (int blk = 0; blk < blocks; ++blk) {
      const auto* c = &counts[static_cast<std::size_t>(blk) * p];
      for (int e = 0; e < p - 1; ++e) sig.push_back(c[e] - c[p - 1]);
    }
  }
  return Partition::from_keys(signatures);
}

inline bool is_fourier_reflexive(const FieldSpec& f, int length, const Partition& g, int mult = 1) {
  return dual_partition(f, length, dual_partition(f, length, g, mult), mult) == g;
}

/// Number of codewords in each block.
inline std::vector<std::uint64_t> distribution(const FieldSpec& f, const LinearCode& c, const Partition& g) {
  std::vector<std::uint64_t> out(g.block_count(), 0);
  for (auto idx : codeword_indices(f, c)) ++out[g.block_of(idx)];
  return out;
}

struct MacWilliamsCheck {
  bool holds = true;
  /// Two codes with equal dual-poset distribution whose duals differ.
  std::optional<std::pair<LinearCode, LinearCode>> witness;
  std::uint64_t codes_checked = 0;
};

/// Codes are grouped by their distribution over the dual-poset partition;
/// inside a group all dual codes must share one distribution over the
/// partition of the original poset.
inline MacWilliamsCheck macwilliams_identity_check(const MetricSpace& m, const Bounds& bounds = {}) {
  const auto& f = m.space.field();
  auto q_p = weight_partition(m, bounds);
  auto q_bar = dual_weight_partition(m, bounds);
  std::map<std::vector<std::uint64_t>, std::pair<LinearCode, std::vector<std::uint64_t>>> groups;
  MacWilliamsCheck out;
  for (const auto& c : enumerate_codes(f, m.space.length(), bounds)) {
    ++out.codes_checked;
    auto key = distribution(f, c, q_bar);
    auto dual_dist = distribution(f, dual_code(f, c), q_p);
    auto [it, fresh] = groups.emplace(key, std::pair{c, dual_dist});
    if (!fresh && it->second.second != dual_dist) {
      out.holds = false;
      out.witness = std::pair{it->second.first, c};
      return out;
    }
  }
  return out;
}

/// Replays a MacWilliams witness pair.
inline bool replay_macwilliams_witness(const MetricSpace& m, const LinearCode& a, const LinearCode& b,
                                       const Bounds& bounds = {}) {
  const auto& f = m.space.field();
  auto q_p = weight_partition(m, bounds);
  auto q_bar = dual_weight_partition(m, bounds);
  return distribution(f, a, q_bar) == distribution(f, b, q_bar) &&
         distribution(f, dual_code(f, a), q_p) != distribution(f, dual_code(f, b), q_p);
}

struct Statements {
  std::array<bool, 8> s{};  ///< s[1]..s[7]; s[0] unused
  bool hierarchical = false;
  bool integer_valued = false;
  bool unit_weight = false;
  bool partition_sizes_match = false;  ///< |Q(H, dual P, w)| = |Q(H, P, w)|
  bool mep_exhaustive = true;
  std::vector<std::string> violated;   ///< implications that failed
  bool consistent() const { return violated.empty(); }
};

inline const char* statement_name(int i) {
  static const char* names[] = {"",
                                "MEP for the weight",
                                "weight spheres are single orbits",
                                "condition D",
                                "dual-poset partition equals l of the partition",
                                "MacWilliams identity",
                                "partition is Fourier-reflexive",
                                "level-and-weight threshold"};
  return names[i];
}

/// Evaluates the seven MEP/MacWilliams statements and checks the implication
/// graph between them. mep_max_dim limits the brute-force MEP scan.
inline Statements statement_audit(const MetricSpace& m, const Bounds& bounds = {}, int mep_max_dim = -1) {
  const auto& f = m.space.field();
  const int n = m.space.length();
  Statements out;
  out.hierarchical = is_hierarchical(m.poset).hierarchical;
  out.integer_valued = m.omega.is_integer_valued();
  out.unit_weight = m.omega.is_identically_one();
  auto verdict = mep_brute_force(m, MepMode::Weight, bounds, mep_max_dim);
  out.mep_exhaustive = verdict.exhaustive;
  out.s[1] = verdict.holds;
  out.s[2] = single_orbit_check(m, bounds).holds;
  auto report = condition_report(m, bounds);
  out.s[3] = report.d.value;
  auto q_p = weight_partition(m, bounds);
  auto q_bar = dual_weight_partition(m, bounds);
  auto l_q = dual_partition(f, n, q_p);
  out.s[4] = q_bar == l_q;
  out.s[5] = macwilliams_identity_check(m, bounds).holds;
  out.s[6] = dual_partition(f, n, l_q) == q_p;
  out.s[7] = threshold_condition(m, true).value;
  out.partition_sizes_match = q_bar.block_count() == q_p.block_count();

  auto& s = out.s;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) out.violated.push_back(what);
  };
  // A scan limited to low dimensions can only refute MEP.
  if (out.mep_exhaustive || !s[1]) need(!s[1] || s[2], "(1) => (2)");
  need(s[2] == s[3], "(2) <=> (3)");
  need(!s[3] || s[4], "(3) => (4)");
  need(s[4] == s[5], "(4) <=> (5)");
  need(!s[5] || s[6], "(5) => (6)");
  if (out.hierarchical && (out.mep_exhaustive || !s[1])) need(s[1] == (s[3] && s[7]), "(1) <=> (3) and (7)");
  if ((out.hierarchical && out.integer_valued) || out.unit_weight)
    for (int i = 3; i <= 6; ++i) need(s[2] == s[i], "(2) <=> (" + std::to_string(i) + ")");
  if (out.unit_weight) {
    need(report.d.value == report.e.value, "condition D equals condition E for unit weights");
    if (out.mep_exhaustive || !s[1]) need(s[1] == (report.e.value && s[7]), "(1) <=> E and (7)");
  }
  return out;
}

struct CharacterAudit {
  bool independent = true;
  int reference_multiplier = 1;
  std::vector<std::pair<int, bool>> verdicts;  ///< (multiplier, reflexive)
};

/// Fourier-reflexivity with respect to every nontrivial character x -> zeta^(s x).
inline CharacterAudit character_independence_audit(const FieldSpec& f, int length, const Partition& g) {
  CharacterAudit out;
  for (int s = 1; s < f.q(); ++s) out.verdicts.emplace_back(s, is_fourier_reflexive(f, length, g, s));
  for (const auto& [s, v] : out.verdicts) out.independent = out.independent && v == out.verdicts.front().second;
  return out;
}

}  // namespace wpmep
