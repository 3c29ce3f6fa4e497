#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "wpmep/fourier.hpp"

namespace wpmep {
namespace {

Poset vee_free() { return Poset::from_covers({"a", "b", "c"}, {{"a", "b"}}); }

// Oracle: l(G) from floating-point character sums, grouped with a tolerance.
Partition dual_partition_numeric(const FieldSpec& f, int length, const Partition& g) {
  const auto total = static_cast<std::uint32_t>(g.universe());
  const double two_pi = 2 * std::numbers::pi;
  auto blocks = g.blocks();
  std::vector<std::vector<std::complex<double>>> sig(total);
  for (std::uint32_t a = 0; a < total; ++a) {
    Vec alpha = decode(f, a, length);
    for (const auto& b : blocks) {
      std::complex<double> s = 0;
      for (auto beta : b) s += std::polar(1.0, two_pi * dot(f, alpha, decode(f, beta, length)) / f.q());
      sig[a].push_back(s);
    }
  }
  std::vector<int> label(total, -1);
  int next = 0;
  for (std::uint32_t a = 0; a < total; ++a) {
    if (label[a] >= 0) continue;
    label[a] = next;
    for (std::uint32_t b = a + 1; b < total; ++b) {
      bool same = true;
      for (std::size_t i = 0; i < blocks.size() && same; ++i) same = std::abs(sig[a][i] - sig[b][i]) < 1e-6;
      if (same) label[b] = next;
    }
    ++next;
  }
  return Partition::from_keys(label);
}

TEST(Cyclotomic, Reduction) {
  for (int p : {2, 3, 5, 7}) {
    EXPECT_EQ(CyclotomicInteger::from_exponent_counts(p, std::vector<std::int64_t>(p, 1)), CyclotomicInteger(p));
    EXPECT_TRUE(CyclotomicInteger::integer(p, 4).is_integer());
  }
  std::vector<std::int64_t> counts{0, 0, 1};
  auto z2 = CyclotomicInteger::from_exponent_counts(3, counts);
  EXPECT_EQ(z2.coefficients(), (std::vector<std::int64_t>{-1, -1}));
  EXPECT_EQ(z2.to_string(), "-1 - z");
  EXPECT_EQ((z2 + CyclotomicInteger::integer(3, 1)).to_string(), "-z");
}

TEST(CharacterSum, Examples) {
  FieldSpec f(3);
  std::vector<Vec> all;
  for (std::uint32_t v = 0; v < 9; ++v) all.push_back(decode(f, v, 2));
  EXPECT_EQ(character_sum(f, all, {0, 0}), CyclotomicInteger::integer(3, 9));
  EXPECT_EQ(character_sum(f, all, {1, 2}), CyclotomicInteger(3));
  LinearCode c(f, 2, {{1, 1}});
  auto words = enumerate_codewords(f, c);
  for (const auto& alpha : enumerate_codewords(f, dual_code(f, c)))
    EXPECT_EQ(character_sum(f, words, alpha), CyclotomicInteger::integer(3, 3));
  EXPECT_EQ(character_sum(f, words, {1, 0}), CyclotomicInteger(3));
}

TEST(WeightPartition, Examples) {
  EXPECT_EQ(weight_partition(MetricSpace(Poset::chain(1), AlphabetSpec::uniform(5, 1))).block_count(), 2);
  EXPECT_EQ(weight_partition(MetricSpace(Poset::antichain(4), AlphabetSpec::uniform(2, 4))).block_count(), 5);
  auto chain = weight_partition(MetricSpace(Poset::chain(2), AlphabetSpec::uniform(2, 2)));
  EXPECT_EQ(chain.block_count(), 3);
  std::vector<std::size_t> sizes;
  for (const auto& b : chain.blocks()) sizes.push_back(b.size());
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 1, 2}));
  auto dual = dual_weight_partition(MetricSpace(Poset::chain(2), AlphabetSpec::uniform(2, 2)));
  EXPECT_EQ(dual.block_count(), 3);
  EXPECT_NE(dual, chain);
}

TEST(DualPartition, Examples) {
  FieldSpec f(2);
  auto whole = Partition::from_keys(std::vector<int>(8, 0));
  auto l = dual_partition(f, 3, whole);
  EXPECT_EQ(l.block_count(), 2);
  EXPECT_EQ(l.blocks()[0], std::vector<std::uint32_t>{0});
  auto hamming = weight_partition(MetricSpace(Poset::antichain(3), AlphabetSpec::uniform(3, 3)));
  auto lh = dual_partition(FieldSpec(3), 3, hamming);
  EXPECT_EQ(lh.block_count(), hamming.block_count());
  EXPECT_EQ(lh, hamming);
}

TEST(DualPartition, MatchesNumericOracle) {
  std::vector<MetricSpace> cases{
      MetricSpace(vee_free(), AlphabetSpec::uniform(2, 3)),
      MetricSpace(Poset::chain(2), AlphabetSpec::uniform(3, 2)),
      MetricSpace(Poset::antichain(2), WeightFunction({Rational(1), Rational(2)}), AlphabetSpec(FieldSpec(5), {1, 1})),
      MetricSpace(Poset::chain(2), AlphabetSpec(FieldSpec(2), {2, 1})),
  };
  for (const auto& m : cases) {
    const auto& f = m.space.field();
    auto g = weight_partition(m);
    EXPECT_EQ(dual_partition(f, m.space.length(), g), dual_partition_numeric(f, m.space.length(), g));
    auto gd = dual_weight_partition(m);
    EXPECT_EQ(dual_partition(f, m.space.length(), gd), dual_partition_numeric(f, m.space.length(), gd));
  }
}

TEST(DualPartition, PreservesRefinementOnCoarsenings) {
  std::mt19937 rng(3);
  FieldSpec f(2);
  MetricSpace m(Poset::antichain(4), AlphabetSpec::uniform(2, 4));
  auto fine = weight_partition(m);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> merge(0, 2);
    std::vector<int> map(fine.block_count());
    for (auto& x : map) x = merge(rng);
    std::vector<int> keys;
    for (auto b : fine.labels()) keys.push_back(map[b]);
    auto coarse = Partition::from_keys(keys);
    ASSERT_TRUE(fine.refines(coarse));
    // Coarse block sums are sums of fine block sums.
    EXPECT_TRUE(dual_partition(f, 4, fine).refines(dual_partition(f, 4, coarse)));
  }
}

TEST(FourierReflexive, HierarchicalVersusNot) {
  for (const auto& p : {Poset::chain(3), Poset::antichain(3),
                        Poset::from_covers({"1", "2", "3"}, {{"1", "3"}, {"2", "3"}})}) {
    MetricSpace m(p, AlphabetSpec::uniform(2, 3));
    auto q = weight_partition(m);
    EXPECT_TRUE(is_fourier_reflexive(m.space.field(), 3, q));
    EXPECT_EQ(dual_weight_partition(m).block_count(), q.block_count());
  }
  MetricSpace bad(vee_free(), AlphabetSpec::uniform(2, 3));
  EXPECT_FALSE(is_fourier_reflexive(bad.space.field(), 3, weight_partition(bad)));
}

TEST(FourierReflexive, CharacterChoiceIndependence) {
  for (const auto& m : {MetricSpace(vee_free(), AlphabetSpec::uniform(3, 3)),
                        MetricSpace(Poset::chain(2), AlphabetSpec::uniform(5, 2)),
                        MetricSpace(Poset::antichain(2), AlphabetSpec(FieldSpec(3), {1, 2}))}) {
    auto audit = character_independence_audit(m.space.field(), m.space.length(), weight_partition(m));
    EXPECT_TRUE(audit.independent);
    EXPECT_EQ(audit.verdicts.size(), static_cast<std::size_t>(m.space.q() - 1));
  }
}

TEST(Distribution, SumsToCodeSize) {
  MetricSpace m(vee_free(), AlphabetSpec::uniform(2, 3));
  auto g = weight_partition(m);
  for (const auto& c : enumerate_codes(m.space.field(), 3)) {
    std::uint64_t total = 0;
    for (auto x : distribution(m.space.field(), c, g)) total += x;
    EXPECT_EQ(total, std::uint64_t{1} << c.dimension());
  }
}

TEST(MacWilliams, Dichotomy) {
  EXPECT_TRUE(macwilliams_identity_check(MetricSpace(Poset::antichain(3), AlphabetSpec::uniform(2, 3))).holds);
  EXPECT_TRUE(macwilliams_identity_check(MetricSpace(Poset::chain(3), AlphabetSpec::uniform(2, 3))).holds);
  MetricSpace bad(vee_free(), AlphabetSpec::uniform(2, 3));
  auto r = macwilliams_identity_check(bad);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(replay_macwilliams_witness(bad, r.witness->first, r.witness->second));
  EXPECT_LE(r.codes_checked, 16u);
}

TEST(Audit, Examples) {
  auto hier = statement_audit(MetricSpace(Poset::from_covers({"1", "2", "3"}, {{"1", "3"}, {"2", "3"}}),
                                          AlphabetSpec::uniform(2, 3)));
  for (int i = 1; i <= 7; ++i) EXPECT_TRUE(hier.s[i]) << statement_name(i);
  EXPECT_TRUE(hier.consistent());

  auto planes = statement_audit(MetricSpace(Poset::antichain(3), AlphabetSpec::uniform(2, 3, 2)));
  EXPECT_FALSE(planes.s[1]);
  for (int i = 2; i <= 6; ++i) EXPECT_TRUE(planes.s[i]) << statement_name(i);
  EXPECT_FALSE(planes.s[7]);
  EXPECT_TRUE(planes.consistent());

  auto bad = statement_audit(MetricSpace(vee_free(), AlphabetSpec::uniform(2, 3)));
  for (int i = 1; i <= 6; ++i) EXPECT_FALSE(bad.s[i]) << statement_name(i);
  EXPECT_TRUE(bad.consistent());
}

TEST(Audit, ImplicationGraphOnSmallInstances) {
  std::mt19937 rng(37);
  std::uniform_int_distribution<int> num(1, 3);
  for (const auto& p : all_labeled_posets(3)) {
    std::vector<Rational> w;
    for (int i = 0; i < 3; ++i) w.push_back(Rational(num(rng), num(rng)));
    for (const auto& m : {MetricSpace(p, AlphabetSpec::uniform(2, 3)), MetricSpace(p, WeightFunction(w),
                                                                                   AlphabetSpec::uniform(2, 3))}) {
      auto a = statement_audit(m);
      EXPECT_TRUE(a.consistent()) << (a.violated.empty() ? "" : a.violated.front());
      EXPECT_TRUE(a.partition_sizes_match);
    }
  }
}

}  // namespace
}  // namespace wpmep
