#include <random>
#include <set>

#include <gtest/gtest.h>

#include "wpmep/space.hpp"

namespace wpmep {
namespace {

std::vector<Vec> all_vectors(const FieldSpec& f, int n) {
  std::vector<Vec> out;
  std::uint32_t total = 1;
  for (int i = 0; i < n; ++i) total *= f.q();
  for (std::uint32_t i = 0; i < total; ++i) out.push_back(decode(f, i, n));
  return out;
}

// Oracle: count subsets of F_q^n that are closed under addition and scaling.
int count_subspaces_by_closure(const FieldSpec& f, int n) {
  auto vecs = all_vectors(f, n);
  int count = 0;
  for (std::uint32_t bits = 0; bits < (1u << vecs.size()); ++bits) {
    if (!(bits & 1u)) continue;
    bool closed = true;
    for (std::size_t a = 0; a < vecs.size() && closed; ++a) {
      if (!((bits >> a) & 1u)) continue;
      for (int s = 1; s < f.q() && closed; ++s)
        closed = (bits >> encode(f, scale(f, s, vecs[a]))) & 1u;
      for (std::size_t b = 0; b < vecs.size() && closed; ++b)
        if ((bits >> b) & 1u) closed = (bits >> encode(f, add(f, vecs[a], vecs[b]))) & 1u;
    }
    count += closed;
  }
  return count;
}

TEST(Field, PrimeValidation) {
  EXPECT_NO_THROW(FieldSpec(2));
  EXPECT_NO_THROW(FieldSpec(7));
  EXPECT_THROW(FieldSpec(4), ValidationError);
  EXPECT_THROW(FieldSpec(1), ValidationError);
  FieldSpec f(7);
  for (int a = 1; a < 7; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1);
  EXPECT_THROW(f.inv(0), DomainError);
}

TEST(Field, RrefInverseNullspace) {
  FieldSpec f(3);
  Matrix m(3, {{1, 2, 0}, {2, 1, 1}, {0, 0, 1}});
  auto red = rref(f, m);
  EXPECT_EQ(red.matrix.rows(), 2);
  auto ns = nullspace(f, m);
  EXPECT_EQ(ns.rows(), 1);
  for (int r = 0; r < m.rows(); ++r) EXPECT_EQ(dot(f, m.row(r), ns.row(0)), 0);
  EXPECT_FALSE(inverse(f, m));
  Matrix g(2, {{1, 1}, {0, 2}});
  auto gi = inverse(f, g);
  ASSERT_TRUE(gi);
  EXPECT_EQ(multiply(f, g, *gi), Matrix::identity(2));
}

TEST(Field, GeneralLinearOrder) {
  EXPECT_EQ(general_linear_order(2, 2), 6u);
  EXPECT_EQ(general_linear_order(3, 2), 48u);
  EXPECT_EQ(all_invertible_matrices(FieldSpec(2), 2, 1000).size(), 6u);
  EXPECT_EQ(all_invertible_matrices(FieldSpec(3), 2, 1000).size(), 48u);
  EXPECT_EQ(all_invertible_matrices(FieldSpec(2), 3, 1000).size(), 168u);
}

TEST(Support, Examples) {
  auto s = AlphabetSpec::uniform(2, 3);
  auto chain = Poset::chain(3);
  EXPECT_EQ(support(s, {0, 0, 0}), LabelSet{});
  EXPECT_EQ(support(s, {0, 0, 1}), LabelSet{2});
  EXPECT_EQ(p_support(s, chain, {0, 0, 1}), (LabelSet{0, 1, 2}));
  EXPECT_THROW(support(s, {0, 1}), DomainError);
}

TEST(Support, MatchesBlockScanOnMixedDims) {
  AlphabetSpec s(FieldSpec(3), {2, 1, 3});
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> digit(0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    Vec beta(s.length());
    for (auto& x : beta) x = digit(rng) * (digit(rng) == 0);
    LabelSet want;
    for (int i = 0; i < 3; ++i)
      if (!is_zero(s.block(beta, i))) want.insert(i);
    EXPECT_EQ(support(s, beta), want);
  }
}

TEST(Weight, Examples) {
  MetricSpace chain(Poset::chain(3), AlphabetSpec::uniform(2, 3));
  EXPECT_EQ(weight(chain, {0, 0, 0}), Rational(0));
  EXPECT_EQ(weight(chain, {0, 0, 1}), Rational(3));
  MetricSpace anti(Poset::antichain(3), AlphabetSpec(FieldSpec(3), {1, 2, 1}));
  for (const auto& v : all_vectors(FieldSpec(3), 4)) EXPECT_EQ(weight(anti, v), Rational(support(anti.space, v).size()));
}

TEST(Weight, MetricAxiomsExhaustive) {
  std::vector<MetricSpace> cases{
      MetricSpace(Poset::from_covers({"a", "b", "c"}, {{"a", "b"}}),
                  WeightFunction({Rational(1, 2), Rational(3), Rational(1)}), AlphabetSpec(FieldSpec(2), {1, 2, 1})),
      MetricSpace(Poset::chain(2), WeightFunction({Rational(2), Rational(5, 3)}), AlphabetSpec(FieldSpec(3), {1, 2})),
      MetricSpace(Poset::antichain(3), AlphabetSpec::uniform(3, 3)),
  };
  for (const auto& m : cases) {
    auto vecs = all_vectors(m.space.field(), m.space.length());
    ASSERT_LE(vecs.size(), 64u);
    for (const auto& a : vecs)
      for (const auto& b : vecs) {
        auto dab = distance(m, a, b);
        EXPECT_GE(dab, Rational(0));
        EXPECT_EQ(dab == Rational(0), a == b);
        EXPECT_EQ(dab, distance(m, b, a));
        for (const auto& c : vecs) EXPECT_LE(distance(m, a, c), dab + distance(m, b, c));
      }
  }
}

TEST(Weight, MonotoneInSupportAndUniformIsPWeight) {
  auto p = Poset::from_covers({"1", "2", "3", "4"}, {{"1", "3"}, {"2", "3"}, {"2", "4"}});
  MetricSpace m(p, WeightFunction({Rational(1), Rational(2, 3), Rational(7), Rational(1, 5)}),
                AlphabetSpec::uniform(2, 4));
  MetricSpace u(p, AlphabetSpec::uniform(2, 4));
  auto vecs = all_vectors(FieldSpec(2), 4);
  for (const auto& a : vecs) {
    EXPECT_EQ(weight(u, a), Rational(p_weight(u.space, p, a)));
    for (const auto& b : vecs) {
      if (support(m.space, a).is_subset_of(support(m.space, b))) {
        EXPECT_LE(weight(m, a), weight(m, b));
      }
    }
  }
}

TEST(WeightIndex, AgreesWithDirectWeight) {
  MetricSpace m(Poset::chain(2), WeightFunction({Rational(3, 2), Rational(1)}), AlphabetSpec(FieldSpec(3), {2, 1}));
  WeightIndex idx(m);
  for (std::uint32_t v = 0; v < idx.size(); ++v) EXPECT_EQ(idx.weight(v), weight(m, decode(FieldSpec(3), v, 3)));
  EXPECT_EQ(idx.weight_class(0), 0);
}

TEST(DeltaSubspace, Dimensions) {
  AlphabetSpec s(FieldSpec(2), {1, 2, 1});
  EXPECT_EQ(delta_subspace(s, {}).dimension(), 0);
  EXPECT_EQ(delta_subspace(s, {0, 1, 2}).dimension(), 4);
  EXPECT_EQ(delta_subspace(s, {1}).dimension(), 2);
  auto d = delta_subspace(s, {0, 2});
  for (const auto& v : enumerate_codewords(s.field(), d)) EXPECT_TRUE(support(s, v).is_subset_of({0, 2}));
}

TEST(DualCode, Examples) {
  FieldSpec f(2);
  EXPECT_EQ(dual_code(f, LinearCode::zero(3)), LinearCode::full(f, 3));
  LinearCode rep(f, 2, {{1, 1}});
  EXPECT_EQ(dual_code(f, rep), rep);
}

TEST(DualCode, DimensionLawAndBiduality) {
  for (auto [q, n] : std::vector<std::pair<int, int>>{{2, 4}, {3, 3}, {5, 2}}) {
    FieldSpec f(q);
    for (const auto& c : enumerate_codes(f, n)) {
      auto d = dual_code(f, c);
      EXPECT_EQ(c.dimension() + d.dimension(), n);
      EXPECT_EQ(dual_code(f, d), c);
      for (int r = 0; r < c.dimension(); ++r)
        for (int s = 0; s < d.dimension(); ++s) EXPECT_EQ(dot(f, c.basis().row(r), d.basis().row(s)), 0);
    }
  }
}

TEST(EnumerateCodes, GaussianCounts) {
  EXPECT_EQ(enumerate_codes(FieldSpec(2), 2).size(), 5u);
  EXPECT_EQ(enumerate_codes(FieldSpec(2), 3).size(), 16u);
  EXPECT_EQ(enumerate_codes(FieldSpec(2), 4).size(), 67u);
  EXPECT_EQ(enumerate_codes(FieldSpec(2), 6).size(), 2825u);
  EXPECT_EQ(subspace_count(2, 6), 2825u);
  EXPECT_EQ(enumerate_codes(FieldSpec(3), 3).size(), 28u);
}

TEST(EnumerateCodes, MatchesClosureOracle) {
  EXPECT_EQ(count_subspaces_by_closure(FieldSpec(2), 3), 16);
  EXPECT_EQ(count_subspaces_by_closure(FieldSpec(3), 2), 6);
  EXPECT_EQ(enumerate_codes(FieldSpec(3), 2).size(), 6u);
}

TEST(EnumerateCodes, CanonicalDistinctAndSorted) {
  FieldSpec f(3);
  auto codes = enumerate_codes(f, 3);
  EXPECT_TRUE(std::is_sorted(codes.begin(), codes.end()));
  std::set<std::set<Vec>> seen;
  for (const auto& c : codes) {
    auto words = enumerate_codewords(f, c);
    seen.insert(std::set<Vec>(words.begin(), words.end()));
    EXPECT_EQ(LinearCode(f, c.basis()), c);
  }
  EXPECT_EQ(seen.size(), codes.size());
}

TEST(EnumerateCodes, BoundsAreHard) {
  Bounds tight;
  tight.max_codes = 10;
  EXPECT_THROW(enumerate_codes(FieldSpec(2), 4, tight), BoundExceeded);
  tight = Bounds{};
  tight.max_vectors = 8;
  EXPECT_THROW(enumerate_codes(FieldSpec(2), 4, tight), BoundExceeded);
}

TEST(Codewords, ZeroCodeHasOne) {
  FieldSpec f(3);
  EXPECT_EQ(enumerate_codewords(f, LinearCode::zero(3)).size(), 1u);
  EXPECT_EQ(enumerate_codewords(f, LinearCode::full(f, 3)).size(), 27u);
}

TEST(Homs, Counts) {
  FieldSpec f(2);
  EXPECT_EQ(hom_enumerate(f, LinearCode::zero(2), 2).size(), 1u);
  EXPECT_EQ(hom_enumerate(f, LinearCode(f, 2, {{1, 1}}), 2).size(), 4u);
  auto homs = hom_enumerate(FieldSpec(3), LinearCode(FieldSpec(3), 3, {{1, 0, 1}, {0, 1, 2}}), 2);
  EXPECT_EQ(homs.size(), 81u);
  EXPECT_EQ(std::set<Matrix>(homs.begin(), homs.end()).size(), 81u);
  Bounds tight;
  tight.max_homs = 3;
  EXPECT_THROW(hom_enumerate(f, LinearCode(f, 2, {{1, 1}}), 2, tight), BoundExceeded);
}

}  // namespace
}  // namespace wpmep
