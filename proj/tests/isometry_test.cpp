#include <random>
#include <set>

#include <gtest/gtest.h>

#include "wpmep/isometry.hpp"

namespace wpmep {
namespace {

std::set<Matrix> matrices_of(const AlphabetSpec& s, const std::vector<Isometry>& group) {
  std::set<Matrix> out;
  for (const auto& g : group) out.insert(to_matrix(s, g));
  return out;
}

Poset vee() { return Poset::from_covers({"1", "2", "3"}, {{"1", "2"}, {"1", "3"}}); }
Poset wedge() { return Poset::from_covers({"1", "2", "3"}, {{"1", "3"}, {"2", "3"}}); }

TEST(SupportFunctional, ShippedInstancesSatisfyConditions) {
  for (int n = 1; n <= 3; ++n)
    for (const auto& p : all_labeled_posets(n)) {
      EXPECT_TRUE(check_support_functional(weight_sum_functional(p, WeightFunction::uniform(n)), p).holds);
      EXPECT_TRUE(check_support_functional(weight_sum_functional(p, powers_of_two_weight(p)), p).holds);
      EXPECT_TRUE(check_support_functional(p_support_functional(p), p).holds);
    }
}

TEST(SupportFunctional, RawCardinalityFailsClosureInvariance) {
  auto p = Poset::chain(2);
  SupportFunctional card{"cardinality", [](LabelSet b) -> FunctionalValue { return Rational(b.size()); },
                         [](const FunctionalValue& a, const FunctionalValue& b) {
                           return std::get<Rational>(a) <= std::get<Rational>(b);
                         }};
  auto r = check_support_functional(card, p);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.violated, "closure-invariance");
  EXPECT_EQ(r.first, LabelSet{1});
  EXPECT_EQ(r.second, (LabelSet{0, 1}));
}

TEST(SupportFunctional, ConstantFunctionalFailsPrincipalSeparation) {
  auto p = Poset::antichain(2);
  SupportFunctional flat{"constant", [](LabelSet) -> FunctionalValue { return Rational(1); },
                         [](const FunctionalValue&, const FunctionalValue&) { return true; }};
  auto r = check_support_functional(flat, p);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.violated, "principal-separation");
}

TEST(SupportFunctional, SizeCap) {
  auto p = Poset::antichain(13);
  EXPECT_THROW(check_support_functional(p_support_functional(p), p), BoundExceeded);
}

TEST(BuildIsometry, IdentityAndChainShear) {
  auto s = AlphabetSpec::uniform(2, 2);
  auto p = Poset::chain(2);
  auto id = identity_isometry(s, p);
  for (std::uint32_t v = 0; v < 4; ++v) EXPECT_EQ(apply(s, id, decode(s.field(), v, 2)), decode(s.field(), v, 2));
  auto shear = build_isometry(s, p, {0, 1}, identity_diag(s), {{{1, 0}, Matrix(1, {{1}})}});
  for (int b1 = 0; b1 < 2; ++b1)
    for (int b2 = 0; b2 < 2; ++b2) EXPECT_EQ(apply(s, shear, {b1, b2}), (Vec{(b1 + b2) % 2, b2}));
}

TEST(BuildIsometry, RejectsBadInput) {
  auto s = AlphabetSpec(FieldSpec(2), {1, 2});
  auto p = Poset::antichain(2);
  EXPECT_THROW(build_isometry(s, p, {1, 0}, {Matrix::identity(1), Matrix::identity(2)}), DomainError);
  EXPECT_THROW(build_isometry(s, p, {0, 1}, {Matrix::identity(1), Matrix(2, {{1, 1}, {1, 1}})}), DomainError);
  EXPECT_THROW(build_isometry(s, p, {0, 1}, {Matrix::identity(1), Matrix::identity(2)}, {{{0, 1}, Matrix(1, 2)}}),
               DomainError);
  EXPECT_THROW(build_isometry(AlphabetSpec::uniform(2, 2), Poset::chain(2), {1, 0}, identity_diag(s)), DomainError);
}

TEST(BuildIsometry, CompositionIsFunctorial) {
  AlphabetSpec s(FieldSpec(3), {1, 1, 2});
  auto p = vee();
  auto group = weight_isometry_group(MetricSpace(p, s));
  std::mt19937 rng(17);
  std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto& phi = group[pick(rng)];
    const auto& psi = group[pick(rng)];
    auto both = compose(s, p, phi, psi);
    EXPECT_EQ(both.lambda, compose(phi.lambda, psi.lambda));
    for (std::uint32_t v = 0; v < 81; v += 7) {
      Vec beta = decode(s.field(), v, 4);
      EXPECT_EQ(apply(s, both, beta), apply(s, phi, apply(s, psi, beta)));
    }
    EXPECT_EQ(compose(s, p, phi, inverse(s, p, phi)), identity_isometry(s, p));
  }
}

TEST(Admissible, Examples) {
  auto anti = Poset::antichain(2);
  auto s = AlphabetSpec::uniform(2, 2);
  EXPECT_EQ(admissible_automorphisms(anti, weight_sum_functional(anti, WeightFunction({Rational(1), Rational(2)})), s)
                .size(),
            1u);
  EXPECT_EQ(admissible_automorphisms(anti, weight_sum_functional(anti, WeightFunction::uniform(2)), s).size(), 2u);
  EXPECT_EQ(admissible_automorphisms(anti, weight_sum_functional(anti, WeightFunction::uniform(2)),
                                     AlphabetSpec(FieldSpec(2), {1, 2}))
                .size(),
            1u);
  auto chain = Poset::chain(3);
  EXPECT_EQ(admissible_automorphisms(chain, p_support_functional(chain), AlphabetSpec::uniform(2, 3)).size(), 1u);
  EXPECT_EQ(admissible_automorphisms(Poset::antichain(3), p_support_functional(Poset::antichain(3)),
                                     AlphabetSpec::uniform(2, 3))
                .size(),
            1u);
}

TEST(GroupEnumeration, SmallOrders) {
  EXPECT_EQ(weight_isometry_group(MetricSpace(Poset::chain(2), AlphabetSpec::uniform(2, 2))).size(), 2u);
  EXPECT_EQ(weight_isometry_group(MetricSpace(Poset::antichain(2), AlphabetSpec::uniform(2, 2))).size(), 2u);
  // Antichain of three planes over F_2: 3! * 6^3.
  auto big = weight_isometry_group(MetricSpace(Poset::antichain(3), AlphabetSpec::uniform(2, 3, 2)));
  EXPECT_EQ(big.size(), 1296u);
  EXPECT_TRUE(std::is_sorted(big.begin(), big.end()));
  Bounds tight;
  tight.max_group = 100;
  EXPECT_THROW(weight_isometry_group(MetricSpace(Poset::antichain(3), AlphabetSpec::uniform(2, 3, 2)), tight),
               BoundExceeded);
}

TEST(GroupEnumeration, BruteForceExamples) {
  EXPECT_EQ(brute_force_isometry_group(MetricSpace(Poset::chain(1), AlphabetSpec::uniform(5, 1))).size(), 4u);
  auto chain = brute_force_isometry_group(MetricSpace(Poset::chain(2), AlphabetSpec::uniform(2, 2)));
  EXPECT_EQ(std::set<Matrix>(chain.begin(), chain.end()),
            (std::set<Matrix>{Matrix::identity(2), Matrix(2, {{1, 0}, {1, 1}})}));
}

TEST(GroupEnumeration, StructuredMatchesBruteForce) {
  std::vector<MetricSpace> cases{
      MetricSpace(vee(), AlphabetSpec::uniform(2, 3)),
      MetricSpace(wedge(), WeightFunction({Rational(1), Rational(3, 2), Rational(1)}), AlphabetSpec::uniform(3, 3)),
      MetricSpace(Poset::chain(2), AlphabetSpec(FieldSpec(2), {2, 1})),
      MetricSpace(Poset::antichain(2), AlphabetSpec(FieldSpec(2), {1, 2})),
      MetricSpace(Poset::from_covers({"a", "b", "c"}, {{"a", "b"}}), AlphabetSpec::uniform(2, 3)),
  };
  for (const auto& m : cases) {
    auto structured = weight_isometry_group(m);
    auto brute = brute_force_isometry_group(m);
    EXPECT_EQ(matrices_of(m.space, structured), std::set<Matrix>(brute.begin(), brute.end()));
    EXPECT_EQ(matrices_of(m.space, structured).size(), structured.size());
  }
}

TEST(Decompose, RecoversLambdaAndRejectsNonIsometries) {
  auto s = AlphabetSpec::uniform(2, 2);
  auto anti = Poset::antichain(2);
  auto sf = weight_sum_functional(anti, WeightFunction::uniform(2));
  EXPECT_EQ(decompose(s, anti, sf, Matrix::identity(2)).lambda, (Permutation{0, 1}));
  EXPECT_EQ(decompose(s, anti, sf, Matrix(2, {{0, 1}, {1, 0}})).lambda, (Permutation{1, 0}));
  EXPECT_THROW(decompose(s, anti, sf, Matrix(2, {{1, 1}, {0, 1}})), ContractError);
  EXPECT_THROW(decompose(s, anti, sf, Matrix(2, {{1, 1}, {1, 1}})), ContractError);
}

TEST(Decompose, ZetaIsAHomomorphismWithKernelGLP) {
  for (const auto& m : {MetricSpace(Poset::antichain(3), AlphabetSpec::uniform(2, 3)),
                        MetricSpace(vee(), AlphabetSpec::uniform(3, 3)),
                        MetricSpace(Poset::antichain(2), AlphabetSpec::uniform(2, 2, 2))}) {
    auto sf = weight_sum_functional(m.poset, m.omega);
    auto group = weight_isometry_group(m);
    auto kernel = p_support_group(m.space, m.poset);
    std::set<Permutation> image;
    std::set<Matrix> kernel_found;
    for (const auto& g : group) {
      auto mat = to_matrix(m.space, g);
      auto d = decompose(m.space, m.poset, sf, mat);
      EXPECT_EQ(d, g);
      image.insert(d.lambda);
      if (d.lambda == identity_permutation(m.poset.size())) kernel_found.insert(mat);
      EXPECT_EQ(inverse(m.space, m.poset, g).lambda, inverse(g.lambda));
    }
    for (std::size_t a = 0; a < group.size(); a += 5)
      for (std::size_t b = 0; b < group.size(); b += 7)
        EXPECT_EQ(compose(m.space, m.poset, group[a], group[b]).lambda, compose(group[a].lambda, group[b].lambda));
    auto admissible = admissible_automorphisms(m.poset, sf, m.space);
    EXPECT_EQ(image, std::set<Permutation>(admissible.begin(), admissible.end()));
    EXPECT_EQ(kernel_found, matrices_of(m.space, kernel));
  }
}

TEST(SupportAction, ThreeDescriptionsAgreeOnEveryMatrix) {
  for (const auto& p : {Poset::chain(3), Poset::antichain(3), vee(), wedge(),
                        Poset::from_covers({"a", "b", "c"}, {{"a", "b"}})}) {
    auto s = AlphabetSpec::uniform(2, 3);
    std::size_t agreeing_true = 0;
    for (const auto& lambda : automorphisms(p))
      for (std::uint32_t x = 0; x < 512; ++x) {
        Vec entries = decode(s.field(), x, 9);
        Matrix m(3, 3);
        for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = entries[i];
        auto st = support_action_statements(s, p, m, lambda);
        EXPECT_EQ(st[0], st[1]);
        EXPECT_EQ(st[1], st[2]);
        agreeing_true += st[0];
      }
    // Every element of GL_P(H) and of its cosets is counted exactly once.
    std::size_t expected = 0;
    for (const auto& lambda : automorphisms(p)) {
      (void)lambda;
      expected += p_support_group(s, p).size();
    }
    EXPECT_EQ(agreeing_true, expected);
  }
  auto s = AlphabetSpec(FieldSpec(2), {2, 1});
  auto p = Poset::chain(2);
  for (std::uint32_t x = 0; x < 512; ++x) {
    Vec entries = decode(s.field(), x, 9);
    Matrix m(3, 3);
    for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = entries[i];
    auto st = support_action_statements(s, p, m, {0, 1});
    EXPECT_EQ(st[0], st[1]);
    EXPECT_EQ(st[1], st[2]);
  }
}

TEST(PowersOfTwo, WeightGroupEqualsSupportGroup) {
  for (const auto& p : all_labeled_posets(3)) {
    auto s = AlphabetSpec::uniform(2, 3);
    EXPECT_EQ(matrices_of(s, weight_isometry_group(MetricSpace(p, powers_of_two_weight(p), s))),
              matrices_of(s, p_support_group(s, p)));
  }
}

}  // namespace
}  // namespace wpmep
