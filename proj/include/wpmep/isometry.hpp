#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wpmep/errors.hpp"
#include "wpmep/field.hpp"
#include "wpmep/poset.hpp"
#include "wpmep/space.hpp"

namespace wpmep {

/// Value of a support functional: a rational for weight sums, a label set for
/// P-support.
using FunctionalValue = std::variant<Rational, LabelSet>;

/// A map from coordinate subsets to an anti-symmetrically related value set.
/// The two shipped instances are the weight sum over the ideal closure
/// (compared by <=) and the ideal closure itself (compared by inclusion).
struct SupportFunctional {
  std::string name;
  std::function<FunctionalValue(LabelSet)> evaluate;
  std::function<bool(const FunctionalValue&, const FunctionalValue&)> precedes;
};

inline SupportFunctional weight_sum_functional(const Poset& p, const WeightFunction& w) {
  return {"weight-sum", [p, w](LabelSet b) -> FunctionalValue { return w.sum(ideal_closure(p, b)); },
          [](const FunctionalValue& a, const FunctionalValue& b) {
            return std::get<Rational>(a) <= std::get<Rational>(b);
          }};
}

inline SupportFunctional p_support_functional(const Poset& p) {
  return {"p-support", [p](LabelSet b) -> FunctionalValue { return ideal_closure(p, b); },
          [](const FunctionalValue& a, const FunctionalValue& b) {
            return std::get<LabelSet>(a).is_subset_of(std::get<LabelSet>(b));
          }};
}

/// Values of sf on every subset of the coordinate set, indexed by bitmask.
inline std::vector<FunctionalValue> tabulate(const SupportFunctional& sf, int n, int max_elements = 12) {
  if (n > max_elements)
    throw BoundExceeded("support functional scans are capped at " + std::to_string(max_elements) + " elements");
  std::vector<FunctionalValue> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) out.push_back(sf.evaluate(LabelSet(bits)));
  return out;
}

struct FunctionalCheck {
  bool holds = true;
  std::string violated;  ///< "closure-invariance", "monotonicity" or "principal-separation"
  LabelSet first;
  LabelSet second;
};

/// Checks the three structural conditions a support functional must meet:
/// invariance under ideal closure, monotonicity on nested ideals, and that an
/// ideal with the same value as one of its points is that point's principal ideal.
inline FunctionalCheck check_support_functional(const SupportFunctional& sf, const Poset& p, int max_elements = 12) {
  const int n = p.size();
  auto table = tabulate(sf, n, max_elements);
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    LabelSet b(bits);
    LabelSet closed = ideal_closure(p, b);
    if (table[bits] != table[closed.bits()]) return {false, "closure-invariance", b, closed};
  }
  auto ideals = all_ideals(p);
  for (auto i : ideals)
    for (auto j : ideals)
      if (i.is_subset_of(j) && !sf.precedes(table[i.bits()], table[j.bits()])) return {false, "monotonicity", i, j};
  for (auto i : ideals)
    for (int u : i.indices())
      if (table[i.bits()] == table[LabelSet::singleton(u).bits()] && i != p.down(u))
        return {false, "principal-separation", i, LabelSet::singleton(u)};
  return {};
}

/// Automorphisms mu of P with sf(mu[I]) = sf(I) for every subset I and equal
/// block dimensions k_i = k_{mu(i)}. Includes the identity; a subgroup.
inline std::vector<Permutation> admissible_automorphisms(const Poset& p, const SupportFunctional& sf,
                                                         const AlphabetSpec& space, const Bounds& bounds = {}) {
  if (space.coordinates() != p.size()) throw DomainError("alphabet does not match the poset");
  auto table = tabulate(sf, p.size(), bounds.max_functional_elements);
  std::vector<Permutation> out;
  for (auto& mu : automorphisms(p, bounds.max_aut_elements)) {
    bool ok = true;
    for (int i = 0; i < p.size() && ok; ++i) ok = space.dim(i) == space.dim(mu[i]);
    for (std::uint32_t bits = 0; bits < (1u << p.size()) && ok; ++bits)
      ok = table[apply_permutation(mu, LabelSet(bits)).bits()] == table[bits];
    if (ok) out.push_back(std::move(mu));
  }
  return out;
}

/// Structured automorphism of H: a poset automorphism lambda, an invertible
/// diagonal block i -> lambda(i) for each i, and a block i -> j for each j
/// strictly below lambda(i). Blocks i -> j are k_i x k_j and act on row
/// vectors, so phi(beta)_j = sum_i beta_i * block(i -> j).
struct Isometry {
  Permutation lambda;
  std::vector<Matrix> diag;
  std::map<std::pair<int, int>, Matrix> strict;

  friend bool operator==(const Isometry&, const Isometry&) = default;
  friend auto operator<=>(const Isometry&, const Isometry&) = default;
};

/// Strict block positions (i, j), j strictly below lambda(i), in order.
inline std::vector<std::pair<int, int>> strict_positions(const Poset& p, const Permutation& lambda) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j)
      if (p.less(j, lambda[i])) out.emplace_back(i, j);
  return out;
}

/// Validates and assembles a structured isometry. Missing strict blocks are
/// taken to be zero.
inline Isometry build_isometry(const AlphabetSpec& space, const Poset& p, Permutation lambda, std::vector<Matrix> diag,
                               std::map<std::pair<int, int>, Matrix> strict = {}) {
  const int n = p.size();
  if (space.coordinates() != n) throw DomainError("alphabet does not match the poset");
  if (static_cast<int>(lambda.size()) != n || static_cast<int>(diag.size()) != n)
    throw DomainError("lambda and diagonal blocks must cover every coordinate");
  std::vector<bool> seen(n, false);
  for (int x : lambda) {
    if (x < 0 || x >= n || seen[x]) throw DomainError("lambda is not a permutation");
    seen[x] = true;
  }
  if (!is_automorphism(p, lambda)) throw DomainError("lambda is not an automorphism of the poset");
  for (int i = 0; i < n; ++i) {
    if (space.dim(i) != space.dim(lambda[i]))
      throw DomainError("lambda maps coordinate " + p.label(i) + " to a block of different dimension");
    if (diag[i].rows() != space.dim(i) || diag[i].cols() != space.dim(lambda[i]))
      throw DomainError("diagonal block of " + p.label(i) + " has the wrong shape");
    if (!is_invertible(space.field(), diag[i]))
      throw DomainError("diagonal block of " + p.label(i) + " is not invertible");
  }
  Isometry out{std::move(lambda), std::move(diag), {}};
  for (auto [i, j] : strict_positions(p, out.lambda)) out.strict[{i, j}] = Matrix(space.dim(i), space.dim(j));
  for (auto& [key, m] : strict) {
    auto it = out.strict.find(key);
    if (it == out.strict.end())
      throw DomainError("block " + p.label(key.first) + " -> " + p.label(key.second) +
                        " is not strictly below lambda(" + p.label(key.first) + ")");
    if (m.rows() != space.dim(key.first) || m.cols() != space.dim(key.second))
      throw DomainError("strict block has the wrong shape");
    it->second = std::move(m);
  }
  return out;
}

inline Isometry identity_isometry(const AlphabetSpec& space, const Poset& p) {
  std::vector<Matrix> diag;
  for (int i = 0; i < p.size(); ++i) diag.push_back(Matrix::identity(space.dim(i)));
  return build_isometry(space, p, identity_permutation(p.size()), diag);
}

/// N x N matrix M with phi(beta) = beta * M.
inline Matrix to_matrix(const AlphabetSpec& space, const Isometry& phi) {
  Matrix m(space.length(), space.length());
  auto place = [&](int i, int j, const Matrix& b) {
    for (int r = 0; r < b.rows(); ++r)
      for (int c = 0; c < b.cols(); ++c) m(space.offset(i) + r, space.offset(j) + c) = b(r, c);
  };
  for (int i = 0; i < space.coordinates(); ++i) place(i, phi.lambda[i], phi.diag[i]);
  for (const auto& [key, b] : phi.strict) place(key.first, key.second, b);
  return m;
}

inline Vec apply(const AlphabetSpec& space, const Isometry& phi, const Vec& beta) {
  space.check(beta);
  return multiply(space.field(), beta, to_matrix(space, phi));
}

inline Matrix block_of(const AlphabetSpec& space, const Matrix& m, int i, int j) {
  Matrix b(space.dim(i), space.dim(j));
  for (int r = 0; r < b.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c) b(r, c) = m(space.offset(i) + r, space.offset(j) + c);
  return b;
}

/// Reads the block structure of M: returns the isometry when some
/// automorphism lambda makes every block i -> j with j not below lambda(i)
/// vanish and every block i -> lambda(i) invertible.
inline std::optional<Isometry> read_structure(const AlphabetSpec& space, const Poset& p, const Matrix& m) {
  const int n = p.size();
  Permutation lambda(n, -1);
  for (int i = 0; i < n; ++i) {
    LabelSet nonzero;
    for (int j = 0; j < n; ++j)
      if (!block_of(space, m, i, j).is_zero()) nonzero.insert(j);
    int top = -1;
    for (int j : nonzero.indices())
      if (nonzero.is_subset_of(p.down(j))) top = j;
    if (top < 0) return std::nullopt;
    lambda[i] = top;
  }
  std::vector<bool> seen(n, false);
  for (int x : lambda) {
    if (seen[x]) return std::nullopt;
    seen[x] = true;
  }
  if (!is_automorphism(p, lambda)) return std::nullopt;
  std::vector<Matrix> diag;
  for (int i = 0; i < n; ++i) {
    if (space.dim(i) != space.dim(lambda[i])) return std::nullopt;
    diag.push_back(block_of(space, m, i, lambda[i]));
    if (!is_invertible(space.field(), diag.back())) return std::nullopt;
  }
  std::map<std::pair<int, int>, Matrix> strict;
  for (auto [i, j] : strict_positions(p, lambda)) strict[{i, j}] = block_of(space, m, i, j);
  return build_isometry(space, p, lambda, diag, strict);
}

/// phi o psi.
inline Isometry compose(const AlphabetSpec& space, const Poset& p, const Isometry& phi, const Isometry& psi) {
  auto m = multiply(space.field(), to_matrix(space, psi), to_matrix(space, phi));
  auto out = read_structure(space, p, m);
  if (!out) throw ContractError("composition lost the block structure");
  return *out;
}

inline Isometry inverse(const AlphabetSpec& space, const Poset& p, const Isometry& phi) {
  auto inv = inverse(space.field(), to_matrix(space, phi));
  if (!inv) throw ContractError("structured isometry is not invertible");
  auto out = read_structure(space, p, *inv);
  if (!out) throw ContractError("inverse lost the block structure");
  return *out;
}

/// Truth values of three equivalent descriptions of "M is an automorphism
/// acting on P-supports through lambda": on every vector, on every nonzero
/// vector of a single block, and by block shape.
inline std::array<bool, 3> support_action_statements(const AlphabetSpec& space, const Poset& p, const Matrix& m,
                                                     const Permutation& lambda, const Bounds& bounds = {}) {
  const auto& f = space.field();
  const bool invertible = is_invertible(f, m);
  std::array<bool, 3> out{invertible, invertible, true};
  if (invertible) {
    const auto total = space.vector_count(bounds.max_vectors);
    for (std::uint64_t v = 0; v < total && out[0]; ++v) {
      Vec alpha = decode(f, static_cast<std::uint32_t>(v), space.length());
      out[0] = p_support(space, p, multiply(f, alpha, m)) == apply_permutation(lambda, p_support(space, p, alpha));
    }
    for (int i = 0; i < p.size() && out[1]; ++i) {
      const auto count = *checked_power(f.q(), space.dim(i), ~std::uint64_t{0});
      for (std::uint64_t a = 1; a < count && out[1]; ++a) {
        Vec beta = space.embed(i, decode(f, static_cast<std::uint32_t>(a), space.dim(i)));
        out[1] = p_support(space, p, multiply(f, beta, m)) == p.down(lambda[i]);
      }
    }
  }
  for (int i = 0; i < p.size() && out[2]; ++i) {
    for (int j = 0; j < p.size() && out[2]; ++j)
      if (!p.leq(j, lambda[i])) out[2] = block_of(space, m, i, j).is_zero();
    if (out[2])
      out[2] = space.dim(i) == space.dim(lambda[i]) && is_invertible(f, block_of(space, m, i, lambda[i]));
  }
  return out;
}

/// Every linear automorphism preserving sf(supp(.)), as a structured value with
/// lambda = zeta(phi). Throws ContractError with a witness vector when M is
/// singular or does not preserve sf.
inline Isometry decompose(const AlphabetSpec& space, const Poset& p, const SupportFunctional& sf, const Matrix& m,
                          const Bounds& bounds = {}) {
  const auto& f = space.field();
  if (m.rows() != space.length() || m.cols() != space.length()) throw DomainError("matrix has the wrong shape");
  if (!is_invertible(f, m)) throw ContractError("map is not invertible");
  auto table = tabulate(sf, p.size(), bounds.max_functional_elements);
  const auto total = space.vector_count(bounds.max_vectors);
  for (std::uint64_t v = 0; v < total; ++v) {
    Vec alpha = decode(f, static_cast<std::uint32_t>(v), space.length());
    if (table[support(space, multiply(f, alpha, m)).bits()] != table[support(space, alpha).bits()]) {
      std::string witness;
      for (int x : alpha) witness += std::to_string(x);
      throw ContractError("map does not preserve " + sf.name + "; witness vector " + witness);
    }
  }
  Permutation lambda(p.size(), -1);
  for (int i = 0; i < p.size(); ++i) {
    const auto count = *checked_power(f.q(), space.dim(i), ~std::uint64_t{0});
    for (std::uint64_t a = 1; a < count; ++a) {
      Vec beta = space.embed(i, decode(f, static_cast<std::uint32_t>(a), space.dim(i)));
      LabelSet image = p_support(space, p, multiply(f, beta, m));
      int top = -1;
      for (int j : image.indices())
        if (p.down(j) == image) top = j;
      if (top < 0 || (lambda[i] >= 0 && lambda[i] != top))
        throw ContractError("image of block " + p.label(i) + " is not supported on a single principal ideal");
      lambda[i] = top;
    }
  }
  auto out = read_structure(space, p, m);
  if (!out || out->lambda != lambda) throw ContractError("map does not have the expected block structure");
  return *out;
}

inline std::vector<Matrix> identity_diag(const AlphabetSpec& space) {
  std::vector<Matrix> out;
  for (int i = 0; i < space.coordinates(); ++i) out.push_back(Matrix::identity(space.dim(i)));
  return out;
}

/// Group order |admissible| * prod |GL_{k_i}(q)| * q^(sum over strict
/// positions of k_i k_j), or nullopt beyond limit.
inline std::optional<std::uint64_t> structured_group_order(const AlphabetSpec& space, const Poset& p,
                                                           std::size_t admissible, std::uint64_t limit) {
  long double order = static_cast<long double>(admissible);
  int strict_exponent = 0;
  for (auto [i, j] : strict_positions(p, identity_permutation(p.size()))) strict_exponent += space.dim(i) * space.dim(j);
  for (int i = 0; i < p.size(); ++i) order *= static_cast<long double>(general_linear_order(space.q(), space.dim(i)));
  for (int e = 0; e < strict_exponent; ++e) order *= space.q();
  if (order > static_cast<long double>(limit)) return std::nullopt;
  return static_cast<std::uint64_t>(order + 0.5L);
}

/// Enumerates the group of automorphisms preserving sf, one structured value
/// per element, sorted by (lambda, diagonal blocks, strict blocks).
inline std::vector<Isometry> enumerate_isometry_group(const AlphabetSpec& space, const Poset& p,
                                                      const SupportFunctional& sf, const Bounds& bounds = {}) {
  const auto& f = space.field();
  auto lambdas = admissible_automorphisms(p, sf, space, bounds);
  if (!structured_group_order(space, p, lambdas.size(), bounds.max_group))
    throw BoundExceeded("isometry group larger than the configured bound");
  std::map<int, std::vector<Matrix>> gl;
  for (int k : space.dims())
    if (!gl.count(k)) gl[k] = all_invertible_matrices(f, k, bounds.max_matrices);
  std::vector<Isometry> out;
  for (const auto& lambda : lambdas) {
    auto positions = strict_positions(p, lambda);
    int strict_entries = 0;
    for (auto [i, j] : positions) strict_entries += space.dim(i) * space.dim(j);
    const auto strict_count = *checked_power(f.q(), strict_entries, ~std::uint64_t{0});
    std::vector<std::size_t> choice(p.size(), 0);
    while (true) {
      std::vector<Matrix> diag;
      for (int i = 0; i < p.size(); ++i) diag.push_back(gl[space.dim(i)][choice[i]]);
      for (std::uint64_t s = 0; s < strict_count; ++s) {
        Vec entries = decode(f, static_cast<std::uint32_t>(s), strict_entries);
        std::map<std::pair<int, int>, Matrix> strict;
        int pos = 0;
        for (auto [i, j] : positions) {
          Matrix b(space.dim(i), space.dim(j));
          for (int r = 0; r < b.rows(); ++r)
            for (int c = 0; c < b.cols(); ++c) b(r, c) = entries[pos++];
          strict[{i, j}] = b;
        }
        out.push_back(build_isometry(space, p, lambda, diag, strict));
      }
      int i = p.size() - 1;
      while (i >= 0 && choice[i] + 1 == gl[space.dim(i)].size()) choice[i--] = 0;
      if (i < 0) break;
      ++choice[i];
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// GL_{(P,w)}(H): automorphisms preserving the (P,w)-weight.
inline std::vector<Isometry> weight_isometry_group(const MetricSpace& m, const Bounds& bounds = {}) {
  return enumerate_isometry_group(m.space, m.poset, weight_sum_functional(m.poset, m.omega), bounds);
}

/// GL_P(H): automorphisms preserving P-support.
inline std::vector<Isometry> p_support_group(const AlphabetSpec& space, const Poset& p, const Bounds& bounds = {}) {
  return enumerate_isometry_group(space, p, p_support_functional(p), bounds);
}

/// Oracle: scans every invertible N x N matrix and keeps those preserving the
/// given per-vector key (weight class or P-support) on all of H.
template <typename Key>
std::vector<Matrix> brute_force_group(const AlphabetSpec& space, Key key, const Bounds& bounds = {}) {
  const auto& f = space.field();
  const int n = space.length();
  auto total = checked_power(f.q(), n * n, bounds.max_matrices);
  if (!total) throw BoundExceeded("q^(N^2) matrices exceed the matrix bound");
  const auto vectors = space.vector_count(bounds.max_vectors);
  std::vector<Vec> all;
  for (std::uint64_t v = 0; v < vectors; ++v) all.push_back(decode(f, static_cast<std::uint32_t>(v), n));
  std::vector<Matrix> out;
  for (std::uint64_t x = 0; x < *total; ++x) {
    Vec entries = decode(f, static_cast<std::uint32_t>(x), n * n);
    Matrix m(n, n);
    for (int i = 0; i < n * n; ++i) m(i / n, i % n) = entries[i];
    bool ok = true;
    for (std::uint64_t v = 1; v < vectors && ok; ++v)
      ok = key(static_cast<std::uint32_t>(v)) == key(encode(f, multiply(f, all[v], m)));
    if (ok && is_invertible(f, m)) out.push_back(std::move(m));
  }
  return out;
}

inline std::vector<Matrix> brute_force_isometry_group(const MetricSpace& m, const Bounds& bounds = {}) {
  WeightIndex index(m, bounds);
  return brute_force_group(m.space, [&](std::uint32_t v) { return index.weight_class(v); }, bounds);
}

inline std::vector<Matrix> brute_force_p_support_group(const AlphabetSpec& space, const Poset& p,
                                                       const Bounds& bounds = {}) {
  MetricSpace m(p, space);
  WeightIndex index(m, bounds);
  return brute_force_group(space, [&](std::uint32_t v) { return index.closure(v); }, bounds);
}

}  // namespace wpmep
