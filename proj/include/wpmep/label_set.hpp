#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "wpmep/errors.hpp"

namespace wpmep {

/// Subset of a coordinate set of at most 32 elements, stored as a bitmask over
/// element indices.
///
/// Ordering is the canonical one used for every list of label sets in the
/// library: by cardinality first, then lexicographically on the ascending
/// index lists. The same ordering is used for ideal lists and lattice members.
class LabelSet {
 public:
  static constexpr int kMaxElements = 32;

  constexpr LabelSet() = default;
  constexpr explicit LabelSet(std::uint32_t bits) : bits_(bits) {}
  LabelSet(std::initializer_list<int> indices) {
    for (int i : indices) insert(i);
  }

  static LabelSet from_indices(const std::vector<int>& indices) {
    LabelSet s;
    for (int i : indices) s.insert(i);
    return s;
  }
  static constexpr LabelSet full(int n) {
    return LabelSet(n >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1));
  }
  static constexpr LabelSet singleton(int i) { return LabelSet(std::uint32_t{1} << i); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
  constexpr bool is_subset_of(LabelSet o) const { return (bits_ & ~o.bits_) == 0; }

  void insert(int i) {
    if (i < 0 || i >= kMaxElements) throw DomainError("label index out of range");
    bits_ |= std::uint32_t{1} << i;
  }
  void erase(int i) { bits_ &= ~(std::uint32_t{1} << i); }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  friend constexpr LabelSet operator|(LabelSet a, LabelSet b) { return LabelSet(a.bits_ | b.bits_); }
  friend constexpr LabelSet operator&(LabelSet a, LabelSet b) { return LabelSet(a.bits_ & b.bits_); }
  friend constexpr LabelSet operator-(LabelSet a, LabelSet b) { return LabelSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(LabelSet a, LabelSet b) = default;

  friend std::strong_ordering operator<=>(LabelSet a, LabelSet b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    // Same cardinality: the first differing element decides. The set holding
    // the smaller index at that position sorts first.
    std::uint32_t diff = a.bits_ ^ b.bits_;
    if (diff == 0) return std::strong_ordering::equal;
    int first = std::countr_zero(diff);
    return ((a.bits_ >> first) & 1u) ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  std::uint32_t bits_ = 0;
};

/// Image of a set under a permutation given as perm[i] = image of i.
inline LabelSet apply_permutation(const std::vector<int>& perm, LabelSet s) {
  LabelSet out;
  for (int i : s.indices()) out.insert(perm[i]);
  return out;
}

}  // namespace wpmep
