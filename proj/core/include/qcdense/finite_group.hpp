#pragma once

#include "qcdense/ints.hpp"
#include "qcdense/torus.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qcdense {

// Coordinate vector reduced mod the factor orders. Separate types for
// points and characters keep the two sides of the pairing from mixing,
// even though finite abelian groups are self-dual in this representation.
struct GroupElement {
  std::vector<std::int64_t> coords;

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

struct Character {
  std::vector<std::int64_t> coords;

  friend auto operator<=>(const Character&, const Character&) = default;
};

// Product of cyclic groups Z(orders[0]) x ... x Z(orders[k-1]).
// Invariant-factor form is not required; Z2xZ4 and Z4xZ2 are distinct
// presentations of the same group and both are accepted as-is.
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<std::int64_t> orders);

  const std::vector<std::int64_t>& orders() const { return orders_; }
  std::size_t num_factors() const { return orders_.size(); }
  Int order() const;

  GroupElement zero() const;
  Character zero_character() const;

  bool is_valid(const GroupElement& x) const;
  bool is_valid(const Character& chi) const;

  GroupElement reduce(const std::vector<std::int64_t>& raw) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement neg(const GroupElement& a) const;
  GroupElement scale(std::int64_t m, const GroupElement& a) const;
  Character add(const Character& a, const Character& b) const;

  std::int64_t element_order(const GroupElement& x) const;

  // chi(x) = sum_i chi_i * x_i / orders[i] mod 1, exact.
  TorusValue pairing(const Character& chi, const GroupElement& x) const;

  // Deterministic lexicographic enumeration; throws enumeration_cap_exceeded
  // when order(G) > cap.
  std::vector<GroupElement> enumerate_elements(
      std::int64_t cap = kDefaultEnumerationCap) const;
  std::vector<Character> enumerate_characters(
      std::int64_t cap = kDefaultEnumerationCap) const;
  void for_each_element(const std::function<void(const GroupElement&)>& fn,
                        std::int64_t cap = kDefaultEnumerationCap) const;
  void for_each_character(const std::function<void(const Character&)>& fn,
                          std::int64_t cap = kDefaultEnumerationCap) const;

  // Closure of S (plus 0) under addition and negation.
  std::vector<GroupElement> generated_subgroup(
      const std::vector<GroupElement>& gens,
      std::int64_t cap = kDefaultEnumerationCap) const;

  bool is_subgroup(const std::vector<GroupElement>& elems) const;

  std::string to_string() const;  // "Z4xZ9"

  friend bool operator==(const FiniteAbelianGroup&,
                         const FiniteAbelianGroup&) = default;

 private:
  void check_cap(std::int64_t cap) const;

  std::vector<std::int64_t> orders_;
};

std::string element_to_string(const GroupElement& x);
std::string character_to_string(const Character& chi);

// A coordinate form of a subgroup: an abstract product of cyclic groups
// together with generators in the ambient group realizing the isomorphism
// (a_1,..,a_k) -> sum a_i * gens[i].
struct SubgroupDecomposition {
  FiniteAbelianGroup group;
  std::vector<GroupElement> generators;  // one per abstract factor

  GroupElement embed(const FiniteAbelianGroup& ambient,
                     const GroupElement& abstract_elem) const;
};

// Finds a coordinate-izing isomorphism for the subgroup given by `elems`
// (which must be closed under the group operations) by basis search over
// the primary components. Deterministic.
SubgroupDecomposition decompose_subgroup(const FiniteAbelianGroup& ambient,
                                         const std::vector<GroupElement>& elems);

}  // namespace qcdense
