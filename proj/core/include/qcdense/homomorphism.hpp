#pragma once

#include "qcdense/finite_group.hpp"

#include <cstdint>
#include <vector>

namespace qcdense {

// Homomorphism between products of cyclic groups, given by an integer
// matrix acting on coordinates (rows indexed by target factors, columns by
// source factors). Construction verifies well-definedness: for every source
// factor i, the i-th column, read as a target element, must have order
// dividing the source factor order.
class Homomorphism {
 public:
  Homomorphism(FiniteAbelianGroup source, FiniteAbelianGroup target,
               std::vector<std::vector<std::int64_t>> matrix);

  const FiniteAbelianGroup& source() const { return source_; }
  const FiniteAbelianGroup& target() const { return target_; }
  const std::vector<std::vector<std::int64_t>>& matrix() const {
    return matrix_;
  }

  GroupElement apply(const GroupElement& x) const;

  std::vector<GroupElement> kernel(
      std::int64_t cap = kDefaultEnumerationCap) const;
  std::vector<GroupElement> image(
      std::int64_t cap = kDefaultEnumerationCap) const;
  bool is_surjective(std::int64_t cap = kDefaultEnumerationCap) const;

  static Homomorphism identity(const FiniteAbelianGroup& g);

 private:
  FiniteAbelianGroup source_;
  FiniteAbelianGroup target_;
  std::vector<std::vector<std::int64_t>> matrix_;
};

// The dual map between character groups: dual_hom(f)(xi) is the unique
// character with pairing_G(dual_hom(f)(xi), x) = pairing_H(xi, f(x)).
// Returned as an ordinary homomorphism from the (self-dual) target shape
// to the source shape.
Homomorphism dual_hom(const Homomorphism& f);

Character apply_dual(const Homomorphism& dual, const Character& xi);

}  // namespace qcdense
