#pragma once

#include "qcdense/finite_group.hpp"
#include "qcdense/torus.hpp"

#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>

namespace qcdense {

// Anything that pairs characters against elements into T and can stream its
// characters in a deterministic order. Finite groups enumerate exhaustively;
// compact models enumerate up to a declared bound.
template <class C>
concept PairedContext = requires(const C& ctx, const typename C::CharType& chi,
                                 const typename C::ElementType& x) {
  { ctx.pairing(chi, x) } -> std::same_as<TorusValue>;
  { ctx.zero_character() } -> std::convertible_to<typename C::CharType>;
  { ctx.is_exhaustive() } -> std::convertible_to<bool>;
};

// Exhaustive pairing context over a finite group. Precomputes an int64
// residue representation (pairing value = r / lcm) when it provably fits;
// the generic cpp_int path remains the fallback.
class FiniteGroupContext {
 public:
  using ElementType = GroupElement;
  using CharType = Character;

  explicit FiniteGroupContext(FiniteAbelianGroup g,
                              std::int64_t cap = kDefaultEnumerationCap);

  const FiniteAbelianGroup& group() const { return group_; }
  std::int64_t cap() const { return cap_; }

  TorusValue pairing(const Character& chi, const GroupElement& x) const {
    return group_.pairing(chi, x);
  }
  GroupElement zero_element() const { return group_.zero(); }
  Character zero_character() const { return group_.zero_character(); }
  bool is_exhaustive() const { return true; }

  void for_each_character(const std::function<void(const Character&)>& fn) const {
    group_.for_each_character(fn, cap_);
  }
  void for_each_element(const std::function<void(const GroupElement&)>& fn) const {
    group_.for_each_element(fn, cap_);
  }

  // int64 fast path: pairing(chi, x) == residue/lcm with residue in [0, lcm).
  bool has_fast_residue() const { return fast_; }
  std::int64_t fast_lcm() const { return lcm_; }
  std::int64_t fast_residue(const Character& chi, const GroupElement& x) const;

  bool pair_in_t_plus(const Character& chi, const GroupElement& x) const;
  bool pair_is_zero(const Character& chi, const GroupElement& x) const;
  bool pair_in_arc(const Character& chi, const GroupElement& x,
                   const OpenArc& u) const;

 private:
  FiniteAbelianGroup group_;
  std::int64_t cap_;
  bool fast_ = false;
  std::int64_t lcm_ = 0;
  std::vector<std::int64_t> weights_;  // lcm / orders[i]
};

static_assert(PairedContext<FiniteGroupContext>);

}  // namespace qcdense
