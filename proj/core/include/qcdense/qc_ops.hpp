#pragma once

#include "qcdense/context.hpp"
#include "qcdense/homomorphism.hpp"
#include "qcdense/torus.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qcdense {

// Polars, hulls and W-sets follow the closed-arc convention for T_+
// ([-1/4, 1/4], endpoints in) and strict membership for open arcs; both are
// fixed in torus.hpp and shared by every context.

// E^> : characters mapping all of E into T_+. Exhaustive for finite
// contexts, restricted to the declared bound otherwise.
template <PairedContext C>
std::vector<typename C::CharType> polar_right(
    const C& ctx, const std::vector<typename C::ElementType>& e) {
  std::vector<typename C::CharType> out;
  ctx.for_each_character([&](const typename C::CharType& chi) {
    for (const auto& x : e) {
      if (!in_t_plus(ctx.pairing(chi, x))) return;
    }
    out.push_back(chi);
  });
  return out;
}

// W(X, U): characters mapping all of X into the open arc U.
template <PairedContext C>
std::vector<typename C::CharType> w_set(
    const C& ctx, const std::vector<typename C::ElementType>& x,
    const OpenArc& u) {
  std::vector<typename C::CharType> out;
  ctx.for_each_character([&](const typename C::CharType& chi) {
    for (const auto& p : x) {
      if (!in_arc(ctx.pairing(chi, p), u)) return;
    }
    out.push_back(chi);
  });
  return out;
}

// First nonzero character lying in E^>, if any. Empty result certifies
// qc-density (exactly when the context is exhaustive, up to the bound
// otherwise).
template <PairedContext C>
std::optional<typename C::CharType> find_polar_counterexample(
    const C& ctx, const std::vector<typename C::ElementType>& e) {
  std::optional<typename C::CharType> found;
  const auto zero = ctx.zero_character();
  ctx.for_each_character([&](const typename C::CharType& chi) {
    if (found || chi == zero) return;
    for (const auto& x : e) {
      if (!in_t_plus(ctx.pairing(chi, x))) return;
    }
    found = chi;
  });
  return found;
}

template <PairedContext C>
bool is_qc_dense(const C& ctx, const std::vector<typename C::ElementType>& e) {
  return !find_polar_counterexample(ctx, e).has_value();
}

// Finite-group specializations below use the int64 residue path when the
// context provides one.

std::vector<Character> polar_right(const FiniteGroupContext& ctx,
                                   const std::vector<GroupElement>& e);
std::vector<Character> w_set(const FiniteGroupContext& ctx,
                             const std::vector<GroupElement>& x,
                             const OpenArc& u);
std::optional<Character> find_polar_counterexample(
    const FiniteGroupContext& ctx, const std::vector<GroupElement>& e);
bool is_qc_dense(const FiniteGroupContext& ctx,
                 const std::vector<GroupElement>& e);

// A^< : elements mapped into T_+ by every character of A. Finite only.
std::vector<GroupElement> polar_left(const FiniteGroupContext& ctx,
                                     const std::vector<Character>& a);

// E^><, the quasi-convex hull.
std::vector<GroupElement> qc_hull(const FiniteGroupContext& ctx,
                                  const std::vector<GroupElement>& e);

bool is_quasi_convex(const FiniteGroupContext& ctx,
                     const std::vector<GroupElement>& e);

// n-fold sumset of X u {0}.
std::vector<GroupElement> sumset_k_n(const FiniteGroupContext& ctx,
                                     const std::vector<GroupElement>& x,
                                     std::int64_t n);

struct MinSumsetResult {
  std::int64_t n = 0;                 // least n with K_n qc-dense
  std::int64_t v_n_bound = 0;         // a-priori bound from V_n containment
  std::vector<GroupElement> k_n;      // the qc-dense sumset
};

// Requires W(X,U) = {0}; searches n = 1.. up to the V_n bound and throws
// std::logic_error if the bound is passed without success.
MinSumsetResult min_sumset_qc_dense(const FiniteGroupContext& ctx,
                                    const std::vector<GroupElement>& x,
                                    const OpenArc& u);

// Generated subgroup equals the whole group.
bool check_generates(const FiniteGroupContext& ctx,
                     const std::vector<GroupElement>& x);

// f(hull_G(X)) subset of hull_H(f(X)).
bool check_hull_pushforward(const Homomorphism& f,
                            const std::vector<GroupElement>& x,
                            std::int64_t cap = kDefaultEnumerationCap);

struct ThreeSpaceVerdict {
  bool preconditions_ok = false;
  std::string precondition_failure;
  bool x_dense_in_source = false;
  bool image_dense_in_target = false;
  bool biconditional_holds = false;
  // Set when the biconditional fails: the polar character of the side
  // claimed dense.
  std::optional<Character> counterexample;
};

// Checks "X qc-dense in G iff f(X) qc-dense in H" under the preconditions
// that f is surjective and X n ker f is qc-dense in ker f (the kernel
// evaluated as a standalone group via a coordinate-izing isomorphism).
ThreeSpaceVerdict check_three_space(const Homomorphism& f,
                                    const std::vector<GroupElement>& x,
                                    std::int64_t cap = kDefaultEnumerationCap);

// Shared helper: sorted unique copy.
std::vector<GroupElement> sorted_unique(std::vector<GroupElement> v);

}  // namespace qcdense
