#pragma once

#include "qcdense/context.hpp"
#include "qcdense/qc_ops.hpp"
#include "qcdense/sequences.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qcdense {

// ker r^G_X: characters vanishing on all of X.
std::vector<Character> restriction_kernel(const FiniteGroupContext& ctx,
                                          const std::vector<GroupElement>& x);

// The restriction map r^G_X materialized: every character paired against X
// in a fixed order. The value tuples are exactly the restricted functions
// chi|_X.
struct RestrictionMap {
  FiniteAbelianGroup group;
  std::vector<GroupElement> domain;  // X, sorted
  std::vector<std::pair<Character, std::vector<TorusValue>>> table;

  bool injective() const;            // all rows distinct
  Int image_size() const;            // number of distinct rows
  std::vector<Character> kernel() const;  // rows that vanish on X
};

RestrictionMap build_restriction_map(const FiniteGroupContext& ctx,
                                     const std::vector<GroupElement>& x);

struct NearCharacterizationVerdict {
  bool w_trivial_for_some_arc = false;   // exists U with W(X,U) = {0}
  bool restriction_injective = false;    // ker r^G_X = {0}
  bool equivalent = false;
  // Arc below the smallest nonzero attained |pairing value|, when one
  // exists; W(X, arc) is then as small as any arc can make it.
  std::optional<OpenArc> minimal_arc;
  std::optional<Character> counterexample;  // set when not equivalent
};

// Decides "exists open U with W(X,U) = {0}" by scanning the finitely many
// attained pairing values, and compares with injectivity of the
// restriction map.
NearCharacterizationVerdict check_near_characterization(
    const FiniteGroupContext& ctx, const std::vector<GroupElement>& x);

struct FiniteDeterminationResult {
  bool determines = false;
  bool injective = false;
  Int restriction_image_size;  // distinct restrictions chi|_D
  Int dual_size_of_d;          // |D^| from the structure of D
};

// Whether the restriction homomorphism G^ -> D^ is bijective. D must be a
// subgroup (checked). The dual size of D comes from its invariant structure
// discovered by enumeration, not from a quotient construction.
FiniteDeterminationResult determines_finite(const FiniteAbelianGroup& g,
                                            const std::vector<GroupElement>& d,
                                            std::int64_t cap = kDefaultEnumerationCap);

struct DeterminationVerdict {
  bool positive = false;
  std::string label;  // "exact" or "verified up to <bound>"
  std::optional<ModelVerification> report;
  std::optional<std::int64_t> kn_exponent;
};

// Witness-based determination of a compact model: verifies that the
// candidate compact witness X (contained in the subgroup generated by the
// D-generators, checked symbolically) is qc-dense up to the bound. When an
// arc with W(X,U) = {0} backs the witness instead, the K_n completion
// exponent from the V_n containment is reported.
DeterminationVerdict determine_by_witness(const CompactModel& m,
                                          const std::vector<ModelPoint>& d_generators,
                                          const std::vector<ModelPoint>& x,
                                          const CharBound& bound,
                                          std::optional<OpenArc> w_arc = std::nullopt,
                                          unsigned threads = 1);

// Membership of x in the subgroup generated by gens, decided symbolically
// for the supported shapes (torus, p-adic, single-coordinate product
// points). Throws std::invalid_argument for unsupported shapes.
bool in_generated_subgroup(const CompactModel& m, const ModelPoint& x,
                           const std::vector<ModelPoint>& gens);

struct ModelSupersequenceResult {
  SuperSequence sequence;
  ModelVerification report;
};

struct SequenceBounds {
  std::int64_t seq_len = 1;   // torus truncation
  int levels = 1;             // p-adic truncation
  CharBound char_bound;
  unsigned threads = 1;
};

// The constructive pipeline: per-factor qc-dense sequences fanned together,
// then verified up to the bound.
ModelSupersequenceResult build_determining_supersequence(
    const CompactModel& m, const SequenceBounds& bounds);

struct FiniteSupersequenceResult {
  FiniteAbelianGroup group;
  std::vector<GroupElement> points;               // fan, includes 0
  std::vector<std::vector<std::int64_t>> factor_subsets;  // per cyclic factor
  bool qc_dense = false;                          // exact verification
};

// Finite-group form: fan of lexicographically-least minimum-cardinality
// qc-dense subsets of the cyclic factors.
FiniteSupersequenceResult build_determining_supersequence(
    const FiniteAbelianGroup& g, std::int64_t cap = kDefaultEnumerationCap);

struct Theorem1Row {
  std::int64_t box_radius = 0;  // M
  Int count;                    // |{chi in Z^d, |chi|_inf <= M : chi(X) in U}|
  Rat fraction;                 // count / (2M+1)^d
};

struct Theorem1Report {
  std::vector<Theorem1Row> rows;
  bool counts_strictly_increase = false;
  // count(M) >= (c/2) (2M+1)^d for all scheduled M, with c the fraction at
  // the smallest M.
  bool stability_holds = false;
  Rat base_fraction;
};

// Counts characters of T^d in sup-norm boxes that map the finite rational
// point set X into U, exactly, for each M in the schedule.
Theorem1Report theorem1_experiment(std::size_t dim,
                                   const std::vector<std::vector<Rat>>& x,
                                   const OpenArc& u,
                                   const std::vector<std::int64_t>& schedule,
                                   unsigned threads = 1);

}  // namespace qcdense
