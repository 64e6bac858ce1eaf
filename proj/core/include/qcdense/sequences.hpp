#pragma once

#include "qcdense/compact_model.hpp"
#include "qcdense/finite_group.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qcdense {

// A compact set with at most one non-isolated point, truncated to a finite
// list. The limit (always 0 here) is carried separately and is not listed
// among the points.
struct SuperSequence {
  std::vector<ModelPoint> points;  // distinct, nonzero
  ModelPoint limit;

  std::vector<ModelPoint> full_point_set() const;  // points plus limit
};

// { 1/(2n) : 1 <= n <= N } converging to 0; qc-dense in T.
SuperSequence torus_qc_sequence(std::int64_t n_max);

// { k p^j : 0 <= j < levels, 1 <= k <= p-1 } converging to 0; qc-dense
// in Z_p.
SuperSequence zp_qc_sequence(std::int64_t p, int levels);

// Union of the factor sets embedded with zeros elsewhere, plus 0.
std::vector<ModelPoint> fan_points(
    const CompactModel& product,
    const std::vector<std::vector<ModelPoint>>& factor_sets);

// Finite-group variant: builds the product group with one coordinate block
// per factor and embeds each subset.
std::pair<FiniteAbelianGroup, std::vector<GroupElement>> fan_finite(
    const std::vector<FiniteAbelianGroup>& factors,
    const std::vector<std::vector<GroupElement>>& subsets);

// Fan of per-factor supersequences, wrapped back into a supersequence.
SuperSequence fan_supersequence(const CompactModel& product,
                                const std::vector<SuperSequence>& factor_seqs);

struct ConstructiveWitness {
  ModelPoint point;
  TorusValue value;  // outside T_+
};

// The closed-form witness from the defining construction of the sequence:
//   torus:  x = 1/(2|m|) pairs to +-1/2;
//   p-adic: x = k p^(level-1), k solving k m = (p-1)/2 mod p (k = 1 for
//           p = 2), pairs to (p-1)/(2p) up to sign;
//   product: recurse into the smallest support index.
// Throws std::out_of_range when the sequence truncation does not cover chi.
ConstructiveWitness constructive_witness(const CompactModel& m,
                                         const ModelCharacter& chi,
                                         const SuperSequence& seq);

struct ModelWitness {
  ModelCharacter character;
  ModelPoint point;
  TorusValue value;
};

struct ModelVerification {
  ModelVerification(CompactModel m, CharBound b)
      : model(std::move(m)), bound(b) {}

  bool ok = false;
  CompactModel model;
  CharBound bound;
  std::vector<ModelWitness> witnesses;          // one per nonzero character
  std::optional<ModelCharacter> failing_character;
};

// For every nonzero character within the bound, searches the point set (in
// order, independently of constructive_witness) for a value outside T_+.
// Failure is a report outcome, not an exception.
ModelVerification verify_qc_dense_up_to(const CompactModel& m,
                                        const std::vector<ModelPoint>& x,
                                        const CharBound& bound,
                                        unsigned threads = 1);

// Finite-support basic neighbourhood of 0 in a product: per-factor
// constraints keyed by coordinate (key 0 for non-product models).
//   torus factor:  open arc
//   p-adic factor: level l, meaning p^l | x
struct FactorConstraint {
  std::variant<OpenArc, int> constraint;
};

struct NeighbourhoodSpec {
  std::map<std::size_t, FactorConstraint> constraints;
};

struct ConvergenceResult {
  bool converges = false;            // all but finitely many points inside
  bool limit_inside = false;
  std::vector<ModelPoint> exceptions;  // points outside, in sequence order
};

ConvergenceResult check_supersequence_convergence(const CompactModel& m,
                                                  const SuperSequence& seq,
                                                  const NeighbourhoodSpec& nbhd);

// Finite-group analogue: the neighbourhood pins the listed coordinates to 0
// (the group is discrete, so these generate a neighbourhood base).
std::vector<GroupElement> convergence_exceptions_finite(
    const FiniteAbelianGroup& g, const std::vector<GroupElement>& points,
    const std::vector<std::size_t>& zero_coordinates);

}  // namespace qcdense
