#pragma once

#include "qcdense/context.hpp"
#include "qcdense/qc_ops.hpp"

#include <cstdint>
#include <vector>

namespace qcdense {

struct MinDenseClass {
  std::vector<GroupElement> representative;            // lex-least member
  std::vector<std::vector<GroupElement>> members;      // translation class
};

struct MinDenseResult {
  std::int64_t min_size = 0;
  bool heuristic = false;  // true when found by beam search, not exhaustive
  std::vector<std::vector<GroupElement>> solutions;    // lex order
  std::vector<MinDenseClass> classes;                  // grouped by translation
};

inline constexpr std::int64_t kDefaultSearchCap = 20;

// All minimum-cardinality qc-dense subsets, by exhaustive combination
// search in increasing cardinality. Solutions equal under translation are
// grouped (translation does not preserve qc-density in general, but it is
// still an equivalence on the solution list). Throws
// enumeration_cap_exceeded for order > cap unless allow_heuristic, in which
// case a beam search returns a single (not necessarily minimal) solution.
MinDenseResult search_min_dense(const FiniteAbelianGroup& g,
                                std::int64_t cap = kDefaultSearchCap,
                                bool allow_heuristic = false);

}  // namespace qcdense
