#pragma once

#include "qcdense/compact_model.hpp"
#include "qcdense/finite_group.hpp"
#include "qcdense/homomorphism.hpp"
#include "qcdense/solenoid.hpp"

#include <string>
#include <vector>

namespace qcdense {

// Grammars used on the CLI and in JSON reports. Parse errors throw
// std::invalid_argument.
//
//   group:    Z4xZ9
//   element:  (1,0)         set: (1,0),(2,1)
//   model:    T | Zp(3) | prod(T,Zp(3),T)
//   point:    1/2 for T, 5 for Zp, (1/2,5) for products
//   rational: -1/4 or 3

FiniteAbelianGroup parse_group(const std::string& text);

GroupElement parse_element(const FiniteAbelianGroup& g, const std::string& text);
std::vector<GroupElement> parse_element_set(const FiniteAbelianGroup& g,
                                            const std::string& text);

CompactModel parse_model(const std::string& text);

ModelPoint parse_point(const CompactModel& m, const std::string& text);
std::vector<ModelPoint> parse_point_set(const CompactModel& m,
                                        const std::string& text);

// {"source": "Z4", "target": "Z2", "matrix": [[1]]}
Homomorphism parse_homomorphism_json(const std::string& json_text);
std::string homomorphism_to_json(const Homomorphism& f);

// Top-level comma split that respects parentheses/brackets/braces.
std::vector<std::string> split_top_level(const std::string& text, char sep);

}  // namespace qcdense
