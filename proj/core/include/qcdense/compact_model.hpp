#pragma once

#include "qcdense/ints.hpp"
#include "qcdense/torus.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace qcdense {

// Truncation-faithful models of the compact groups the toolkit works with:
// the circle T, the p-adic integers Z_p, and finite products of those.
class CompactModel {
 public:
  enum class Kind { Torus, PAdic, Product };

  static CompactModel torus();
  static CompactModel p_adic(std::int64_t p);
  static CompactModel product(std::vector<CompactModel> factors);

  Kind kind() const { return kind_; }
  std::int64_t prime() const;
  const std::vector<CompactModel>& factors() const;

  std::string to_string() const;  // "T", "Zp(3)", "prod(T,Zp(3))"

  friend bool operator==(const CompactModel& a, const CompactModel& b);

 private:
  CompactModel() = default;

  Kind kind_ = Kind::Torus;
  std::int64_t prime_ = 0;
  std::vector<CompactModel> factors_;
};

// Points: rational points of T, nonnegative integers of Z_p (finite p-adic
// expansions cover every construction used here), tuples for products.
struct ModelPoint {
  std::variant<TorusValue, Int, std::vector<ModelPoint>> value;

  bool is_zero() const;

  friend bool operator==(const ModelPoint&, const ModelPoint&) = default;
};

bool model_point_less(const ModelPoint& a, const ModelPoint& b);
std::string model_point_to_string(const ModelPoint& p);

// Characters in normal form.
//   Torus:   x -> m x                        (m in Z)
//   PAdic:   x -> m x / p^level              (0 < m < p^level, p !| m,
//                                             or (0,0) for the zero char)
//   Product: finite-support map into the factor duals
struct TorusChar {
  Int m;

  friend bool operator==(const TorusChar&, const TorusChar&) = default;
};

struct PAdicChar {
  Int m;
  int level = 0;

  friend bool operator==(const PAdicChar&, const PAdicChar&) = default;
};

struct ModelCharacter;

struct ProductChar {
  std::map<std::size_t, ModelCharacter> support;  // nonzero entries only

  friend bool operator==(const ProductChar&, const ProductChar&);
};

struct ModelCharacter {
  std::variant<TorusChar, PAdicChar, ProductChar> value;

  bool is_zero() const;

  friend bool operator==(const ModelCharacter&, const ModelCharacter&);
};

// Normalizes away the Pruefer relation (m, n) ~ (m p, n + 1) and reduces
// m mod p^n; the zero character becomes (0, 0).
PAdicChar make_padic_char(std::int64_t p, const Int& m, int level);

std::string model_character_to_string(const ModelCharacter& chi);

ModelPoint zero_point(const CompactModel& m);
ModelCharacter zero_character(const CompactModel& m);

bool point_matches(const CompactModel& m, const ModelPoint& x);
bool character_matches(const CompactModel& m, const ModelCharacter& chi);

TorusValue model_pairing(const CompactModel& m, const ModelCharacter& chi,
                         const ModelPoint& x);

// Character enumeration bounds: |m| <= torus_m_max on torus factors,
// level <= padic_levels on p-adic factors, support size <= max_support on
// products.
struct CharBound {
  std::int64_t torus_m_max = 0;
  int padic_levels = 0;
  std::size_t max_support = SIZE_MAX;

  std::string to_string() const;
};

std::vector<ModelCharacter> enumerate_characters_bounded(const CompactModel& m,
                                                         const CharBound& b);

// Bounded pairing context; qc-density statements through it hold "up to the
// bound", never more.
class BoundedModelContext {
 public:
  using ElementType = ModelPoint;
  using CharType = ModelCharacter;

  BoundedModelContext(CompactModel model, CharBound bound)
      : model_(std::move(model)), bound_(bound) {}

  const CompactModel& model() const { return model_; }
  const CharBound& bound() const { return bound_; }

  TorusValue pairing(const ModelCharacter& chi, const ModelPoint& x) const {
    return model_pairing(model_, chi, x);
  }
  ModelCharacter zero_character() const {
    return qcdense::zero_character(model_);
  }
  bool is_exhaustive() const { return false; }

  void for_each_character(
      const std::function<void(const ModelCharacter&)>& fn) const {
    for (const ModelCharacter& chi : enumerate_characters_bounded(model_, bound_)) {
      fn(chi);
    }
  }

 private:
  CompactModel model_;
  CharBound bound_;
};

}  // namespace qcdense
