#pragma once

#include "qcdense/ints.hpp"

#include <compare>
#include <cstdint>
#include <string>

namespace qcdense {

// A point of T = R/Z as the exact reduced rational representative in
// (-1/2, 1/2]. Equality of values is structural equality of num/den.
class TorusValue {
 public:
  TorusValue() : num_(0), den_(1) {}

  // Reduces q mod 1 into the canonical window.
  static TorusValue canonicalize(const Rat& q);
  static TorusValue canonicalize(const Int& num, const Int& den);

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }
  Rat as_rational() const { return Rat(num_, den_); }

  bool is_zero() const { return num_ == 0; }

  friend TorusValue add(const TorusValue& a, const TorusValue& b);
  friend TorusValue neg(const TorusValue& a);
  friend TorusValue scale(const Int& m, const TorusValue& a);

  friend bool operator==(const TorusValue&, const TorusValue&) = default;
  // Order of the canonical representatives; used only for deterministic
  // report output.
  friend std::strong_ordering operator<=>(const TorusValue& a,
                                          const TorusValue& b) {
    Int lhs = a.num_ * b.den_;
    Int rhs = b.num_ * a.den_;
    return lhs < rhs   ? std::strong_ordering::less
           : lhs > rhs ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
  }

  std::string to_string() const;

 private:
  TorusValue(Int num, Int den) : num_(std::move(num)), den_(std::move(den)) {}

  Int num_;  // gcd(|num|, den) == 1
  Int den_;  // den >= 1 and -den < 2*num <= den
};

// Symmetric open arc (-radius, radius) around 0; the only neighbourhood
// shape the toolkit works with. radius in (0, 1/2].
class OpenArc {
 public:
  explicit OpenArc(const Rat& radius);

  const Rat& radius() const { return radius_; }
  std::string to_string() const { return rat_to_string(radius_); }

  friend bool operator==(const OpenArc&, const OpenArc&) = default;

 private:
  Rat radius_;
};

// T_+ = [-1/4, 1/4], endpoints included.
bool in_t_plus(const TorusValue& a);

// Strict membership |a| < radius.
bool in_arc(const TorusValue& a, const OpenArc& u);

// V_n = { x : kx in T_+ for k = 1..n }, evaluated by definition.
bool in_v_n(const TorusValue& a, std::int64_t n);

// Least n with V_n contained in the open arc. V_1 = T_+ and, for n >= 2,
// V_n is the closed interval of radius 1/(4n).
std::int64_t min_n_with_v_n_inside(const OpenArc& u);

}  // namespace qcdense
