#include "qcdense/torus.hpp"

#include <sstream>
#include <utility>

namespace qcdense {

TorusValue TorusValue::canonicalize(const Rat& q) {
  Int num = numerator(q);
  Int den = denominator(q);  // cpp_rational keeps den > 0, reduced
  // Shift into [0, 1): num mod den with a nonnegative remainder.
  Int r = num % den;
  if (r < 0) r += den;
  // Move (1/2, 1) down into (-1/2, 0).
  if (2 * r > den) r -= den;
  return TorusValue(std::move(r), std::move(den));
}

TorusValue TorusValue::canonicalize(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("torus value with zero denominator");
  return canonicalize(Rat(num, den));
}

TorusValue add(const TorusValue& a, const TorusValue& b) {
  return TorusValue::canonicalize(a.as_rational() + b.as_rational());
}

TorusValue neg(const TorusValue& a) {
  return TorusValue::canonicalize(-a.as_rational());
}

TorusValue scale(const Int& m, const TorusValue& a) {
  return TorusValue::canonicalize(Rat(m * a.num_, a.den_));
}

std::string TorusValue::to_string() const {
  return rat_to_string(Rat(num_, den_));
}

OpenArc::OpenArc(const Rat& radius) : radius_(radius) {
  if (radius <= 0 || radius > Rat(1, 2)) {
    throw std::invalid_argument("arc radius must lie in (0, 1/2], got " +
                                rat_to_string(radius));
  }
}

bool in_t_plus(const TorusValue& a) {
  // |num/den| <= 1/4  <=>  4|num| <= den
  Int four_abs = 4 * abs(a.num());
  return four_abs <= a.den();
}

bool in_arc(const TorusValue& a, const OpenArc& u) {
  // |num/den| < r_num/r_den  <=>  |num| * r_den < r_num * den
  return abs(a.num()) * denominator(u.radius()) <
         numerator(u.radius()) * a.den();
}

bool in_v_n(const TorusValue& a, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("V_n needs n >= 1");
  for (std::int64_t k = 1; k <= n; ++k) {
    if (!in_t_plus(scale(Int(k), a))) return false;
  }
  return true;
}

std::int64_t min_n_with_v_n_inside(const OpenArc& u) {
  // V_1 = T_+ fits iff 1/4 < radius; for n >= 2, V_n = [-1/(4n), 1/(4n)]
  // fits iff 4n * radius > 1, so the least such n is floor(den/(4 num)) + 1.
  const Rat& r = u.radius();
  if (Rat(1, 4) < r) return 1;
  Int n = denominator(r) / (4 * numerator(r)) + 1;
  if (n < 2) n = 2;
  return static_cast<std::int64_t>(n);
}

}  // namespace qcdense
