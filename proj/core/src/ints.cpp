#include "qcdense/ints.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace qcdense {

std::string rat_to_string(const Rat& q) {
  std::ostringstream out;
  out << numerator(q);
  if (denominator(q) != 1) {
    out << '/' << denominator(q);
  }
  return out.str();
}

Rat parse_rational(const std::string& text) {
  auto bad = [&] {
    throw std::invalid_argument("not a rational: '" + text + "'");
  };
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(Int(s));
    }
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) bad();
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    bad();
  }
  return Rat();  // unreachable
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p <= n; ++p) {
    if (is_prime(p)) out.push_back(p);
  }
  return out;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = m, r1 = ((a % m) + m) % m;
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    std::int64_t s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) {
    throw std::invalid_argument("mod_inverse: arguments are not coprime");
  }
  return ((s0 % m) + m) % m;
}

Int int_mod_inverse(const Int& a, const Int& m) {
  Int r0 = m, r1 = ((a % m) + m) % m;
  Int s0 = 0, s1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int s2 = s0 - q * s1;
    r0 = r1;
    r1 = std::move(r2);
    s0 = s1;
    s1 = std::move(s2);
  }
  if (r0 != 1) {
    throw std::invalid_argument("int_mod_inverse: arguments are not coprime");
  }
  return ((s0 % m) + m) % m;
}

Int int_pow(std::int64_t base, int exp) {
  Int out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

Int rat_floor(const Rat& q) {
  Int num = numerator(q);
  Int den = denominator(q);
  Int t = num / den;  // truncates toward zero
  if (num < 0 && t * den != num) --t;
  return t;
}

int p_adic_valuation(const Int& n, std::int64_t p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  Int v = abs(n);
  int e = 0;
  while (v % p == 0) {
    v /= p;
    ++e;
  }
  return e;
}

}  // namespace qcdense
