#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcdense {

// All exact arithmetic runs on arbitrary-precision integers. Group
// coordinates stay in int64 (factor orders are desk-scale), but pairing
// numerators and lattice counts can exceed 64 bits.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using boost::multiprecision::denominator;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;
using boost::multiprecision::numerator;

// Thrown by enumeration-backed operations when the configured cap would be
// exceeded (default 10^6 elements).
class enumeration_cap_exceeded : public std::runtime_error {
 public:
  explicit enumeration_cap_exceeded(const std::string& what)
      : std::runtime_error(what) {}
};

inline constexpr std::int64_t kDefaultEnumerationCap = 1'000'000;

// "a/b" with b > 0 reduced, or plain "a" for integers.
std::string rat_to_string(const Rat& q);
Rat parse_rational(const std::string& text);

bool is_prime(std::int64_t n);
std::vector<std::int64_t> primes_up_to(std::int64_t n);

// Inverse of a mod m (m >= 2, gcd(a, m) = 1).
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);
Int int_mod_inverse(const Int& a, const Int& m);

Int int_pow(std::int64_t base, int exp);

Int rat_floor(const Rat& q);

// Exponent of p in n (n != 0).
int p_adic_valuation(const Int& n, std::int64_t p);

}  // namespace qcdense
