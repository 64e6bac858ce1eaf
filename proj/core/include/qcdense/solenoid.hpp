#pragma once

#include "qcdense/ints.hpp"
#include "qcdense/torus.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qcdense {

// The dual of discrete Q, modelled as N / <u> with N = R x prod_p Z_p and
// u = (1, 1, 1, ...). A class is stored through the representative
//   ( t , (c + s_p)_p )   with t in [0, 1),
// where c is a common integer offset (so multiples of u stay finitely
// representable) and s holds finitely many per-prime corrections.
class SolenoidElement {
 public:
  SolenoidElement() : t_(0), c_(0) {}

  // Normalizes an arbitrary representative by subtracting floor(t) * u.
  static SolenoidElement from_raw(const Rat& t, const Int& c,
                                  const std::map<std::int64_t, Int>& s);

  const Rat& t() const { return t_; }
  const Int& c() const { return c_; }
  const std::map<std::int64_t, Int>& s() const { return s_; }

  // p-adic coordinate c + s_p.
  Int coordinate(std::int64_t p) const;

  bool is_zero() const { return t_ == 0 && c_ == 0 && s_.empty(); }

  std::string to_string() const;  // {t=1/6,c=0,s={3:6}}

  friend bool operator==(const SolenoidElement&, const SolenoidElement&) = default;

 private:
  Rat t_;                           // in [0, 1)
  Int c_;
  std::map<std::int64_t, Int> s_;   // nonzero corrections, prime keys
};

SolenoidElement solenoid_add(const SolenoidElement& a, const SolenoidElement& b);
SolenoidElement solenoid_neg(const SolenoidElement& a);

// Character of N/<u> indexed by a rational q; height = max(|num|, den).
struct RationalCharacter {
  Rat q;

  Int height() const;
  friend bool operator==(const RationalCharacter&, const RationalCharacter&) = default;
};

// The unique a/p^e in [0,1) with r - a/p^e p-integral.
Rat p_adic_fractional_part(const Rat& r, std::int64_t p);

// chi_q(x) = q t - sum_p fracpart_p(q (c + s_p)) mod 1, the sum running
// over primes dividing den(q) or in the support of s. Representative-
// independent: adding u shifts the expression by q - sum_p fracpart_p(q),
// an integer by partial fractions.
TorusValue solenoid_pairing(const RationalCharacter& chi,
                            const SolenoidElement& x);

// theta(T x {0}) u theta({0} x S): torus points 1/(2n) for n <= seq_len and
// p-adic corrections k p^j for p <= prime_max, j < levels, plus zero.
std::vector<SolenoidElement> qhat_qc_sequence(std::int64_t seq_len,
                                              std::int64_t prime_max,
                                              int levels);

// All reduced q != 0 with height <= bound, sorted by height, then
// numerator, then denominator.
std::vector<RationalCharacter> rational_characters_up_to(std::int64_t height);

struct QhatWitness {
  RationalCharacter character;
  SolenoidElement point;
  TorusValue value;
};

struct QhatVerification {
  bool ok = false;
  std::int64_t height = 0;
  std::vector<QhatWitness> witnesses;
  std::optional<RationalCharacter> failing_character;
};

// Exhaustively witnesses every character of height <= `height` against X,
// and cross-checks the closed-form witness (torus point 1/(2|q|) for
// integer q, p-adic correction k p^(e-1) otherwise). Throws
// std::out_of_range when X does not contain a required witness point,
// i.e. the sequence parameters do not cover the height.
QhatVerification verify_qhat_qc_dense(const std::vector<SolenoidElement>& x,
                                      std::int64_t height,
                                      unsigned threads = 1);

// The closed-form witness point for one character (used by the verifier's
// cross-check and exposed for tests).
SolenoidElement qhat_constructive_witness_point(const RationalCharacter& chi);

}  // namespace qcdense
