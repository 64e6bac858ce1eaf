#include "qcdense/solenoid.hpp"

#include "qcdense/parallel.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace qcdense {

SolenoidElement SolenoidElement::from_raw(const Rat& t, const Int& c,
                                          const std::map<std::int64_t, Int>& s) {
  SolenoidElement out;
  Int k = rat_floor(t);
  out.t_ = t - Rat(k);
  out.c_ = c - k;
  for (const auto& [p, v] : s) {
    if (!is_prime(p)) {
      throw std::invalid_argument("correction key " + std::to_string(p) +
                                  " is not prime");
    }
    if (v != 0) out.s_.emplace(p, v);
  }
  return out;
}

Int SolenoidElement::coordinate(std::int64_t p) const {
  auto it = s_.find(p);
  return it == s_.end() ? c_ : c_ + it->second;
}

std::string SolenoidElement::to_string() const {
  std::ostringstream out;
  out << "{t=" << rat_to_string(t_) << ",c=" << c_;
  out << ",s={";
  bool first = true;
  for (const auto& [p, v] : s_) {
    if (!first) out << ',';
    first = false;
    out << p << ':' << v;
  }
  out << "}}";
  return out.str();
}

SolenoidElement solenoid_add(const SolenoidElement& a, const SolenoidElement& b) {
  std::map<std::int64_t, Int> s = a.s();
  for (const auto& [p, v] : b.s()) {
    auto [it, inserted] = s.emplace(p, v);
    if (!inserted) it->second += v;
  }
  return SolenoidElement::from_raw(a.t() + b.t(), a.c() + b.c(), s);
}

SolenoidElement solenoid_neg(const SolenoidElement& a) {
  std::map<std::int64_t, Int> s;
  for (const auto& [p, v] : a.s()) s.emplace(p, -v);
  return SolenoidElement::from_raw(-a.t(), -a.c(), s);
}

Int RationalCharacter::height() const {
  return std::max(Int(abs(numerator(q))), Int(denominator(q)));
}

Rat p_adic_fractional_part(const Rat& r, std::int64_t p) {
  if (r == 0) return Rat(0);
  const Int& den = denominator(r);
  if (den % p != 0) return Rat(0);
  int e = p_adic_valuation(den, p);
  Int pe = int_pow(p, e);
  Int b = den / pe;  // coprime to p
  // a = num * b^{-1} mod p^e gives the unique a/p^e in [0,1) with
  // r - a/p^e p-integral.
  Int a = numerator(r) % pe * int_mod_inverse(b, pe) % pe;
  if (a < 0) a += pe;
  return Rat(a, pe);
}

TorusValue solenoid_pairing(const RationalCharacter& chi,
                            const SolenoidElement& x) {
  const Rat& q = chi.q;
  Rat sum = q * x.t();
  std::set<std::int64_t> primes;
  for (const auto& [p, v] : x.s()) primes.insert(p);
  Int den = denominator(q);
  for (std::int64_t p = 2; den > 1; ++p) {
    if (den % p == 0) {
      primes.insert(p);
      while (den % p == 0) den /= p;
    }
  }
  for (std::int64_t p : primes) {
    sum -= p_adic_fractional_part(q * Rat(x.coordinate(p)), p);
  }
  return TorusValue::canonicalize(sum);
}

std::vector<SolenoidElement> qhat_qc_sequence(std::int64_t seq_len,
                                              std::int64_t prime_max,
                                              int levels) {
  if (seq_len < 1 || prime_max < 1 || levels < 1) {
    throw std::invalid_argument("qhat sequence parameters must be >= 1");
  }
  std::vector<SolenoidElement> out;
  for (std::int64_t n = 1; n <= seq_len; ++n) {
    out.push_back(SolenoidElement::from_raw(Rat(1, 2 * n), 0, {}));
  }
  for (std::int64_t p : primes_up_to(prime_max)) {
    Int pj = 1;
    for (int j = 0; j < levels; ++j) {
      for (std::int64_t k = 1; k <= p - 1; ++k) {
        out.push_back(SolenoidElement::from_raw(Rat(0), 0, {{p, k * pj}}));
      }
      pj *= p;
    }
  }
  out.push_back(SolenoidElement());
  return out;
}

std::vector<RationalCharacter> rational_characters_up_to(std::int64_t height) {
  std::vector<RationalCharacter> out;
  for (std::int64_t h = 1; h <= height; ++h) {
    for (std::int64_t a = -h; a <= h; ++a) {
      if (a == 0) continue;
      for (std::int64_t b = 1; b <= h; ++b) {
        if (std::max(std::abs(a), b) != h) continue;
        if (std::gcd(a < 0 ? -a : a, b) != 1) continue;
        out.push_back(RationalCharacter{Rat(a, b)});
      }
    }
  }
  return out;
}

SolenoidElement qhat_constructive_witness_point(const RationalCharacter& chi) {
  const Int num = numerator(chi.q);
  const Int den = denominator(chi.q);
  if (num == 0) {
    throw std::invalid_argument("no witness for the zero character");
  }
  if (den == 1) {
    // Integer q: the torus point 1/(2|q|) pairs to +-1/2.
    return SolenoidElement::from_raw(Rat(1, 2 * abs(num)), 0, {});
  }
  // Pick the smallest prime p | den; the value is -fracpart_p of
  // q k p^(e-1) = (num k / (p b')) with b' = den / p^e, i.e. -k' / p with
  // k' = num k (b')^{-1} mod p. Choose k so that k'/p lands in (1/4, 3/4)
  // as solved against the implemented pairing formula.
  std::int64_t p = 2;
  while (den % p != 0) ++p;
  int e = p_adic_valuation(den, p);
  Int b_rest = den / int_pow(p, e);
  std::int64_t k = 1;
  if (p > 2) {
    std::int64_t target = (p - 1) / 2;
    std::int64_t num_mod = static_cast<std::int64_t>(((num % p) + p) % p);
    std::int64_t b_mod = static_cast<std::int64_t>(b_rest % p);
    k = target * mod_inverse(num_mod, p) % p * b_mod % p;
  }
  return SolenoidElement::from_raw(Rat(0), 0, {{p, Int(k) * int_pow(p, e - 1)}});
}

QhatVerification verify_qhat_qc_dense(const std::vector<SolenoidElement>& x,
                                      std::int64_t height, unsigned threads) {
  QhatVerification result;
  result.height = height;
  std::vector<RationalCharacter> chars = rational_characters_up_to(height);

  struct PerChar {
    std::optional<std::pair<SolenoidElement, TorusValue>> witness;
    bool constructive_in_x = false;
    bool constructive_outside_t_plus = false;
  };
  auto probe = [&](std::size_t i) -> PerChar {
    const RationalCharacter& chi = chars[i];
    PerChar out;
    for (const SolenoidElement& pt : x) {
      TorusValue v = solenoid_pairing(chi, pt);
      if (!in_t_plus(v)) {
        out.witness = std::make_pair(pt, v);
        break;
      }
    }
    SolenoidElement cw = qhat_constructive_witness_point(chi);
    out.constructive_in_x = std::find(x.begin(), x.end(), cw) != x.end();
    out.constructive_outside_t_plus = !in_t_plus(solenoid_pairing(chi, cw));
    return out;
  };
  auto probed = parallel_map_indexed<PerChar>(chars.size(), threads, probe);

  result.ok = true;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    const PerChar& pc = probed[i];
    if (!pc.constructive_in_x) {
      throw std::out_of_range(
          "sequence parameters do not cover character " +
          rat_to_string(chars[i].q) + " (missing witness point)");
    }
    if (!pc.constructive_outside_t_plus) {
      throw std::logic_error("constructive witness failed for character " +
                             rat_to_string(chars[i].q));
    }
    if (!pc.witness) {
      result.ok = false;
      result.failing_character = chars[i];
      break;
    }
    result.witnesses.push_back(
        QhatWitness{chars[i], pc.witness->first, pc.witness->second});
  }
  return result;
}

}  // namespace qcdense
