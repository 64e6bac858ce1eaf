#include "qcdense/context.hpp"

#include <limits>
#include <numeric>

namespace qcdense {

FiniteGroupContext::FiniteGroupContext(FiniteAbelianGroup g, std::int64_t cap)
    : group_(std::move(g)), cap_(cap) {
  // The residue path needs every per-factor term (chi_i * x_i mod L) * w_i
  // and the running sum to stay within int64.
  Int l = 1;
  for (std::int64_t n : group_.orders()) l = lcm(l, Int(n));
  constexpr std::int64_t kFastLimit = std::int64_t{1} << 31;
  std::int64_t max_order = *std::max_element(group_.orders().begin(),
                                             group_.orders().end());
  if (l <= kFastLimit && max_order <= kFastLimit) {
    lcm_ = static_cast<std::int64_t>(l);
    weights_.reserve(group_.orders().size());
    for (std::int64_t n : group_.orders()) weights_.push_back(lcm_ / n);
    fast_ = true;
  }
}

std::int64_t FiniteGroupContext::fast_residue(const Character& chi,
                                              const GroupElement& x) const {
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    std::int64_t t = (chi.coords[i] * x.coords[i]) % lcm_;
    acc = (acc + t * weights_[i] % lcm_) % lcm_;
  }
  return acc;
}

bool FiniteGroupContext::pair_in_t_plus(const Character& chi,
                                        const GroupElement& x) const {
  if (fast_) {
    std::int64_t r = fast_residue(chi, x);
    std::int64_t m = std::min(r, lcm_ - r);
    return 4 * m <= lcm_;
  }
  return in_t_plus(group_.pairing(chi, x));
}

bool FiniteGroupContext::pair_is_zero(const Character& chi,
                                      const GroupElement& x) const {
  if (fast_) return fast_residue(chi, x) == 0;
  return group_.pairing(chi, x).is_zero();
}

bool FiniteGroupContext::pair_in_arc(const Character& chi,
                                     const GroupElement& x,
                                     const OpenArc& u) const {
  if (fast_) {
    std::int64_t r = fast_residue(chi, x);
    Int m = std::min(r, lcm_ - r);
    return m * denominator(u.radius()) < numerator(u.radius()) * lcm_;
  }
  return in_arc(group_.pairing(chi, x), u);
}

}  // namespace qcdense
