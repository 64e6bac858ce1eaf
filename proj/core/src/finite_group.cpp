#include "qcdense/finite_group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace qcdense {

namespace {

std::int64_t mod_reduce(std::int64_t v, std::int64_t n) {
  std::int64_t r = v % n;
  return r < 0 ? r + n : r;
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> orders)
    : orders_(std::move(orders)) {
  if (orders_.empty()) {
    throw std::invalid_argument("group needs at least one cyclic factor");
  }
  for (std::int64_t n : orders_) {
    if (n < 1) throw std::invalid_argument("cyclic factor order must be >= 1");
  }
}

Int FiniteAbelianGroup::order() const {
  Int total = 1;
  for (std::int64_t n : orders_) total *= n;
  return total;
}

GroupElement FiniteAbelianGroup::zero() const {
  return GroupElement{std::vector<std::int64_t>(orders_.size(), 0)};
}

Character FiniteAbelianGroup::zero_character() const {
  return Character{std::vector<std::int64_t>(orders_.size(), 0)};
}

bool FiniteAbelianGroup::is_valid(const GroupElement& x) const {
  if (x.coords.size() != orders_.size()) return false;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (x.coords[i] < 0 || x.coords[i] >= orders_[i]) return false;
  }
  return true;
}

bool FiniteAbelianGroup::is_valid(const Character& chi) const {
  if (chi.coords.size() != orders_.size()) return false;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (chi.coords[i] < 0 || chi.coords[i] >= orders_[i]) return false;
  }
  return true;
}

GroupElement FiniteAbelianGroup::reduce(
    const std::vector<std::int64_t>& raw) const {
  if (raw.size() != orders_.size()) {
    throw std::invalid_argument("coordinate count does not match group");
  }
  GroupElement out;
  out.coords.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out.coords[i] = mod_reduce(raw[i], orders_[i]);
  }
  return out;
}

GroupElement FiniteAbelianGroup::add(const GroupElement& a,
                                     const GroupElement& b) const {
  GroupElement out;
  out.coords.resize(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    out.coords[i] = mod_reduce(a.coords[i] + b.coords[i], orders_[i]);
  }
  return out;
}

GroupElement FiniteAbelianGroup::neg(const GroupElement& a) const {
  GroupElement out;
  out.coords.resize(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    out.coords[i] = mod_reduce(-a.coords[i], orders_[i]);
  }
  return out;
}

GroupElement FiniteAbelianGroup::scale(std::int64_t m,
                                       const GroupElement& a) const {
  GroupElement out;
  out.coords.resize(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    std::int64_t mi = mod_reduce(m, orders_[i]);
    out.coords[i] = mod_reduce(mi * a.coords[i] % orders_[i], orders_[i]);
  }
  return out;
}

Character FiniteAbelianGroup::add(const Character& a, const Character& b) const {
  Character out;
  out.coords.resize(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    out.coords[i] = mod_reduce(a.coords[i] + b.coords[i], orders_[i]);
  }
  return out;
}

std::int64_t FiniteAbelianGroup::element_order(const GroupElement& x) const {
  std::int64_t ord = 1;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    std::int64_t oi = orders_[i] / std::gcd(x.coords[i], orders_[i]);
    ord = std::lcm(ord, oi);
  }
  return ord;
}

TorusValue FiniteAbelianGroup::pairing(const Character& chi,
                                       const GroupElement& x) const {
  if (chi.coords.size() != orders_.size() ||
      x.coords.size() != orders_.size()) {
    throw std::invalid_argument("pairing shape mismatch");
  }
  Rat sum = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (chi.coords[i] == 0 || x.coords[i] == 0) continue;
    sum += Rat(Int(chi.coords[i]) * x.coords[i], Int(orders_[i]));
  }
  return TorusValue::canonicalize(sum);
}

void FiniteAbelianGroup::check_cap(std::int64_t cap) const {
  if (order() > cap) {
    throw enumeration_cap_exceeded("group of order " + order().str() +
                                   " exceeds enumeration cap " +
                                   std::to_string(cap));
  }
}

void FiniteAbelianGroup::for_each_element(
    const std::function<void(const GroupElement&)>& fn,
    std::int64_t cap) const {
  check_cap(cap);
  GroupElement cur = zero();
  for (;;) {
    fn(cur);
    // lexicographic odometer, last coordinate fastest
    std::size_t i = orders_.size();
    while (i > 0) {
      --i;
      if (++cur.coords[i] < orders_[i]) break;
      cur.coords[i] = 0;
      if (i == 0) return;
    }
  }
}

void FiniteAbelianGroup::for_each_character(
    const std::function<void(const Character&)>& fn, std::int64_t cap) const {
  for_each_element(
      [&](const GroupElement& x) { fn(Character{x.coords}); }, cap);
}

std::vector<GroupElement> FiniteAbelianGroup::enumerate_elements(
    std::int64_t cap) const {
  std::vector<GroupElement> out;
  for_each_element([&](const GroupElement& x) { out.push_back(x); }, cap);
  return out;
}

std::vector<Character> FiniteAbelianGroup::enumerate_characters(
    std::int64_t cap) const {
  std::vector<Character> out;
  for_each_character([&](const Character& c) { out.push_back(c); }, cap);
  return out;
}

std::vector<GroupElement> FiniteAbelianGroup::generated_subgroup(
    const std::vector<GroupElement>& gens, std::int64_t cap) const {
  std::set<GroupElement> closure;
  closure.insert(zero());
  std::vector<GroupElement> frontier(closure.begin(), closure.end());
  std::vector<GroupElement> normalized;
  normalized.reserve(gens.size() * 2);
  for (const GroupElement& g : gens) {
    if (!is_valid(g)) throw std::invalid_argument("generator not in group");
    normalized.push_back(g);
    normalized.push_back(neg(g));
  }
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const GroupElement& h : frontier) {
      for (const GroupElement& g : normalized) {
        GroupElement s = add(h, g);
        if (closure.insert(s).second) {
          next.push_back(s);
          if (static_cast<std::int64_t>(closure.size()) > cap) {
            throw enumeration_cap_exceeded(
                "generated subgroup exceeds enumeration cap");
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return {closure.begin(), closure.end()};
}

bool FiniteAbelianGroup::is_subgroup(
    const std::vector<GroupElement>& elems) const {
  std::set<GroupElement> s(elems.begin(), elems.end());
  if (!s.count(zero())) return false;
  for (const GroupElement& a : elems) {
    if (!is_valid(a)) return false;
    if (!s.count(neg(a))) return false;
    for (const GroupElement& b : elems) {
      if (!s.count(add(a, b))) return false;
    }
  }
  return true;
}

std::string FiniteAbelianGroup::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (i) out << 'x';
    out << 'Z' << orders_[i];
  }
  return out.str();
}

std::string element_to_string(const GroupElement& x) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    if (i) out << ',';
    out << x.coords[i];
  }
  out << ')';
  return out.str();
}

std::string character_to_string(const Character& chi) {
  return element_to_string(GroupElement{chi.coords});
}

GroupElement SubgroupDecomposition::embed(const FiniteAbelianGroup& ambient,
                                          const GroupElement& abstract_elem) const {
  GroupElement acc = ambient.zero();
  for (std::size_t i = 0; i < generators.size(); ++i) {
    acc = ambient.add(acc, ambient.scale(abstract_elem.coords[i], generators[i]));
  }
  return acc;
}

namespace {

// Basis search inside one primary component: greedily extend by elements of
// maximal order whose cyclic span meets the current span trivially, with
// backtracking (rarely triggered at desk scale).
struct PrimaryBasisSearch {
  const FiniteAbelianGroup& G;
  std::vector<GroupElement> candidates;  // the primary component, sorted
  std::int64_t target_size;

  std::vector<GroupElement> basis;
  std::set<GroupElement> span;

  bool independent(const GroupElement& g, std::int64_t p,
                   std::int64_t ord) const {
    // <g> meets span trivially iff the minimal subgroup generator
    // (ord/p) * g is outside the span.
    return span.count(G.scale(ord / p, g)) == 0;
  }

  bool extend(std::int64_t p) {
    auto span_size = static_cast<std::int64_t>(span.size());
    if (span_size == target_size) return true;
    // Candidates in decreasing order of element order, lexicographic within.
    std::vector<std::pair<std::int64_t, const GroupElement*>> ranked;
    for (const GroupElement& g : candidates) {
      std::int64_t ord = G.element_order(g);
      if (ord <= 1) continue;
      if (span_size * ord > target_size) continue;
      if (!independent(g, p, ord)) continue;
      ranked.emplace_back(ord, &g);
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [ord, gp] : ranked) {
      const GroupElement& g = *gp;
      std::set<GroupElement> saved = span;
      for (const GroupElement& h : saved) {
        GroupElement acc = h;
        for (std::int64_t k = 1; k < ord; ++k) {
          acc = G.add(acc, g);
          span.insert(acc);
        }
      }
      basis.push_back(g);
      if (extend(p)) return true;
      basis.pop_back();
      span = std::move(saved);
    }
    return false;
  }
};

}  // namespace

SubgroupDecomposition decompose_subgroup(
    const FiniteAbelianGroup& ambient, const std::vector<GroupElement>& elems) {
  if (!ambient.is_subgroup(elems)) {
    throw std::invalid_argument("element set is not a subgroup");
  }
  std::int64_t size = static_cast<std::int64_t>(elems.size());

  // Split |S| into prime powers and collect each primary component.
  std::map<std::int64_t, std::int64_t> prime_power;  // p -> p^e_p
  std::int64_t rest = size;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    if (rest % p) continue;
    std::int64_t pe = 1;
    while (rest % p == 0) {
      rest /= p;
      pe *= p;
    }
    prime_power[p] = pe;
  }
  if (rest > 1) prime_power[rest] = rest;

  std::vector<std::int64_t> abstract_orders;
  std::vector<GroupElement> generators;
  for (const auto& [p, pe] : prime_power) {
    std::vector<GroupElement> component;
    for (const GroupElement& x : elems) {
      std::int64_t ord = ambient.element_order(x);
      // primary part membership: order is a power of p
      std::int64_t o = ord;
      while (o % p == 0) o /= p;
      if (o == 1) component.push_back(x);
    }
    std::sort(component.begin(), component.end());
    PrimaryBasisSearch search{ambient, component, pe, {}, {}};
    search.span.insert(ambient.zero());
    if (!search.extend(p)) {
      throw std::logic_error("primary basis search failed (not a subgroup?)");
    }
    // Larger factors first within each prime, as found by the search.
    for (const GroupElement& g : search.basis) {
      abstract_orders.push_back(ambient.element_order(g));
      generators.push_back(g);
    }
  }
  if (abstract_orders.empty()) {
    // trivial subgroup
    abstract_orders.push_back(1);
    generators.push_back(ambient.zero());
  }
  return SubgroupDecomposition{FiniteAbelianGroup(abstract_orders),
                               std::move(generators)};
}

}  // namespace qcdense
