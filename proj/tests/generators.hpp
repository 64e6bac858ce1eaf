#pragma once

// Shared randomized-instance generators for property tests and the
// acceptance suite. All deterministic given the caller's RNG.

#include "qcdense/homomorphism.hpp"
#include "qcdense/qc_ops.hpp"
#include "qcdense/subset_search.hpp"

#include <numeric>
#include <random>

namespace qcdense::testing {

inline FiniteAbelianGroup random_small_group(std::mt19937_64& rng,
                                             std::int64_t max_order,
                                             int max_factors = 3) {
  std::uniform_int_distribution<int> n_factors(1, max_factors);
  std::uniform_int_distribution<std::int64_t> order(2, 12);
  for (;;) {
    std::vector<std::int64_t> orders;
    int k = n_factors(rng);
    for (int i = 0; i < k; ++i) orders.push_back(order(rng));
    FiniteAbelianGroup g(orders);
    if (g.order() <= max_order) return g;
  }
}

inline GroupElement random_element(std::mt19937_64& rng,
                                   const FiniteAbelianGroup& g) {
  std::vector<std::int64_t> coords;
  for (std::int64_t n : g.orders()) {
    coords.push_back(std::uniform_int_distribution<std::int64_t>(0, n - 1)(rng));
  }
  return GroupElement{std::move(coords)};
}

// A qc-dense subset of g: one of the minimum-cardinality solutions, chosen
// uniformly.
inline std::vector<GroupElement> random_min_dense_subset(
    std::mt19937_64& rng, const FiniteAbelianGroup& g) {
  MinDenseResult found = search_min_dense(g, /*cap=*/64);
  std::uniform_int_distribution<std::size_t> pick(0, found.solutions.size() - 1);
  return found.solutions[pick(rng)];
}

struct ThreeSpaceInstance {
  Homomorphism f;
  std::vector<GroupElement> x;
};

// Arbitrary surjection (not necessarily split) found by rejection
// sampling, with the entire kernel inside X; the kernel is qc-dense in
// itself, so the precondition holds.
inline ThreeSpaceInstance random_surjection_instance(std::mt19937_64& rng) {
  for (;;) {
    FiniteAbelianGroup g = random_small_group(rng, 36, 2);
    FiniteAbelianGroup h = random_small_group(rng, 12, 2);
    std::vector<std::vector<std::int64_t>> m(
        h.num_factors(), std::vector<std::int64_t>(g.num_factors()));
    for (std::size_t j = 0; j < h.num_factors(); ++j) {
      std::int64_t mj = h.orders()[j];
      for (std::size_t i = 0; i < g.num_factors(); ++i) {
        std::int64_t step = mj / std::gcd(mj, g.orders()[i]);
        std::int64_t slots = mj / step;
        m[j][i] =
            step * std::uniform_int_distribution<std::int64_t>(0, slots - 1)(rng);
      }
    }
    Homomorphism f(g, h, m);
    if (!f.is_surjective()) continue;
    std::vector<GroupElement> x = f.kernel();
    int extras = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int i = 0; i < extras; ++i) x.push_back(random_element(rng, g));
    return ThreeSpaceInstance{std::move(f), sorted_unique(std::move(x))};
  }
}

// (G, H, f, X) with f: A x H -> H surjective of the form (a, b) -> Ma + b
// and X containing the image of a qc-dense subset of A under a section of
// ker f, so the kernel precondition holds by construction. Mixed with the
// rejection-sampled family for variety.
inline ThreeSpaceInstance random_three_space_instance(std::mt19937_64& rng) {
  if (rng() % 2) return random_surjection_instance(rng);
  FiniteAbelianGroup a = random_small_group(rng, 24, 2);
  FiniteAbelianGroup h = random_small_group(rng, 24, 2);

  std::vector<std::int64_t> g_orders = a.orders();
  g_orders.insert(g_orders.end(), h.orders().begin(), h.orders().end());
  FiniteAbelianGroup g(g_orders);

  // f = [M | I] with M[j][i] a multiple of m_j / gcd(m_j, n_i), which keeps
  // every column well-defined.
  std::vector<std::vector<std::int64_t>> m(
      h.num_factors(),
      std::vector<std::int64_t>(a.num_factors() + h.num_factors(), 0));
  for (std::size_t j = 0; j < h.num_factors(); ++j) {
    std::int64_t mj = h.orders()[j];
    for (std::size_t i = 0; i < a.num_factors(); ++i) {
      std::int64_t step = mj / std::gcd(mj, a.orders()[i]);
      std::int64_t slots = mj / step;
      m[j][i] = step * std::uniform_int_distribution<std::int64_t>(0, slots - 1)(rng);
    }
    m[j][a.num_factors() + j] = 1;
  }
  Homomorphism f(g, h, m);

  // Section of ker f over A: a -> (a, -Ma).
  auto lift = [&](const GroupElement& pa) {
    std::vector<std::int64_t> coords = pa.coords;
    for (std::size_t j = 0; j < h.num_factors(); ++j) {
      std::int64_t mj = h.orders()[j];
      std::int64_t acc = 0;
      for (std::size_t i = 0; i < a.num_factors(); ++i) {
        acc = (acc + m[j][i] % mj * (pa.coords[i] % mj)) % mj;
      }
      coords.push_back(((-acc) % mj + mj) % mj);
    }
    return GroupElement{std::move(coords)};
  };

  std::vector<GroupElement> x;
  if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
    // whole kernel
    a.for_each_element([&](const GroupElement& pa) { x.push_back(lift(pa)); });
  } else {
    for (const GroupElement& pa : random_min_dense_subset(rng, a)) {
      x.push_back(lift(pa));
    }
  }
  int extras = std::uniform_int_distribution<int>(0, 4)(rng);
  for (int i = 0; i < extras; ++i) x.push_back(random_element(rng, g));
  return ThreeSpaceInstance{std::move(f), sorted_unique(std::move(x))};
}

}  // namespace qcdense::testing
