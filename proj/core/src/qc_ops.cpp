#include "qcdense/qc_ops.hpp"

#include <map>

namespace qcdense {

std::vector<GroupElement> sorted_unique(std::vector<GroupElement> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<Character> polar_right(const FiniteGroupContext& ctx,
                                   const std::vector<GroupElement>& e) {
  std::vector<Character> out;
  ctx.for_each_character([&](const Character& chi) {
    for (const GroupElement& x : e) {
      if (!ctx.pair_in_t_plus(chi, x)) return;
    }
    out.push_back(chi);
  });
  return out;
}

std::vector<Character> w_set(const FiniteGroupContext& ctx,
                             const std::vector<GroupElement>& x,
                             const OpenArc& u) {
  std::vector<Character> out;
  ctx.for_each_character([&](const Character& chi) {
    for (const GroupElement& p : x) {
      if (!ctx.pair_in_arc(chi, p, u)) return;
    }
    out.push_back(chi);
  });
  return out;
}

std::optional<Character> find_polar_counterexample(
    const FiniteGroupContext& ctx, const std::vector<GroupElement>& e) {
  std::optional<Character> found;
  const Character zero = ctx.zero_character();
  ctx.for_each_character([&](const Character& chi) {
    if (found || chi == zero) return;
    for (const GroupElement& x : e) {
      if (!ctx.pair_in_t_plus(chi, x)) return;
    }
    found = chi;
  });
  return found;
}

bool is_qc_dense(const FiniteGroupContext& ctx,
                 const std::vector<GroupElement>& e) {
  return !find_polar_counterexample(ctx, e).has_value();
}

std::vector<GroupElement> polar_left(const FiniteGroupContext& ctx,
                                     const std::vector<Character>& a) {
  std::vector<GroupElement> out;
  ctx.for_each_element([&](const GroupElement& x) {
    for (const Character& chi : a) {
      if (!ctx.pair_in_t_plus(chi, x)) return;
    }
    out.push_back(x);
  });
  return out;
}

std::vector<GroupElement> qc_hull(const FiniteGroupContext& ctx,
                                  const std::vector<GroupElement>& e) {
  return polar_left(ctx, polar_right(ctx, e));
}

bool is_quasi_convex(const FiniteGroupContext& ctx,
                     const std::vector<GroupElement>& e) {
  return qc_hull(ctx, e) == sorted_unique(e);
}

std::vector<GroupElement> sumset_k_n(const FiniteGroupContext& ctx,
                                     const std::vector<GroupElement>& x,
                                     std::int64_t n) {
  if (n < 1) throw std::invalid_argument("sumset needs n >= 1");
  const FiniteAbelianGroup& g = ctx.group();
  std::set<GroupElement> base(x.begin(), x.end());
  base.insert(g.zero());
  std::set<GroupElement> acc = base;
  for (std::int64_t step = 2; step <= n; ++step) {
    std::set<GroupElement> next;
    for (const GroupElement& a : acc) {
      for (const GroupElement& b : base) {
        next.insert(g.add(a, b));
        if (static_cast<std::int64_t>(next.size()) > ctx.cap()) {
          throw enumeration_cap_exceeded("sumset exceeds enumeration cap");
        }
      }
    }
    acc = std::move(next);
  }
  return {acc.begin(), acc.end()};
}

MinSumsetResult min_sumset_qc_dense(const FiniteGroupContext& ctx,
                                    const std::vector<GroupElement>& x,
                                    const OpenArc& u) {
  std::vector<Character> w = w_set(ctx, x, u);
  if (w.size() != 1 || !(w[0] == ctx.zero_character())) {
    throw std::domain_error("min_sumset_qc_dense requires W(X,U) = {0}");
  }
  MinSumsetResult result;
  result.v_n_bound = min_n_with_v_n_inside(u);
  const FiniteAbelianGroup& g = ctx.group();
  std::set<GroupElement> base(x.begin(), x.end());
  base.insert(g.zero());
  std::set<GroupElement> acc = base;
  for (std::int64_t n = 1; n <= result.v_n_bound; ++n) {
    if (n > 1) {
      std::set<GroupElement> next;
      for (const GroupElement& a : acc) {
        for (const GroupElement& b : base) next.insert(g.add(a, b));
      }
      acc = std::move(next);
    }
    std::vector<GroupElement> k_n(acc.begin(), acc.end());
    if (is_qc_dense(ctx, k_n)) {
      result.n = n;
      result.k_n = std::move(k_n);
      return result;
    }
  }
  // Unreachable when W(X,U) = {0}: by the V_n containment argument the sum
  // of v_n_bound copies is already qc-dense.
  throw std::logic_error("no qc-dense sumset up to the V_n bound");
}

bool check_generates(const FiniteGroupContext& ctx,
                     const std::vector<GroupElement>& x) {
  std::vector<GroupElement> gen = ctx.group().generated_subgroup(x, ctx.cap());
  return Int(gen.size()) == ctx.group().order();
}

bool check_hull_pushforward(const Homomorphism& f,
                            const std::vector<GroupElement>& x,
                            std::int64_t cap) {
  FiniteGroupContext src(f.source(), cap);
  FiniteGroupContext tgt(f.target(), cap);
  std::vector<GroupElement> hull_src = qc_hull(src, x);
  std::vector<GroupElement> image_of_hull;
  image_of_hull.reserve(hull_src.size());
  for (const GroupElement& p : hull_src) image_of_hull.push_back(f.apply(p));
  image_of_hull = sorted_unique(std::move(image_of_hull));

  std::vector<GroupElement> fx;
  fx.reserve(x.size());
  for (const GroupElement& p : x) fx.push_back(f.apply(p));
  std::vector<GroupElement> hull_tgt = qc_hull(tgt, sorted_unique(std::move(fx)));

  return std::includes(hull_tgt.begin(), hull_tgt.end(), image_of_hull.begin(),
                       image_of_hull.end());
}

ThreeSpaceVerdict check_three_space(const Homomorphism& f,
                                    const std::vector<GroupElement>& x,
                                    std::int64_t cap) {
  ThreeSpaceVerdict verdict;
  if (!f.is_surjective(cap)) {
    verdict.precondition_failure = "f is not surjective";
    return verdict;
  }
  std::vector<GroupElement> ker = f.kernel(cap);
  std::set<GroupElement> ker_set(ker.begin(), ker.end());
  std::vector<GroupElement> x_in_ker;
  for (const GroupElement& p : x) {
    if (ker_set.count(p)) x_in_ker.push_back(p);
  }
  // Kernel as a standalone group: coordinate-ize, pull X n ker back, and
  // test qc-density there.
  SubgroupDecomposition dec = decompose_subgroup(f.source(), ker);
  std::map<GroupElement, GroupElement> to_abstract;
  dec.group.for_each_element(
      [&](const GroupElement& a) {
        to_abstract.emplace(dec.embed(f.source(), a), a);
      },
      cap);
  std::vector<GroupElement> y_abstract;
  y_abstract.reserve(x_in_ker.size());
  for (const GroupElement& p : x_in_ker) y_abstract.push_back(to_abstract.at(p));
  FiniteGroupContext ker_ctx(dec.group, cap);
  if (!is_qc_dense(ker_ctx, y_abstract)) {
    verdict.precondition_failure = "X n ker f is not qc-dense in ker f";
    return verdict;
  }
  verdict.preconditions_ok = true;

  FiniteGroupContext src(f.source(), cap);
  FiniteGroupContext tgt(f.target(), cap);
  std::vector<GroupElement> fx;
  fx.reserve(x.size());
  for (const GroupElement& p : x) fx.push_back(f.apply(p));
  fx = sorted_unique(std::move(fx));

  std::optional<Character> src_counter = find_polar_counterexample(src, x);
  std::optional<Character> tgt_counter = find_polar_counterexample(tgt, fx);
  verdict.x_dense_in_source = !src_counter.has_value();
  verdict.image_dense_in_target = !tgt_counter.has_value();
  verdict.biconditional_holds =
      verdict.x_dense_in_source == verdict.image_dense_in_target;
  if (!verdict.biconditional_holds) {
    verdict.counterexample =
        verdict.x_dense_in_source ? tgt_counter : src_counter;
  }
  return verdict;
}

}  // namespace qcdense
