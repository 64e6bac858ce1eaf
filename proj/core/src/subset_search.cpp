#include "qcdense/subset_search.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qcdense {

namespace {

// Lexicographic k-combinations of indices [0, n).
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  std::size_t k = idx.size();
  for (std::size_t i = k; i > 0; --i) {
    if (idx[i - 1] < n - k + (i - 1)) {
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

MinDenseResult beam_search(const FiniteGroupContext& ctx) {
  const FiniteAbelianGroup& g = ctx.group();
  std::vector<GroupElement> elems = g.enumerate_elements(ctx.cap());

  struct State {
    std::vector<GroupElement> subset;
    std::vector<Character> polar;  // nonzero characters still unhit
  };
  constexpr std::size_t kBeamWidth = 32;
  auto better = [](const State& a, const State& b) {
    if (a.polar.size() != b.polar.size()) return a.polar.size() < b.polar.size();
    return a.subset < b.subset;
  };

  State root;
  g.for_each_character(
      [&](const Character& c) {
        if (!(c == g.zero_character())) root.polar.push_back(c);
      },
      ctx.cap());
  std::vector<State> beam{std::move(root)};
  for (std::size_t depth = 1; depth <= elems.size(); ++depth) {
    // Keep at most kBeamWidth candidates alive at any point; the rest are
    // discarded as they are generated.
    std::vector<State> next;
    for (const State& st : beam) {
      for (const GroupElement& e : elems) {
        if (!st.subset.empty() && !(st.subset.back() < e)) continue;
        State cand;
        cand.subset = st.subset;
        cand.subset.push_back(e);
        cand.polar.reserve(st.polar.size());
        for (const Character& chi : st.polar) {
          if (ctx.pair_in_t_plus(chi, e)) cand.polar.push_back(chi);
        }
        if (cand.polar.empty()) {
          MinDenseResult result;
          result.min_size = static_cast<std::int64_t>(cand.subset.size());
          result.heuristic = true;
          result.solutions.push_back(cand.subset);
          result.classes.push_back(MinDenseClass{cand.subset, {cand.subset}});
          return result;
        }
        if (next.size() < kBeamWidth) {
          next.push_back(std::move(cand));
          if (next.size() == kBeamWidth) {
            std::make_heap(next.begin(), next.end(), better);  // worst on top
          }
        } else if (better(cand, next.front())) {
          std::pop_heap(next.begin(), next.end(), better);
          next.back() = std::move(cand);
          std::push_heap(next.begin(), next.end(), better);
        }
      }
    }
    std::sort(next.begin(), next.end(), better);
    beam = std::move(next);
    if (beam.empty()) break;
  }
  throw std::logic_error("beam search failed to reach a qc-dense subset");
}

}  // namespace

MinDenseResult search_min_dense(const FiniteAbelianGroup& g, std::int64_t cap,
                                bool allow_heuristic) {
  FiniteGroupContext ctx(g);
  if (g.order() > cap) {
    if (!allow_heuristic) {
      throw enumeration_cap_exceeded(
          "order " + g.order().str() + " exceeds the exhaustive search cap " +
          std::to_string(cap) + "; pass --heuristic for a beam search");
    }
    return beam_search(ctx);
  }

  std::vector<GroupElement> elems = g.enumerate_elements();
  std::size_t n = elems.size();
  MinDenseResult result;
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::vector<std::vector<GroupElement>> found;
    for (;;) {
      std::vector<GroupElement> subset;
      subset.reserve(k);
      for (std::size_t i : idx) subset.push_back(elems[i]);
      if (is_qc_dense(ctx, subset)) found.push_back(subset);
      if (k == 0 || !next_combination(idx, n)) break;
    }
    if (!found.empty()) {
      result.min_size = static_cast<std::int64_t>(k);
      result.solutions = std::move(found);
      break;
    }
    if (k == n) throw std::logic_error("no qc-dense subset found (impossible)");
  }

  // Group solutions equal up to translation; representative = lex-least.
  std::set<std::vector<GroupElement>> solution_set(result.solutions.begin(),
                                                   result.solutions.end());
  std::set<std::vector<GroupElement>> assigned;
  for (const auto& sol : result.solutions) {
    if (assigned.count(sol)) continue;
    MinDenseClass cls;
    cls.representative = sol;
    g.for_each_element([&](const GroupElement& shift) {
      std::vector<GroupElement> translated;
      translated.reserve(sol.size());
      for (const GroupElement& e : sol) translated.push_back(g.add(e, shift));
      std::sort(translated.begin(), translated.end());
      if (solution_set.count(translated) && !assigned.count(translated)) {
        assigned.insert(translated);
        cls.members.push_back(translated);
      }
    });
    std::sort(cls.members.begin(), cls.members.end());
    cls.representative = cls.members.front();
    result.classes.push_back(std::move(cls));
  }
  return result;
}

}  // namespace qcdense
