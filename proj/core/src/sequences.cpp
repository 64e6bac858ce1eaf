#include "qcdense/sequences.hpp"

#include "qcdense/parallel.hpp"

#include <algorithm>

namespace qcdense {

std::vector<ModelPoint> SuperSequence::full_point_set() const {
  std::vector<ModelPoint> out = points;
  out.push_back(limit);
  return out;
}

SuperSequence torus_qc_sequence(std::int64_t n_max) {
  if (n_max < 1) throw std::invalid_argument("torus sequence needs N >= 1");
  SuperSequence seq;
  seq.points.reserve(n_max);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    seq.points.push_back(
        ModelPoint{TorusValue::canonicalize(Rat(1, 2 * n))});
  }
  seq.limit = ModelPoint{TorusValue()};
  return seq;
}

SuperSequence zp_qc_sequence(std::int64_t p, int levels) {
  if (!is_prime(p)) throw std::invalid_argument("zp sequence needs a prime");
  if (levels < 1) throw std::invalid_argument("zp sequence needs levels >= 1");
  SuperSequence seq;
  Int pj = 1;
  for (int j = 0; j < levels; ++j) {
    for (std::int64_t k = 1; k <= p - 1; ++k) {
      seq.points.push_back(ModelPoint{Int(k * pj)});
    }
    pj *= p;
  }
  seq.limit = ModelPoint{Int(0)};
  return seq;
}

std::vector<ModelPoint> fan_points(
    const CompactModel& product,
    const std::vector<std::vector<ModelPoint>>& factor_sets) {
  const auto& factors = product.factors();
  if (factor_sets.size() != factors.size()) {
    throw std::invalid_argument("fan: one subset per factor required");
  }
  std::vector<ModelPoint> out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (const ModelPoint& p : factor_sets[i]) {
      if (!point_matches(factors[i], p)) {
        throw std::invalid_argument("fan: point does not match factor " +
                                    std::to_string(i));
      }
      std::vector<ModelPoint> coords;
      coords.reserve(factors.size());
      for (std::size_t j = 0; j < factors.size(); ++j) {
        coords.push_back(j == i ? p : zero_point(factors[j]));
      }
      ModelPoint embedded{std::move(coords)};
      if (std::find(out.begin(), out.end(), embedded) == out.end()) {
        out.push_back(std::move(embedded));
      }
    }
  }
  ModelPoint zero = zero_point(product);
  if (std::find(out.begin(), out.end(), zero) == out.end()) {
    out.push_back(std::move(zero));
  }
  return out;
}

std::pair<FiniteAbelianGroup, std::vector<GroupElement>> fan_finite(
    const std::vector<FiniteAbelianGroup>& factors,
    const std::vector<std::vector<GroupElement>>& subsets) {
  if (factors.empty() || factors.size() != subsets.size()) {
    throw std::invalid_argument("fan: one subset per factor required");
  }
  std::vector<std::int64_t> orders;
  std::vector<std::size_t> offsets;
  for (const FiniteAbelianGroup& f : factors) {
    offsets.push_back(orders.size());
    orders.insert(orders.end(), f.orders().begin(), f.orders().end());
  }
  FiniteAbelianGroup product(orders);
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (const GroupElement& p : subsets[i]) {
      if (!factors[i].is_valid(p)) {
        throw std::invalid_argument("fan: element does not match factor " +
                                    std::to_string(i));
      }
      GroupElement embedded = product.zero();
      std::copy(p.coords.begin(), p.coords.end(),
                embedded.coords.begin() + static_cast<std::ptrdiff_t>(offsets[i]));
      if (std::find(out.begin(), out.end(), embedded) == out.end()) {
        out.push_back(std::move(embedded));
      }
    }
  }
  GroupElement zero = product.zero();
  if (std::find(out.begin(), out.end(), zero) == out.end()) {
    out.push_back(std::move(zero));
  }
  return {std::move(product), std::move(out)};
}

SuperSequence fan_supersequence(const CompactModel& product,
                                const std::vector<SuperSequence>& factor_seqs) {
  std::vector<std::vector<ModelPoint>> sets;
  sets.reserve(factor_seqs.size());
  for (const SuperSequence& s : factor_seqs) sets.push_back(s.points);
  std::vector<ModelPoint> pts = fan_points(product, sets);
  SuperSequence out;
  out.limit = zero_point(product);
  for (ModelPoint& p : pts) {
    if (!p.is_zero()) out.points.push_back(std::move(p));
  }
  return out;
}

ConstructiveWitness constructive_witness(const CompactModel& m,
                                         const ModelCharacter& chi,
                                         const SuperSequence& seq) {
  if (chi.is_zero()) {
    throw std::invalid_argument("constructive witness needs a nonzero character");
  }
  if (!character_matches(m, chi)) {
    throw std::invalid_argument("constructive witness: character shape mismatch");
  }
  switch (m.kind()) {
    case CompactModel::Kind::Torus: {
      const Int abs_m = abs(std::get<TorusChar>(chi.value).m);
      ModelPoint x{TorusValue::canonicalize(Rat(1, 2 * abs_m))};
      if (std::find(seq.points.begin(), seq.points.end(), x) == seq.points.end()) {
        throw std::out_of_range("sequence truncation does not cover |m| = " +
                                abs_m.str());
      }
      return {x, model_pairing(m, chi, x)};
    }
    case CompactModel::Kind::PAdic: {
      const auto& c = std::get<PAdicChar>(chi.value);
      std::int64_t p = m.prime();
      std::int64_t k = 1;
      if (p > 2) {
        std::int64_t m_mod_p = static_cast<std::int64_t>(c.m % p);
        k = ((p - 1) / 2) % p * mod_inverse(m_mod_p, p) % p;
      }
      ModelPoint x{Int(k) * int_pow(p, c.level - 1)};
      if (std::find(seq.points.begin(), seq.points.end(), x) == seq.points.end()) {
        throw std::out_of_range("sequence truncation does not cover level " +
                                std::to_string(c.level));
      }
      return {x, model_pairing(m, chi, x)};
    }
    case CompactModel::Kind::Product: {
      const auto& prod = std::get<ProductChar>(chi.value);
      std::size_t j0 = prod.support.begin()->first;  // smallest support index
      const CompactModel& factor = m.factors()[j0];
      // Project the fan onto factor j0.
      SuperSequence factor_seq;
      factor_seq.limit = zero_point(factor);
      for (const ModelPoint& pt : seq.points) {
        const auto& coords = std::get<std::vector<ModelPoint>>(pt.value);
        bool only_j0 = !coords[j0].is_zero();
        for (std::size_t j = 0; only_j0 && j < coords.size(); ++j) {
          if (j != j0 && !coords[j].is_zero()) only_j0 = false;
        }
        if (only_j0) factor_seq.points.push_back(coords[j0]);
      }
      ConstructiveWitness sub =
          constructive_witness(factor, prod.support.begin()->second, factor_seq);
      std::vector<ModelPoint> coords;
      coords.reserve(m.factors().size());
      for (std::size_t j = 0; j < m.factors().size(); ++j) {
        coords.push_back(j == j0 ? sub.point : zero_point(m.factors()[j]));
      }
      ModelPoint x{std::move(coords)};
      return {x, model_pairing(m, chi, x)};
    }
  }
  throw std::logic_error("unreachable");
}

ModelVerification verify_qc_dense_up_to(const CompactModel& m,
                                        const std::vector<ModelPoint>& x,
                                        const CharBound& bound,
                                        unsigned threads) {
  ModelVerification result(m, bound);
  std::vector<ModelCharacter> chars = enumerate_characters_bounded(m, bound);
  std::vector<ModelCharacter> nonzero;
  nonzero.reserve(chars.size());
  for (ModelCharacter& chi : chars) {
    if (!chi.is_zero()) nonzero.push_back(std::move(chi));
  }

  auto search_witness =
      [&](std::size_t i) -> std::optional<std::pair<ModelPoint, TorusValue>> {
    const ModelCharacter& chi = nonzero[i];
    for (const ModelPoint& pt : x) {
      TorusValue v = model_pairing(m, chi, pt);
      if (!in_t_plus(v)) return std::make_pair(pt, v);
    }
    return std::nullopt;
  };
  auto found = parallel_map_indexed<std::optional<std::pair<ModelPoint, TorusValue>>>(
      nonzero.size(), threads, search_witness);

  result.ok = true;
  for (std::size_t i = 0; i < nonzero.size(); ++i) {
    if (!found[i]) {
      result.ok = false;
      result.failing_character = nonzero[i];
      break;
    }
    result.witnesses.push_back(
        ModelWitness{nonzero[i], found[i]->first, found[i]->second});
  }
  return result;
}

namespace {

bool point_inside_constraint(const CompactModel& factor, const ModelPoint& p,
                             const FactorConstraint& c) {
  if (const auto* arc = std::get_if<OpenArc>(&c.constraint)) {
    if (factor.kind() != CompactModel::Kind::Torus) {
      throw std::invalid_argument("arc constraint on a non-torus factor");
    }
    return in_arc(std::get<TorusValue>(p.value), *arc);
  }
  int level = std::get<int>(c.constraint);
  if (factor.kind() != CompactModel::Kind::PAdic) {
    throw std::invalid_argument("level constraint on a non-p-adic factor");
  }
  return std::get<Int>(p.value) % int_pow(factor.prime(), level) == 0;
}

}  // namespace

ConvergenceResult check_supersequence_convergence(const CompactModel& m,
                                                  const SuperSequence& seq,
                                                  const NeighbourhoodSpec& nbhd) {
  ConvergenceResult out;
  auto inside = [&](const ModelPoint& p) {
    for (const auto& [idx, c] : nbhd.constraints) {
      if (m.kind() == CompactModel::Kind::Product) {
        if (idx >= m.factors().size()) {
          throw std::invalid_argument("constraint index out of range");
        }
        const auto& coords = std::get<std::vector<ModelPoint>>(p.value);
        if (!point_inside_constraint(m.factors()[idx], coords[idx], c)) {
          return false;
        }
      } else {
        if (idx != 0) throw std::invalid_argument("constraint index out of range");
        if (!point_inside_constraint(m, p, c)) return false;
      }
    }
    return true;
  };
  out.limit_inside = inside(seq.limit);
  for (const ModelPoint& p : seq.points) {
    if (!inside(p)) out.exceptions.push_back(p);
  }
  // The truncation is finite, so "all but finitely many inside" reduces to
  // the limit itself being inside.
  out.converges = out.limit_inside;
  return out;
}

std::vector<GroupElement> convergence_exceptions_finite(
    const FiniteAbelianGroup& g, const std::vector<GroupElement>& points,
    const std::vector<std::size_t>& zero_coordinates) {
  std::vector<GroupElement> out;
  for (const GroupElement& p : points) {
    if (!g.is_valid(p)) throw std::invalid_argument("point not in group");
    for (std::size_t idx : zero_coordinates) {
      if (idx >= p.coords.size()) {
        throw std::invalid_argument("coordinate index out of range");
      }
      if (p.coords[idx] != 0) {
        out.push_back(p);
        break;
      }
    }
  }
  return out;
}

}  // namespace qcdense
