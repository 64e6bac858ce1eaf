#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qcdense/compact_model.hpp"
#include "qcdense/qc_ops.hpp"
#include "qcdense/sequences.hpp"

#include <random>

using namespace qcdense;

namespace {

ModelPoint torus_pt(std::int64_t a, std::int64_t b) {
  return ModelPoint{TorusValue::canonicalize(Rat(a, b))};
}

ModelCharacter torus_chi(std::int64_t m) {
  return ModelCharacter{TorusChar{Int(m)}};
}

ModelCharacter padic_chi(std::int64_t p, std::int64_t m, int level) {
  return ModelCharacter{make_padic_char(p, Int(m), level)};
}

std::vector<Int> padic_values(const SuperSequence& s) {
  std::vector<Int> out;
  for (const ModelPoint& p : s.points) out.push_back(std::get<Int>(p.value));
  return out;
}

}  // namespace

TEST_CASE("model pairing") {
  CompactModel t = CompactModel::torus();
  CHECK(model_pairing(t, torus_chi(3), torus_pt(1, 6)).as_rational() ==
        Rat(1, 2));

  CompactModel z3 = CompactModel::p_adic(3);
  CHECK(model_pairing(z3, padic_chi(3, 1, 1), ModelPoint{Int(1)}).as_rational() ==
        Rat(1, 3));

  CHECK(model_pairing(t, torus_chi(17), zero_point(t)).is_zero());
  CHECK(model_pairing(z3, zero_character(z3), ModelPoint{Int(5)}).is_zero());

  CHECK_THROWS_AS(model_pairing(t, padic_chi(3, 1, 1), torus_pt(1, 2)),
                  std::invalid_argument);
}

TEST_CASE("p-adic character normal form") {
  CHECK(make_padic_char(3, Int(3), 2) == PAdicChar{Int(1), 1});  // Pruefer relation
  CHECK(make_padic_char(3, Int(9), 2) == PAdicChar{Int(0), 0});
  CHECK(make_padic_char(5, Int(7), 1) == PAdicChar{Int(2), 1});  // reduce mod 5
  CHECK(make_padic_char(2, Int(0), 3) == PAdicChar{Int(0), 0});
}

TEST_CASE("bounded character enumeration") {
  CompactModel t = CompactModel::torus();
  CharBound b2;
  b2.torus_m_max = 2;
  std::vector<ModelCharacter> ts = enumerate_characters_bounded(t, b2);
  REQUIRE(ts.size() == 5);
  CHECK(ts.front() == torus_chi(-2));
  CHECK(ts.back() == torus_chi(2));

  CompactModel z2 = CompactModel::p_adic(2);
  CharBound lb;
  lb.padic_levels = 2;
  std::vector<ModelCharacter> zs = enumerate_characters_bounded(z2, lb);
  std::vector<ModelCharacter> expected{
      ModelCharacter{PAdicChar{Int(0), 0}}, ModelCharacter{PAdicChar{Int(1), 1}},
      ModelCharacter{PAdicChar{Int(1), 2}}, ModelCharacter{PAdicChar{Int(3), 2}}};
  CHECK(zs == expected);

  CompactModel tt = CompactModel::product({t, t});
  CharBound pb;
  pb.torus_m_max = 1;
  pb.max_support = 2;
  CHECK(enumerate_characters_bounded(tt, pb).size() == 9);
  pb.max_support = 1;
  CHECK(enumerate_characters_bounded(tt, pb).size() == 5);  // drops (+-1,+-1)
}

TEST_CASE("torus qc sequence") {
  SuperSequence s3 = torus_qc_sequence(3);
  REQUIRE(s3.points.size() == 3);
  CHECK(s3.points[0] == torus_pt(1, 2));
  CHECK(s3.points[1] == torus_pt(1, 4));
  CHECK(s3.points[2] == torus_pt(1, 6));
  CHECK(s3.limit.is_zero());

  SuperSequence s1 = torus_qc_sequence(1);
  CHECK(s1.points == std::vector<ModelPoint>{torus_pt(1, 2)});

  // witness property: 1/(2|m|) pairs to +-1/2 for 0 < |m| <= N
  CompactModel t = CompactModel::torus();
  for (std::int64_t m = -3; m <= 3; ++m) {
    if (m == 0) continue;
    TorusValue v = model_pairing(t, torus_chi(m),
                                 torus_pt(1, 2 * (m < 0 ? -m : m)));
    CHECK(v.as_rational() == Rat(1, 2));  // -1/2 is canonically 1/2
    CHECK_FALSE(in_t_plus(v));
  }
}

TEST_CASE("zp qc sequence") {
  CHECK(padic_values(zp_qc_sequence(2, 3)) ==
        std::vector<Int>{Int(1), Int(2), Int(4)});
  CHECK(padic_values(zp_qc_sequence(3, 2)) ==
        std::vector<Int>{Int(1), Int(2), Int(3), Int(6)});

  // witness from the congruence: p=3, chi=(1,1) -> k=1, point 1, value 1/3
  CompactModel z3 = CompactModel::p_adic(3);
  SuperSequence s = zp_qc_sequence(3, 2);
  ConstructiveWitness w = constructive_witness(z3, padic_chi(3, 1, 1), s);
  CHECK(w.point == ModelPoint{Int(1)});
  CHECK(w.value.as_rational() == Rat(1, 3));
  CHECK_FALSE(in_t_plus(w.value));
}

TEST_CASE("constructive witnesses, worked examples") {
  CompactModel t = CompactModel::torus();
  SuperSequence ts = torus_qc_sequence(4);
  ConstructiveWitness tw = constructive_witness(t, torus_chi(-4), ts);
  CHECK(tw.point == torus_pt(1, 8));
  CHECK(tw.value.as_rational() == Rat(1, 2));

  CompactModel z5 = CompactModel::p_adic(5);
  SuperSequence zs = zp_qc_sequence(5, 2);
  ConstructiveWitness zw = constructive_witness(z5, padic_chi(5, 2, 2), zs);
  CHECK(zw.point == ModelPoint{Int(5)});
  CHECK(zw.value.as_rational() == Rat(2, 5));

  // out-of-truncation characters are rejected
  CHECK_THROWS_AS(constructive_witness(t, torus_chi(9), ts), std::out_of_range);
  CHECK_THROWS_AS(constructive_witness(z5, padic_chi(5, 1, 4), zs),
                  std::out_of_range);
  CHECK_THROWS_AS(constructive_witness(t, torus_chi(0), ts),
                  std::invalid_argument);
}

TEST_CASE("product witness recurses into the support") {
  CompactModel t = CompactModel::torus();
  CompactModel z3 = CompactModel::p_adic(3);
  CompactModel prod = CompactModel::product({t, z3});
  SuperSequence fan =
      fan_supersequence(prod, {torus_qc_sequence(4), zp_qc_sequence(3, 3)});

  // character supported on factor 1 only
  ProductChar pc;
  pc.support.emplace(1, padic_chi(3, 2, 1));
  ConstructiveWitness w =
      constructive_witness(prod, ModelCharacter{pc}, fan);
  const auto& coords = std::get<std::vector<ModelPoint>>(w.point.value);
  CHECK(coords[0].is_zero());
  CHECK_FALSE(coords[1].is_zero());
  CHECK_FALSE(in_t_plus(w.value));
  // factor-1 value: solve 2k = 1 mod 3 -> k = 2, point 2, value 4/3 -> 1/3
  CHECK(coords[1] == ModelPoint{Int(2)});
  CHECK(w.value.as_rational() == Rat(1, 3));
}

TEST_CASE("constructive and exhaustive witnesses agree") {
  CompactModel t = CompactModel::torus();
  SuperSequence ts = torus_qc_sequence(50);
  CharBound tb;
  tb.torus_m_max = 50;
  ModelVerification tv = verify_qc_dense_up_to(t, ts.full_point_set(), tb);
  REQUIRE(tv.ok);
  CHECK(tv.witnesses.size() == 100);
  for (const ModelWitness& w : tv.witnesses) {
    ConstructiveWitness cw = constructive_witness(t, w.character, ts);
    CHECK(cw.value.as_rational() == Rat(1, 2));  // exactly +-1/2, canonical
    CHECK_FALSE(in_t_plus(cw.value));
  }

  for (std::int64_t p : {2, 3, 5}) {
    CompactModel zp = CompactModel::p_adic(p);
    SuperSequence zs = zp_qc_sequence(p, 3);
    CharBound zb;
    zb.padic_levels = 3;
    ModelVerification zv = verify_qc_dense_up_to(zp, zs.full_point_set(), zb);
    REQUIRE(zv.ok);
    for (const ModelWitness& w : zv.witnesses) {
      ConstructiveWitness cw = constructive_witness(zp, w.character, zs);
      Rat expect = p == 2 ? Rat(1, 2) : Rat(p - 1, 2 * p);
      CHECK(abs(cw.value.as_rational()) == expect);
      CHECK_FALSE(in_t_plus(cw.value));
    }
  }
}

TEST_CASE("bounded verification failure cases") {
  CompactModel t = CompactModel::torus();
  CharBound b3;
  b3.torus_m_max = 3;
  // X = {1/3}: m = +-3 maps it to 0, so verification fails exactly there
  // (m = -3 comes first in enumeration order).
  ModelVerification v =
      verify_qc_dense_up_to(t, {torus_pt(1, 3), zero_point(t)}, b3);
  CHECK_FALSE(v.ok);
  REQUIRE(v.failing_character.has_value());
  CHECK(*v.failing_character == torus_chi(-3));

  // X = {0} fails at the first nonzero character.
  ModelVerification v0 = verify_qc_dense_up_to(t, {zero_point(t)}, b3);
  CHECK_FALSE(v0.ok);
  CHECK(*v0.failing_character == torus_chi(-3));
}

TEST_CASE("truncation faithfulness against the finite group") {
  for (std::int64_t p : {2, 3, 5}) {
    for (int levels = 1; levels <= 5; ++levels) {
      CompactModel zp = CompactModel::p_adic(p);
      Int modulus = int_pow(p, levels);
      FiniteAbelianGroup zpl({static_cast<std::int64_t>(modulus)});
      FiniteGroupContext ctx(zpl);

      auto check_agreement = [&](const std::vector<ModelPoint>& pts) {
        CharBound b;
        b.padic_levels = levels;
        ModelVerification mv = verify_qc_dense_up_to(zp, pts, b);
        std::vector<GroupElement> image;
        for (const ModelPoint& mp : pts) {
          image.push_back(zpl.reduce(
              {static_cast<std::int64_t>(std::get<Int>(mp.value) % modulus)}));
        }
        CHECK(mv.ok == is_qc_dense(ctx, image));
      };

      check_agreement(zp_qc_sequence(p, levels).full_point_set());
      // a deliberately thin set for the negative direction
      check_agreement({ModelPoint{Int(1)}});
      check_agreement({ModelPoint{Int(p)}, ModelPoint{Int(0)}});
    }
  }
}

TEST_CASE("fan of point sets") {
  CompactModel t = CompactModel::torus();
  CompactModel tt = CompactModel::product({t, t});
  std::vector<ModelPoint> fan =
      fan_points(tt, {{torus_pt(1, 2)}, {torus_pt(1, 4)}});
  REQUIRE(fan.size() == 3);
  CHECK(fan[0] == ModelPoint{std::vector<ModelPoint>{torus_pt(1, 2), torus_pt(0, 1)}});
  CHECK(fan[1] == ModelPoint{std::vector<ModelPoint>{torus_pt(0, 1), torus_pt(1, 4)}});
  CHECK(fan[2].is_zero());

  CompactModel single = CompactModel::product({t});
  CHECK(fan_points(single, {{torus_pt(1, 2)}}).size() == 2);  // X_1 and 0

  CHECK_THROWS_AS(fan_points(tt, {{torus_pt(1, 2)}}), std::invalid_argument);
}

TEST_CASE("finite fan is qc-dense when the factors are") {
  FiniteAbelianGroup z4({4}), z3({3});
  auto [product, points] = fan_finite(
      {z4, z3}, {{GroupElement{{1}}, GroupElement{{2}}}, {GroupElement{{1}}}});
  CHECK(product.to_string() == "Z4xZ3");
  REQUIRE(points.size() == 4);
  FiniteGroupContext ctx(product);
  CHECK(is_qc_dense(ctx, points));
}

TEST_CASE("fan lemma, exhaustive over qc-dense subsets of Z(a) x Z(b)") {
  // every qc-dense subset per cyclic order, as bitmasks
  std::vector<std::vector<std::vector<GroupElement>>> dense_subsets(10);
  for (std::int64_t n = 2; n <= 9; ++n) {
    FiniteAbelianGroup g({n});
    FiniteGroupContext ctx(g);
    std::vector<GroupElement> elems = g.enumerate_elements();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<GroupElement> e;
      for (std::int64_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) e.push_back(elems[i]);
      }
      if (is_qc_dense(ctx, e)) dense_subsets[n].push_back(std::move(e));
    }
  }
  for (std::int64_t a = 2; a <= 9; ++a) {
    for (std::int64_t b = 2; b <= 9; ++b) {
      FiniteAbelianGroup ga({a}), gb({b});
      FiniteAbelianGroup product({a, b});
      FiniteGroupContext ctx(product);
      for (const auto& xa : dense_subsets[a]) {
        for (const auto& xb : dense_subsets[b]) {
          auto [prod_check, points] = fan_finite({ga, gb}, {xa, xb});
          REQUIRE(prod_check == product);
          REQUIRE(is_qc_dense(ctx, points));
        }
      }
    }
  }
}

TEST_CASE("polars and W-sets through a bounded model context") {
  CompactModel t = CompactModel::torus();
  CharBound b;
  b.torus_m_max = 3;
  BoundedModelContext ctx(t, b);
  std::vector<ModelPoint> x{torus_pt(1, 2)};
  // m (1/2) lands in T_+ exactly for even m
  std::vector<ModelCharacter> polar = polar_right(ctx, x);
  CHECK(polar == std::vector<ModelCharacter>{torus_chi(-2), torus_chi(0),
                                             torus_chi(2)});
  CHECK_FALSE(is_qc_dense(ctx, x));  // up to the bound

  std::vector<ModelCharacter> w = w_set(ctx, x, OpenArc(Rat(1, 4)));
  CHECK(w == std::vector<ModelCharacter>{torus_chi(-2), torus_chi(0),
                                         torus_chi(2)});

  SuperSequence seq = torus_qc_sequence(3);
  CHECK(is_qc_dense(ctx, seq.full_point_set()));  // up to bound 3
}

TEST_CASE("product character evaluation depends only on the support") {
  CompactModel t = CompactModel::torus();
  CompactModel z3 = CompactModel::p_adic(3);
  CompactModel prod = CompactModel::product({t, z3});
  ProductChar pc;
  pc.support.emplace(0, torus_chi(2));
  ModelCharacter chi{pc};
  std::mt19937_64 rng(47);
  for (int i = 0; i < 20; ++i) {
    Int junk(std::uniform_int_distribution<std::int64_t>(0, 1000)(rng));
    ModelPoint x{std::vector<ModelPoint>{torus_pt(1, 8), ModelPoint{junk}}};
    CHECK(model_pairing(prod, chi, x) ==
          model_pairing(t, torus_chi(2), torus_pt(1, 8)));
  }
}

TEST_CASE("supersequence convergence against finite-support neighbourhoods") {
  CompactModel t = CompactModel::torus();
  CompactModel tt = CompactModel::product({t, t});
  SuperSequence fan =
      fan_supersequence(tt, {torus_qc_sequence(3), torus_qc_sequence(3)});

  NeighbourhoodSpec nbhd;
  nbhd.constraints.emplace(0, FactorConstraint{OpenArc(Rat(1, 8))});
  ConvergenceResult r = check_supersequence_convergence(tt, fan, nbhd);
  CHECK(r.converges);
  CHECK(r.limit_inside);
  // exceptions are exactly the factor-0 points 1/2, 1/4, 1/6
  REQUIRE(r.exceptions.size() == 3);
  for (const ModelPoint& p : r.exceptions) {
    const auto& coords = std::get<std::vector<ModelPoint>>(p.value);
    CHECK_FALSE(coords[0].is_zero());
    CHECK(coords[1].is_zero());
  }

  // with a longer truncation 1/8 itself is outside the open arc
  SuperSequence fan10 =
      fan_supersequence(tt, {torus_qc_sequence(10), torus_qc_sequence(3)});
  CHECK(check_supersequence_convergence(tt, fan10, nbhd).exceptions.size() == 4);

  // empty constraint set: nothing escapes
  NeighbourhoodSpec empty;
  CHECK(check_supersequence_convergence(tt, fan, empty).exceptions.empty());

  // single-factor sequence against (-eps, eps)
  NeighbourhoodSpec eps;
  eps.constraints.emplace(0, FactorConstraint{OpenArc(Rat(1, 7))});
  ConvergenceResult r2 = check_supersequence_convergence(
      t, torus_qc_sequence(5), eps);
  CHECK(r2.exceptions.size() == 3);  // 1/2, 1/4, 1/6

  // p-adic level constraint
  CompactModel z3 = CompactModel::p_adic(3);
  NeighbourhoodSpec lvl;
  lvl.constraints.emplace(0, FactorConstraint{2});
  ConvergenceResult r3 = check_supersequence_convergence(
      z3, zp_qc_sequence(3, 3), lvl);
  CHECK(r3.exceptions.size() == 4);  // 1, 2, 3, 6

  // finite-group variant
  FiniteAbelianGroup z4z3({4, 3});
  std::vector<GroupElement> pts{GroupElement{{1, 0}}, GroupElement{{2, 0}},
                                GroupElement{{0, 1}}, GroupElement{{0, 0}}};
  auto exc = convergence_exceptions_finite(z4z3, pts, {0});
  CHECK(exc == std::vector<GroupElement>{GroupElement{{1, 0}},
                                         GroupElement{{2, 0}}});
}
