#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qcdense/torus.hpp"

#include "oracles.hpp"

#include <random>

using namespace qcdense;

namespace {

TorusValue tv(std::int64_t a, std::int64_t b) {
  return TorusValue::canonicalize(Rat(a, b));
}

}  // namespace

TEST_CASE("canonicalize picks the representative in (-1/2, 1/2]") {
  CHECK(tv(3, 4) == tv(-1, 4));
  CHECK(tv(3, 4).as_rational() == Rat(-1, 4));
  CHECK(tv(1, 2).as_rational() == Rat(1, 2));
  CHECK(tv(-1, 2).as_rational() == Rat(1, 2));  // boundary convention
  CHECK(tv(7, 6).as_rational() == Rat(1, 6));
  CHECK(tv(0, 1).is_zero());
  CHECK(tv(5, 1).is_zero());
}

TEST_CASE("canonicalize is invariant under integer shifts") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> num(-500, 500);
  std::uniform_int_distribution<std::int64_t> den(1, 97);
  std::uniform_int_distribution<std::int64_t> shift(-20, 20);
  for (int i = 0; i < 500; ++i) {
    Rat q(num(rng), den(rng));
    CHECK(TorusValue::canonicalize(q) ==
          TorusValue::canonicalize(q + shift(rng)));
  }
}

TEST_CASE("group operations") {
  CHECK(add(tv(1, 4), tv(1, 4)) == tv(1, 2));
  CHECK(scale(3, tv(1, 6)) == tv(1, 2));
  for (const TorusValue& a : testing::rational_grid(40)) {
    CHECK(add(a, neg(a)).is_zero());
  }
}

TEST_CASE("T_+ is closed at the +-1/4 endpoints") {
  CHECK(in_t_plus(tv(1, 4)));
  CHECK(in_t_plus(tv(-1, 4)));
  CHECK_FALSE(in_t_plus(tv(1, 3)));
  CHECK(in_t_plus(tv(0, 1)));
  CHECK_FALSE(in_t_plus(tv(1, 2)));
}

TEST_CASE("open arcs are strict at the boundary") {
  OpenArc eighth((Rat(1, 8)));
  CHECK_FALSE(in_arc(tv(1, 8), eighth));
  CHECK(in_arc(tv(0, 1), eighth));
  CHECK(in_arc(tv(-1, 10), eighth));
  CHECK_THROWS_AS(OpenArc(Rat(3, 4)), std::invalid_argument);
  CHECK_THROWS_AS(OpenArc(Rat(0)), std::invalid_argument);
}

TEST_CASE("V_n membership by definition") {
  CHECK(in_v_n(tv(1, 8), 2));       // 1/8 and 2/8 both in T_+
  CHECK_FALSE(in_v_n(tv(1, 5), 2)); // 2/5 outside
  for (const TorusValue& a : testing::rational_grid(30)) {
    CHECK(in_v_n(a, 1) == in_t_plus(a));
  }
}

TEST_CASE("V_n symmetry and monotonicity") {
  for (const TorusValue& a : testing::rational_grid(50)) {
    for (std::int64_t n : {1, 2, 3, 5}) {
      CHECK(in_v_n(a, n) == in_v_n(neg(a), n));
      if (in_v_n(a, n + 1)) CHECK(in_v_n(a, n));
    }
  }
}

TEST_CASE("interval identity: V_n = [-1/(4n), 1/(4n)] for n >= 2") {
  std::vector<TorusValue> grid = testing::rational_grid(200);
  for (std::int64_t n : {2, 3, 4, 7, 12}) {
    for (const TorusValue& a : grid) {
      bool inside = abs(a.as_rational()) <= Rat(1, 4 * n);
      CHECK(in_v_n(a, n) == inside);
    }
  }
}

namespace {

// Deny-check oracle for min_n_with_v_n_inside: on the rational grid with
// denominator <= 4n*den(radius), V_n \ U must be empty and (for n > 1)
// V_{n-1} \ U must not be.
void check_min_n(const Rat& radius) {
  OpenArc u(radius);
  std::int64_t n = min_n_with_v_n_inside(u);
  std::int64_t max_den =
      4 * n * static_cast<std::int64_t>(denominator(radius));
  std::vector<TorusValue> grid = testing::rational_grid(max_den);
  for (const TorusValue& a : grid) {
    if (in_v_n(a, n)) CHECK(in_arc(a, u));
  }
  if (n > 1) {
    bool found_escape = false;
    for (const TorusValue& a : grid) {
      if (in_v_n(a, n - 1) && !in_arc(a, u)) {
        found_escape = true;
        break;
      }
    }
    CHECK(found_escape);
  }
}

}  // namespace

TEST_CASE("min_n_with_v_n_inside on the stated arcs") {
  CHECK(min_n_with_v_n_inside(OpenArc(Rat(1, 4))) == 2);
  CHECK(min_n_with_v_n_inside(OpenArc(Rat(1, 2))) == 1);
  CHECK(min_n_with_v_n_inside(OpenArc(Rat(1, 8))) == 3);
  // tight radii resolve without iteration
  CHECK(min_n_with_v_n_inside(OpenArc(Rat(1, 1000000))) == 250001);
  CHECK(min_n_with_v_n_inside(OpenArc(Rat(1, 999999))) == 250000);
}

TEST_CASE("min_n_with_v_n_inside against the grid oracle") {
  for (const Rat& r : {Rat(1, 4), Rat(1, 2), Rat(1, 8), Rat(1, 6), Rat(3, 8),
                       Rat(1, 3), Rat(1, 12), Rat(5, 12), Rat(2, 5)}) {
    check_min_n(r);
  }
}

TEST_CASE("serialization round trip") {
  CHECK(tv(-1, 4).to_string() == "-1/4");
  CHECK(tv(0, 1).to_string() == "0");
  CHECK(tv(1, 2).to_string() == "1/2");
  CHECK(parse_rational("-1/4") == Rat(-1, 4));
  CHECK(parse_rational("3") == Rat(3));
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}
