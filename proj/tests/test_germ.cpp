#include <cmath>

#include "doctest.h"
#include "mixid/germ.hpp"
#include "mixid/metabelian.hpp"
#include "mixid/rng.hpp"
#include "mixid/sampling.hpp"
#include "mixid/word_parser.hpp"

using namespace mixid;

namespace {
FreeWord X() { return FreeWord::letter(1, 1); }
FreeWord Y() { return FreeWord::letter(2, 1); }
}  // namespace

TEST_CASE("germs of the generators and the basic commutator") {
  CHECK(germ_of_word(X()) == Germ{1, LaurentPoly{}});
  CHECK(germ_of_word(Y()) == Germ{0, LaurentPoly::monomial(1, 0)});
  Germ g = germ_of_word(FreeWord::commutator(X(), Y()));
  CHECK(g.e == 0);
  CHECK(g.p == LaurentPoly::monomial(1, -1) - LaurentPoly::monomial(1, 0));
}

TEST_CASE("commutator germ formula for all small powers") {
  for (int n = -5; n <= 5; ++n) {
    for (int m = -5; m <= 5; ++m) {
      if (n == 0 || m == 0) continue;
      Germ g = germ_of_word(FreeWord::commutator(X().pow(n), Y().pow(m)));
      CHECK(g.e == 0);
      LaurentPoly expect = LaurentPoly::monomial(m, -n) - LaurentPoly::monomial(m, 0);
      CHECK(g.p == expect);
    }
  }
}

TEST_CASE("germ group law against numeric composition") {
  Rng rng(77);
  const std::pair<double, double> params[] = {{2.0, 3.0}, {0.5, 5.0}, {3.0, 0.5}};
  for (int trial = 0; trial < 300; ++trial) {
    FreeWord u;
    int len = static_cast<int>(rng.range(1, 12));
    for (int i = 0; i < len; ++i) {
      u = u * FreeWord::letter(static_cast<int>(rng.range(1, 2)), rng.coin() ? 1 : -1);
    }
    Germ g = germ_of_word(u);
    for (auto [kappa, lambda] : params) {
      for (double t : {1e-4, 1e-6, 1e-8}) {
        double expect = t;
        for (const auto& l : u.letters()) {
          if (l.var == 1) {
            expect = std::pow(expect, l.sign > 0 ? kappa : 1.0 / kappa);
          } else {
            expect = l.sign > 0 ? lambda * expect : expect / lambda;
          }
        }
        if (!std::isfinite(expect) || expect < 1e-200 || expect > 1e200) continue;
        double got = germ_eval(g, kappa, lambda, t);
        CHECK(std::abs(got - expect) <= 1e-6 * std::abs(expect));
      }
    }
  }
}

TEST_CASE("the laurent part is additive on commutator-subgroup elements") {
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    FreeWord u = random_commutator_word(rng, 1 + static_cast<int>(rng.below(2)));
    FreeWord v = random_commutator_word(rng, 1 + static_cast<int>(rng.below(2)));
    Germ gu = germ_of_word(u), gv = germ_of_word(v), guv = germ_of_word(u * v);
    REQUIRE(gu.e == 0);
    REQUIRE(gv.e == 0);
    CHECK(guv.p == gu.p + gv.p);
  }
}

TEST_CASE("nonvanishing witness for the basic commutator") {
  auto w = nonvanishing_witness(FreeWord::commutator(X(), Y()));
  REQUIRE(w.has_value());
  CHECK(w->kappa0 == Rat(2));
  CHECK(w->value == Rat(-1, 2));
  CHECK(Rat(1) < w->lambda0 + Rat(1));  // lambda0 is any value > 1
}

TEST_CASE("second-derived words are inconclusive") {
  FreeWord u = FreeWord::commutator(FreeWord::commutator(X(), Y()),
                                    FreeWord::commutator(X(), Y().pow(2)));
  CHECK_FALSE(nonvanishing_witness(u).has_value());
  CHECK_FALSE(nonvanishing_witness(FreeWord{}).has_value());
  CHECK_THROWS_AS(nonvanishing_witness(X()), std::invalid_argument);
}

TEST_CASE("second derived subgroup lies in the kernel of the germ map") {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    FreeWord u = random_double_commutator_word(rng, 1 + static_cast<int>(rng.below(2)));
    REQUIRE(in_second_derived(u));
    Germ g = germ_of_word(u);
    CHECK(g.e == 0);
    CHECK(g.p.is_zero());
  }
}

TEST_CASE("one-variable bound: trivial constants") {
  // w = x c x with c the identity
  std::map<std::string, PLHomeo> consts;
  consts["c"] = PLHomeo::identity();
  auto res = onevar_bound(parse_word("x*c*x"), consts);
  CHECK(res.max_slope_ratio == Rat(1));
  CHECK(res.lambda == 2);
  CHECK(res.slope_at_zero == Rat(4));
  CHECK_FALSE(res.composed(res.witness_point) == res.witness_point);
}

TEST_CASE("one-variable bound: slopes in {1/2, 2} give threshold 2") {
  std::map<std::string, PLHomeo> consts;
  consts["c"] = PLHomeo::from_points({{Rat(0), Rat(0)}, {Rat(1, 2), Rat(1, 4)}, {Rat(1), Rat(1)}});
  auto res = onevar_bound(parse_word("x*c*x"), consts);
  CHECK(res.max_slope_ratio == Rat(2));
  CHECK(res.length == 2);
  CHECK(res.exponent_sum == 2);
  CHECK(res.lambda == 3);  // smallest integer with lambda^2 > 2^2
  CHECK(res.slope_at_zero == Rat(9, 2));
  CHECK(res.composed(res.witness_point) == res.witness_value);
  CHECK_FALSE(res.witness_value == res.witness_point);
}

TEST_CASE("one-variable bound handles negative exponent sums") {
  std::map<std::string, PLHomeo> consts;
  consts["c"] = PLHomeo::bump(Rat(1, 4), Rat(1, 2));
  auto res = onevar_bound(parse_word("x^-1*c*x^-1"), consts);
  CHECK(res.exponent_sum == -2);
  CHECK_FALSE(res.composed(res.witness_point) == res.witness_point);
}

TEST_CASE("one-variable bound rejects singular input") {
  std::map<std::string, PLHomeo> consts;
  consts["c"] = PLHomeo::bump(Rat(1, 4), Rat(1, 2));
  CHECK_THROWS_AS(onevar_bound(parse_word("x^-1*c*x"), consts), SingularInput);
  CHECK_THROWS_AS(onevar_bound(parse_word("[x,y]"), consts), std::invalid_argument);
}

TEST_CASE("commutator bound on the canonical pattern") {
  std::map<std::string, PLHomeo> consts;
  for (int i = 1; i <= 4; ++i) {
    // slope 1/2 on the first piece, recovering later
    consts["h" + std::to_string(i)] =
        PLHomeo::from_points({{Rat(0), Rat(0)}, {Rat(1, 4), Rat(1, 8)}, {Rat(1), Rat(1)}});
  }
  Word w = parse_word("h1*x*h2*y*h3*x^-1*h4*y^-1");
  auto res = commutator_bound(w, consts, Rat(1, 2));
  std::vector<Rat> expect{Rat(1, 2), Rat(3, 2), Rat(5, 2), Rat(5), Rat(6)};
  CHECK(res.exponent_chain == expect);
  CHECK(res.eta_exponent == Rat(6));
  REQUIRE(res.eta_power.has_value());
  CHECK(*res.eta_power == Rat(1, 64));
  CHECK(res.lambda == 65);
  REQUIRE(res.product.has_value());
  CHECK(*res.product == Rat(65, 64));
  CHECK(Rat(1) < *res.product);
  CHECK_FALSE(res.witness_value == res.witness_point);
}

TEST_CASE("commutator bound with eta = 1") {
  std::map<std::string, PLHomeo> consts;
  auto res = commutator_bound(parse_word("[x,y]"), consts, Rat(1));
  CHECK(res.eta_exponent == Rat(0));
  CHECK(res.lambda == 2);
  CHECK_FALSE(res.witness_value == res.witness_point);
}

TEST_CASE("commutator bound rejects other contents") {
  std::map<std::string, PLHomeo> consts;
  CHECK_THROWS_AS(commutator_bound(parse_word("x*y"), consts, Rat(1, 2)), ContentMismatch);
}
