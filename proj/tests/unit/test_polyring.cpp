#include <doctest.h>

#include "cwkit/error.hpp"
#include "cwkit/polyring.hpp"
#include "../oracles/oracles.hpp"

using namespace cwkit;

TEST_SUITE("polyring") {
  TEST_CASE("parse and print") {
    const RingPtr R = PolyRing::make(Field::rationals(), {"x", "y", "T"});
    const Polynomial f = parse_polynomial(R, "3/2*x^2*y - T + 1");
    CHECK(f.to_string() == "3/2*x^2*y - T + 1");
    CHECK(parse_polynomial(R, f.to_string()) == f);
    CHECK(parse_polynomial(R, "(x + y)^2") == parse_polynomial(R, "x^2 + 2*x*y + y^2"));
    CHECK_THROWS_AS(parse_polynomial(R, "x + z"), InvalidArgument);
    CHECK_THROWS_AS(parse_polynomial(R, "x +"), InvalidArgument);
  }

  TEST_CASE("monomial orders") {
    const RingPtr G = PolyRing::make(Field::rationals(), {"x", "y"});
    const RingPtr L = G->with_order(MonomialOrder::lex);
    CHECK(parse_polynomial(G, "x + y^2").leading_monomial() == Monomial{0, 2});
    CHECK(parse_polynomial(L, "x + y^2").leading_monomial() == Monomial{1, 0});
  }

  TEST_CASE("arithmetic agrees with evaluation at random points") {
    oracle::Random rnd(23);
    for (const auto& F : {Field::rationals(), Field::prime(101)}) {
      const RingPtr R = PolyRing::make(F, {"x", "y", "z"});
      for (int i = 0; i < 50; ++i) {
        const Polynomial f = oracle::random_poly(rnd, R, 4, 3), g = oracle::random_poly(rnd, R, 4, 3);
        std::vector<FieldElem> pt;
        for (int k = 0; k < 3; ++k) pt.emplace_back(F, rnd.uniform(-5, 5));
        CHECK(oracle::eval(f * g, pt) == oracle::eval(f, pt) * oracle::eval(g, pt));
        CHECK(oracle::eval(f - g, pt) == oracle::eval(f, pt) - oracle::eval(g, pt));
        CHECK(f.evaluate(pt) == oracle::eval(f, pt));
        const Polynomial s = f.substitute(0, g);
        std::vector<FieldElem> pt2 = pt;
        pt2[0] = oracle::eval(g, pt);
        CHECK(oracle::eval(s, pt) == oracle::eval(f, pt2));
      }
    }
  }

  TEST_CASE("exact division") {
    const RingPtr R = PolyRing::make(Field::rationals(), {"x", "y"});
    const Polynomial f = parse_polynomial(R, "x^2 - y^2"), g = parse_polynomial(R, "x - y");
    CHECK(exact_divide(f, g) == parse_polynomial(R, "x + y"));
    CHECK_THROWS_AS(exact_divide(f, parse_polynomial(R, "x")), InvalidArgument);
  }

  TEST_CASE("substitute_value and dropping a variable") {
    const RingPtr R = PolyRing::make(Field::rationals(), {"x", "y", "T"}, MonomialOrder::grevlex, 0, "T");
    const Polynomial f = parse_polynomial(R, "y - T^2 + T");
    const Polynomial at1 = substitute_value(f, "T", FieldElem(R->field(), 1L));
    const RingPtr S = R->without("T");
    CHECK(S->nvars() == 2);
    CHECK(at1 == parse_polynomial(S, "y"));
  }

  TEST_CASE("extension coefficients") {
    const RingPtr R = PolyRing::make(parse_field("GF(5)[z]/(z^2+2)"), {"x"});
    const Polynomial f = parse_polynomial(R, "z*x + 1");
    CHECK((f * f).to_string() == parse_polynomial(R, "3*x^2 + 2*z*x + 1").to_string());
  }
}
