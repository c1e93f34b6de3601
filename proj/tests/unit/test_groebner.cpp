#include <doctest.h>

#include <algorithm>
#include <thread>

#include "cwkit/error.hpp"
#include "cwkit/groebner.hpp"
#include "../oracles/oracles.hpp"

using namespace cwkit;

namespace {

RingPtr qxy() { return PolyRing::make(Field::rationals(), {"x", "y"}); }

std::vector<std::string> strings(const std::vector<Polynomial>& v) {
  std::vector<std::string> out;
  for (const auto& p : v) out.push_back(p.to_string());
  return out;
}

}  // namespace

TEST_SUITE("groebner") {
  TEST_CASE("reduced basis of (x^2 + y^2, x*y)") {
    const RingPtr R = qxy();
    const Ideal I = Ideal::parse(R, {"x^2 + y^2", "x*y"});
    const auto& G = I.groebner();
    CHECK(oracle::is_groebner(G));
    CHECK(oracle::is_reduced(G));
    CHECK(strings(G) == std::vector<std::string>{"x*y", "x^2 + y^2", "y^3"});
  }

  TEST_CASE("bases satisfy Buchberger's criterion and are reduced") {
    oracle::Random rnd(31);
    for (const auto& F : {Field::rationals(), Field::prime(5), Field::prime(7)}) {
      for (auto order : {MonomialOrder::grevlex, MonomialOrder::lex}) {
        const RingPtr R = PolyRing::make(F, {"x", "y", "z"}, order);
        for (int i = 0; i < 12; ++i) {
          std::vector<Polynomial> gens;
          for (int k = 0; k < 3; ++k) gens.push_back(oracle::random_poly(rnd, R, 3, 2, 3));
          const auto G = buchberger(gens);
          CHECK(oracle::is_groebner(G));
          CHECK(oracle::is_reduced(G));
          for (const auto& g : gens) CHECK(oracle::remainder(g, G).is_zero());
        }
      }
    }
  }

  TEST_CASE("basis is independent of generator order") {
    oracle::Random rnd(37);
    const RingPtr R = PolyRing::make(Field::rationals(), {"x", "y", "z"});
    for (int i = 0; i < 15; ++i) {
      std::vector<Polynomial> gens;
      for (int k = 0; k < 3; ++k) gens.push_back(oracle::random_poly(rnd, R, 3, 2, 4));
      const auto G = strings(buchberger(gens));
      std::sort(gens.begin(), gens.end(), [](const Polynomial& a, const Polynomial& b) {
        return a.to_string() < b.to_string();
      });
      do {
        CHECK(strings(buchberger(gens)) == G);
      } while (std::next_permutation(gens.begin(), gens.end(), [](const Polynomial& a, const Polynomial& b) {
        return a.to_string() < b.to_string();
      }));
      CHECK(strings(buchberger(gens)) == G);
    }
  }

  TEST_CASE("membership of explicit combinations") {
    oracle::Random rnd(41);
    const RingPtr R = PolyRing::make(Field::rationals(), {"x", "y", "z"});
    const std::vector<Polynomial> gens{parse_polynomial(R, "x^2 - y*z"), parse_polynomial(R, "y^2 - x*z + 1"),
                                       parse_polynomial(R, "z^2 - x")};
    const Ideal I(R, gens);
    for (int i = 0; i < 50; ++i) {
      Polynomial f(R);
      for (const auto& g : gens) f += oracle::random_poly(rnd, R, 3, 2, 5) * g;
      CHECK(I.contains(f));
      CHECK(I.normal_form(f).is_zero());
      const auto c = lift(f, gens);
      REQUIRE(c.has_value());
      CHECK(oracle::is_combination(f, *c, gens));
      const Polynomial g = f + Polynomial::constant(R, 1);
      CHECK(I.normal_form(g) == I.normal_form(Polynomial::constant(R, 1)));
    }
    CHECK_FALSE(I.contains(parse_polynomial(R, "x")));
    CHECK_FALSE(lift(parse_polynomial(R, "x"), gens).has_value());
  }

  TEST_CASE("colon ideals") {
    const RingPtr R = qxy();
    CHECK(Ideal::parse(R, {"x*y"}).colon(parse_polynomial(R, "x")) == Ideal::parse(R, {"y"}));
    CHECK(Ideal::parse(R, {"x"}).colon(parse_polynomial(R, "x")).is_unit());
    CHECK(Ideal::parse(R, {"x^2", "x*y"}).colon(parse_polynomial(R, "x")) == Ideal::parse(R, {"x", "y"}));
    CHECK(Ideal::parse(R, {"x"}).colon(parse_polynomial(R, "y")) == Ideal::parse(R, {"x"}));
  }

  TEST_CASE("intersection and products") {
    const RingPtr R = qxy();
    const Ideal a = Ideal::parse(R, {"x"}), b = Ideal::parse(R, {"y"});
    CHECK(a.intersect(b) == Ideal::parse(R, {"x*y"}));
    CHECK(a * b == Ideal::parse(R, {"x*y"}));
    CHECK((a + b) == Ideal::parse(R, {"x", "y"}));
    const Ideal c = Ideal::parse(R, {"x", "y"}), d = Ideal::parse(R, {"x", "y - 1"});
    CHECK(c.intersect(d) == Ideal::parse(R, {"x", "y^2 - y"}));
  }

  TEST_CASE("regular sequences and height") {
    const RingPtr R = PolyRing::make(Field::rationals(), {"x", "y", "z", "T"});
    const std::vector<std::vector<std::string>> regular{
        {"x", "y"}, {"x*y", "x + y"}, {"x", "y - T"}, {"x^2 - y", "z*y - 1", "T"}, {"x", "y^2 - 1", "z - x*y"},
        {"x + y + z", "x*y + y*z + z*x", "x*y*z"}};
    for (const auto& s : regular) {
      std::vector<Polynomial> f;
      for (const auto& g : s) f.push_back(parse_polynomial(R, g));
      const auto cert = is_regular_sequence(f);
      CAPTURE(s[0]);
      CHECK(cert.regular);
      CHECK(Ideal(R, f).height() == f.size());
    }
    const std::vector<std::vector<std::string>> not_regular{{"x", "x"}, {"x*y", "x"}, {"x", "1"}, {"x*y", "x*z"}};
    for (const auto& s : not_regular) {
      std::vector<Polynomial> f;
      for (const auto& g : s) f.push_back(parse_polynomial(R, g));
      CHECK_FALSE(is_regular_sequence(f).regular);
    }
    CHECK(Ideal::parse(R, {"x", "y - T"}).height() == 2);
    CHECK(Ideal::parse(R, {"x*y", "x*z"}).height() == 1);
  }

  TEST_CASE("dimension and staircases") {
    const RingPtr R = qxy();
    CHECK(Ideal::parse(R, {"x"}).dimension() == 1);
    CHECK(Ideal::parse(R, {"x", "y^2 - 1"}).dimension() == 0);
    CHECK(Ideal::parse(R, {"x", "y^2 - 1"}).vector_space_dimension() == 2);
    CHECK(Ideal::parse(R, {"1"}).dimension() == -1);
    CHECK_THROWS_AS(Ideal::parse(R, {"x"}).vector_space_dimension(), InvalidArgument);
  }

  TEST_CASE("substitution commutes with sums of ideals") {
    oracle::Random rnd(43);
    const RingPtr R = PolyRing::make(Field::rationals(), {"x", "y", "T"}, MonomialOrder::grevlex, 0, "T");
    for (int i = 0; i < 20; ++i) {
      const Ideal a(R, {oracle::random_poly(rnd, R, 3, 2, 3), oracle::random_poly(rnd, R, 2, 2, 3)});
      const Ideal b(R, {oracle::random_poly(rnd, R, 3, 2, 3)});
      for (long c : {0L, 1L, -2L}) {
        const FieldElem v(R->field(), c);
        CHECK((a + b).substitute("T", v) == a.substitute("T", v) + b.substitute("T", v));
      }
    }
  }

  TEST_CASE("elimination") {
    const RingPtr R = PolyRing::make(Field::rationals(), {"x", "y", "t"});
    const Ideal I = Ideal::parse(R, {"x - t^2", "y - t^3"});
    const Ideal E = I.eliminate({"t"});
    CHECK(E.contains(parse_polynomial(R, "x^3 - y^2")));
    CHECK_FALSE(E.contains(parse_polynomial(R, "x - y")));
  }

  TEST_CASE("concurrent readers share one cached basis") {
    const RingPtr R = PolyRing::make(Field::rationals(), {"x", "y", "z"});
    const Ideal I = Ideal::parse(R, {"x^3 - y*z", "y^3 - x*z", "z^3 - x*y"});
    std::vector<std::string> seen(8);
    std::vector<std::thread> threads;
    for (int i = 0; i < 8; ++i)
      threads.emplace_back([&, i] { seen[i] = I.to_string() + "|" + std::to_string(I.groebner().size()); });
    for (auto& t : threads) t.join();
    for (const auto& s : seen) CHECK(s == seen[0]);
  }
}
