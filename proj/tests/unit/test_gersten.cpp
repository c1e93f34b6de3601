#include <doctest.h>

#include "cwkit/error.hpp"
#include "cwkit/gersten.hpp"
#include "../oracles/oracles.hpp"

using namespace cwkit;

namespace {

RingPtr qxy() { return PolyRing::make(Field::rationals(), {"x", "y"}); }
RingPtr qxyt() { return PolyRing::make(Field::rationals(), {"x", "y", "T"}, MonomialOrder::grevlex, 0, "T"); }

LocalOrientation orient(const RingPtr& R, const std::vector<std::string>& g) { return LocalOrientation::parse(R, g.size(), g); }

std::vector<Polynomial> polys(const RingPtr& R, const std::vector<std::string>& s) {
  std::vector<Polynomial> out;
  for (const auto& x : s) out.push_back(parse_polynomial(R, x));
  return out;
}

Point rational_point(const RingPtr& R, const std::vector<std::string>& gens) { return point_from_prime(Ideal::parse(R, gens)); }

GWClass gw(const FieldPtr& F, const std::vector<long>& a) {
  std::vector<FieldElem> e;
  for (long x : a) e.emplace_back(F, x);
  return GWClass(DiagonalForm(F, e));
}

/// rank-1 rational forms <a>, <b> are isometric iff a/b is a square
bool same_square_class(const FieldElem& a, const FieldElem& b) {
  return oracle::is_rational_square(oracle::rational_of(a) / oracle::rational_of(b));
}

}  // namespace

TEST_SUITE("gersten") {
  TEST_CASE("theta of (x, y) and (y, x)") {
    const RingPtr R = qxy();
    const ThetaResult a = theta(orient(R, {"x", "y"})), b = theta(orient(R, {"y", "x"}));
    REQUIRE(a.cycle.terms().size() == 1);
    REQUIRE(b.cycle.terms().size() == 1);
    CHECK(a.cycle.terms()[0].point.label() == "(0, 0)");
    CHECK(a.cycle.terms()[0].gw.to_string() == "<1>");
    CHECK(b.cycle.terms()[0].gw.to_string() == "<-1>");
    CHECK(a.cycle.terms()[0].multiplicity == 1);
    CHECK_FALSE(a.cycle.equivalent(b.cycle));
    CHECK(theta(orient(R, {"x", "1"})).cycle.is_empty());
  }

  TEST_CASE("theta with a reference orientation") {
    const RingPtr R = qxy();
    const ThetaResult t = theta(orient(R, {"y", "x"}), std::nullopt, orient(R, {"x", "y"}));
    REQUIRE(t.reference.has_value());
    CHECK(t.reference->det == Polynomial::constant(R, -1));
  }

  TEST_CASE("theta is invariant under elementary generator changes") {
    oracle::Random rnd(109);
    const RingPtr R = qxy();
    for (const auto& g : std::vector<std::vector<std::string>>{{"x", "y"}, {"x", "y^2 - 1"}, {"x - y", "y^3 - y"}}) {
      const auto o = orient(R, g);
      const ThetaResult base = theta(o);
      for (int i = 0; i < 10; ++i) {
        std::vector<Polynomial> f = o.generators;
        const Polynomial h = oracle::random_poly(rnd, R, 2, 2, 4);
        if (i % 2) f[0] += h * f[1];
        else f[1] += h * f[0];
        const auto o2 = LocalOrientation::make(R, 2, f);
        const auto cmp = compare_orientations(o, o2);
        bool trivial = true;
        for (const auto& u : cmp.units) trivial &= is_square(u.unit);
        REQUIRE(trivial);
        CHECK(theta(o2).cycle.equivalent(base.cycle));
      }
    }
  }

  TEST_CASE("d1 boundary against the Jacobian oracle") {
    const RingPtr R = qxy();
    struct Case {
      std::string t;
      std::vector<long> roots;
      std::vector<std::string> form;
    };
    const std::vector<Case> cases{{"y", {0}, {"1"}},
                                  {"y^2 - y", {0, 1}, {"1"}},
                                  {"y - 1", {1}, {"1"}},
                                  {"y^2 - 4 + x", {-2, 2}, {"y + 3"}},
                                  {"(y - 1)*(y + 3)", {-3, 1}, {"1", "y^2 + 1"}}};
    for (const auto& c : cases) {
      CAPTURE(c.t);
      const Polynomial t = parse_polynomial(R, c.t);
      const auto form = polys(R, c.form);
      const BoundaryResult r = d1_boundary({polys(R, {"x"}), form, t, std::nullopt});
      CHECK(r.regular.regular);
      CHECK(r.cone_is_koszul);
      CHECK(r.duality_chain_map);
      CHECK(r.duality_symmetric);
      REQUIRE(r.cycle.terms().size() == c.roots.size());
      for (std::size_t i = 0; i < c.roots.size(); ++i) {
        const auto& term = r.cycle.terms()[i];
        const std::vector<FieldElem> pt{FieldElem(R->field(), 0L), FieldElem(R->field(), c.roots[i])};
        CHECK(term.point.coords == pt);
        CHECK(term.multiplicity == static_cast<long>(form.size()));
        const FieldElem u = oracle::jacobian_at({parse_polynomial(R, "x"), t}, {0, 1}, pt);
        std::vector<FieldElem> expected;
        for (const auto& a : form) expected.push_back(oracle::eval(a, pt) * u);
        CHECK(term.gw.equivalent(GWClass(DiagonalForm(R->field(), expected))));
        if (form.size() == 1) CHECK(same_square_class(term.gw.witt().entries().at(0), expected[0]));
      }
    }
  }

  TEST_CASE("d1 with t a unit along the support is empty") {
    const RingPtr R = qxy();
    for (const auto& t : {"1", "x + 1", "3", "x*y + 2"})
      CHECK(d1_boundary({polys(R, {"x"}), polys(R, {"1"}), parse_polynomial(R, t), std::nullopt}).cycle.is_empty());
  }

  TEST_CASE("d1 is linear in the base form") {
    const RingPtr R = qxy();
    const Polynomial t = parse_polynomial(R, "y^2 - 3*y + 2");
    const auto g = polys(R, {"x"});
    const auto full = d1_boundary({g, polys(R, {"1", "y + 5", "-2"}), t, std::nullopt}).cycle;
    CWCycle sum(R, 2);
    for (const auto& a : {"1", "y + 5", "-2"}) sum = sum + d1_boundary({g, polys(R, {a}), t, std::nullopt}).cycle;
    CHECK(full.equivalent(sum));
  }

  TEST_CASE("d1 rejects bad data") {
    const RingPtr R = qxy();
    CHECK_THROWS_AS(d1_boundary({polys(R, {"x*y"}), polys(R, {"1"}), parse_polynomial(R, "x"), std::nullopt}), Rejected);
    CHECK_THROWS_AS(d1_boundary({polys(R, {"x"}), polys(R, {"y"}), parse_polynomial(R, "y"), std::nullopt}), Rejected);
    CHECK_THROWS_AS(d1_boundary({polys(R, {"x"}), polys(R, {"1"}), parse_polynomial(R, "y^2"), std::nullopt}), Unsupported);
  }

  TEST_CASE("homotopy pipeline") {
    const RingPtr R = qxyt();
    for (const auto& g : {"y - T", "y - T^2", "y - T^2 + T", "y - 2*T"}) {
      CAPTURE(g);
      const HomotopyReport h = homotopy_check(orient(R, {"x", g}));
      CHECK(h.ok);
      CHECK(h.det == Polynomial::constant(R, 1));
      CHECK(h.ideals_agree);
      CHECK(h.boundaries_agree);
      CHECK(h.conjugation.composite_is_chain_map);
      for (const auto& d : h.conjugation.discrepancy) CHECK(d.is_zero());
      for (const auto& p : h.points) CHECK(p.isometric);
      // Delta reproduces (f(T), T) from (f(0), T)
      std::vector<Polynomial> g0;
      for (const auto& f : h.orientation.generators) g0.push_back(f.substitute(2, Polynomial(R)));
      g0.push_back(Polynomial::variable(R, 2));
      for (std::size_t i = 0; i < 3; ++i) {
        Polynomial s(R);
        for (std::size_t j = 0; j < 3; ++j) s += h.delta(i, j) * g0[j];
        CHECK(s == (i < 2 ? h.orientation.generators[i] : Polynomial::variable(R, 2)));
      }
    }
  }

  TEST_CASE("constant homotopies have Delta = identity") {
    const RingPtr R = qxyt();
    for (const auto& g : std::vector<std::vector<std::string>>{{"x", "y"}, {"x - 1", "y^2 - 1"}, {"y", "x"}}) {
      const HomotopyReport h = homotopy_check(orient(R, g));
      CHECK(h.delta == PolyMatrix::identity(R, 3));
      CHECK(h.ok);
      REQUIRE(h.theta0.has_value());
      CHECK(h.theta0->cycle.equivalent(h.theta1->cycle));
    }
  }

  TEST_CASE("homotopy refuses non-homotopy rings and invalid ends") {
    CHECK_THROWS_AS(homotopy_check(orient(qxy(), {"x", "y"})), InvalidArgument);
    CHECK_THROWS_AS(homotopy_check(orient(qxyt(), {"x", "T*y"})), Rejected);
  }

  TEST_CASE("cycle difference witnesses") {
    const RingPtr R = qxy();
    const FieldPtr Q = R->field();
    CWCycle c1(R, 2), c2(R, 2), c3(R, 2);
    c1.add(rational_point(R, {"x", "y"}), gw(Q, {1}), 1);
    c2.add(rational_point(R, {"x", "y - 1"}), gw(Q, {1}), 1);
    c3.add(rational_point(R, {"x", "y"}), gw(Q, {-1}), 1);
    const std::vector<Witness> w{{1, {polys(R, {"x"}), polys(R, {"1"}), parse_polynomial(R, "y"), std::nullopt}},
                                {-1, {polys(R, {"x"}), polys(R, {"1"}), parse_polynomial(R, "y - 1"), std::nullopt}}};
    CHECK(verify_cycle_difference(c1, c2, w).equal);
    CHECK(verify_cycle_difference(c1, c1, {}).equal);
    CHECK_FALSE(verify_cycle_difference(c1, c3, {}).equal);
    CHECK_FALSE(verify_cycle_difference(c1, c2, {}).equal);
    CHECK_FALSE(verify_cycle_difference(c1, c2, {w[0]}).equal);
  }

  TEST_CASE("cycles enforce the parity condition and merge terms") {
    const RingPtr R = qxy();
    const FieldPtr Q = R->field();
    CWCycle c(R, 2);
    const Point o = rational_point(R, {"x", "y"});
    CHECK_THROWS_AS(c.add(o, gw(Q, {1}), 2), Falsified);
    c.add(o, gw(Q, {1}), 1);
    c.add(o, gw(Q, {-1}), 1);
    REQUIRE(c.terms().size() == 1);
    CHECK(c.terms()[0].multiplicity == 2);
    CHECK(c.terms()[0].gw.equivalent(GWClass(DiagonalForm::hyperbolic(Q, 1))));
    CHECK((c - c).is_empty());
  }
}
