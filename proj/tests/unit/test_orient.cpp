#include <doctest.h>

#include "cwkit/error.hpp"
#include "cwkit/orient.hpp"
#include "../oracles/oracles.hpp"

using namespace cwkit;

namespace {

RingPtr qxy() { return PolyRing::make(Field::rationals(), {"x", "y"}); }

RingPtr qxyt() { return PolyRing::make(Field::rationals(), {"x", "y", "T"}, MonomialOrder::grevlex, 0, "T"); }

LocalOrientation orient(const RingPtr& R, const std::vector<std::string>& g) { return LocalOrientation::parse(R, g.size(), g); }

}  // namespace

TEST_SUITE("orient") {
  TEST_CASE("validation outcomes") {
    const RingPtr R = qxy();
    const auto ok = validate(orient(R, {"x", "y"}));
    CHECK(ok.kind == OrientationKind::height_n);
    CHECK(ok.height == 2);
    const auto bad = validate(orient(R, {"x", "x"}));
    CHECK(bad.kind == OrientationKind::rejected);
    CHECK(bad.reason == "height 1 < n = 2");
    CHECK(validate(orient(R, {"x", "1"})).kind == OrientationKind::trivial);
    const auto gen = validate(LocalOrientation::parse(R, 2, {"x", "y"}, std::vector<std::string>{"x", "y", "x + 1"}));
    CHECK(gen.kind == OrientationKind::rejected);
    CHECK_FALSE(gen.generators_generate);
    CHECK_THROWS_AS(orient(R, {"x"}), InvalidArgument);
    CHECK_THROWS_AS(LocalOrientation::parse(R, 2, {"x", "y", "x"}), InvalidArgument);
    CHECK_THROWS_AS(require_valid(orient(R, {"x", "x"})), Rejected);
    CHECK(to_string(OrientationKind::height_n) == "height-n");
  }

  TEST_CASE("ideal generated differently by the stated generators") {
    const RingPtr R = qxy();
    const auto c = validate(LocalOrientation::parse(R, 2, {"x + y", "y"}, std::vector<std::string>{"x", "y"}));
    CHECK(c.kind == OrientationKind::height_n);
  }

  TEST_CASE("evaluation commutes with substituting the ideal") {
    const RingPtr R = qxyt();
    for (const auto& g : std::vector<std::vector<std::string>>{
             {"x", "y - T"}, {"x", "y - T^2"}, {"x", "y - T^2 + T"}, {"x + T*y", "y^2 - 1"}, {"x - T", "y + T*x"}}) {
      const auto o = orient(R, g);
      for (long c : {0L, 1L}) {
        const auto e = evaluate(o, c);
        CHECK(e.ideal == o.ideal.substitute("T", FieldElem(R->field(), c)));
        CHECK(e.ring->nvars() == 2);
      }
    }
    CHECK_THROWS_AS(evaluate(orient(qxy(), {"x", "y"}), 0), InvalidArgument);
    CHECK_THROWS_AS(evaluate(orient(R, {"x", "T*y"}), 0), Rejected);
  }

  TEST_CASE("canonical generators give the unit form") {
    const RingPtr R = qxy();
    for (const auto& g : std::vector<std::vector<std::string>>{{"x", "y"}, {"x - 1", "y + 2"}, {"x - 3/2", "y"}}) {
      const auto phi = phi_form(orient(R, g));
      REQUIRE(phi.points.size() == 1);
      CHECK(phi.points[0].transition.is_one());
    }
    // parameters of a degree-2 point
    const auto pts = minimal_primes_zero_dim(Ideal::parse(R, {"x", "y^2 - 2"}));
    const auto phi = phi_form(LocalOrientation::make(R, 2, pts[0].parameters));
    CHECK(phi.points[0].transition.is_one());
  }

  TEST_CASE("pointwise units equal the Jacobian over QQ and F_p") {
    const RingPtr Q = qxy();
    for (const auto& g : std::vector<std::vector<std::string>>{{"y", "x"}, {"x + y^2", "y"}, {"x", "y^2 - 1"},
                                                               {"x - y", "y^3 - 4*y"}, {"2*x", "3*y - 1"}}) {
      const auto o = orient(Q, g);
      for (const auto& e : phi_form(o).points) CHECK(e.transition == oracle::jacobian_at(o.generators, {0, 1}, e.point.coords));
    }
    const RingPtr F = PolyRing::make(Field::prime(7), {"x", "y"});
    for (const auto& g : std::vector<std::vector<std::string>>{{"x + y", "y^2 - 1"}, {"x^2 - y", "y^2 - 2"}, {"x*y - 1", "x - y"}}) {
      const auto o = orient(F, g);
      const auto phi = phi_form(o);
      std::size_t rational = 0;
      for (const auto& e : phi.points) {
        if (e.point.degree() != 1) continue;
        ++rational;
        CHECK(e.transition == oracle::jacobian_at(o.generators, {0, 1}, e.point.coords));
      }
      CHECK(rational == oracle::grid_zeros(o.generators).size());
    }
  }

  TEST_CASE("non-reduced and positive-dimensional supports are unsupported") {
    const RingPtr R = qxy();
    CHECK_THROWS_AS(phi_form(orient(R, {"x", "y^2"})), Unsupported);
    const RingPtr S = PolyRing::make(Field::rationals(), {"x", "y", "z"});
    CHECK_THROWS_AS(phi_form(orient(S, {"x", "y"})), Unsupported);
  }

  TEST_CASE("comparison matrices") {
    const RingPtr R = qxy();
    const auto c = compare_orientations(orient(R, {"x", "y"}), orient(R, {"x + y^2", "y"}));
    CHECK(c.det == Polynomial::constant(R, 1));
    REQUIRE(c.units.size() == 1);
    CHECK(c.units[0].unit.is_one());
    const auto s = compare_orientations(orient(R, {"x", "y"}), orient(R, {"y", "x"}));
    CHECK(s.det == Polynomial::constant(R, -1));
    CHECK_THROWS_AS(compare_orientations(orient(R, {"x", "y"}), orient(R, {"x", "y - 1"})), Rejected);
  }

  TEST_CASE("comparison is multiplicative modulo squares") {
    const RingPtr R = qxy();
    const std::vector<std::vector<std::string>> chain{{"x", "y^2 - 1"}, {"y^2 - 1", "3*x"}, {"x + y^2 - 1", "2*y^2 - 2 - x"}};
    const auto a = orient(R, chain[0]), b = orient(R, chain[1]), c = orient(R, chain[2]);
    const auto ab = compare_orientations(a, b), bc = compare_orientations(b, c), ac = compare_orientations(a, c);
    REQUIRE(ab.units.size() == ac.units.size());
    for (std::size_t i = 0; i < ac.units.size(); ++i) {
      CHECK(ab.units[i].point.key == ac.units[i].point.key);
      const FieldElem prod = ab.units[i].unit * bc.units[i].unit;
      CHECK(square_class(prod) == square_class(ac.units[i].unit));
      // and agrees with the ratio of Jacobians
      const auto ja = oracle::jacobian_at(a.generators, {0, 1}, ac.units[i].point.coords);
      const auto jc = oracle::jacobian_at(c.generators, {0, 1}, ac.units[i].point.coords);
      CHECK(ac.units[i].unit == jc / ja);
    }
  }

  TEST_CASE("elementary changes have trivial units") {
    oracle::Random rnd(107);
    const RingPtr R = qxy();
    const auto base = orient(R, {"x", "y^2 - y"});
    for (int i = 0; i < 20; ++i) {
      const Polynomial h = oracle::random_poly(rnd, R, 2, 2, 5);
      std::vector<Polynomial> g = base.generators;
      if (i % 2) g[0] += h * g[1];
      else g[1] += h * g[0];
      const auto c = compare_orientations(base, LocalOrientation::make(R, 2, g));
      for (const auto& u : c.units) CHECK(u.unit.is_one());
    }
  }
}
