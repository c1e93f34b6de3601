// Acceptance run: one PASS/FAIL line per criterion, each with its time limit.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "cwkit/error.hpp"
#include "cwkit/gersten.hpp"
#include "../corpus/corpus_check.hpp"
#include "../oracles/oracles.hpp"

using namespace cwkit;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::vector<Polynomial> polys(const RingPtr& R, const std::vector<std::string>& s) {
  std::vector<Polynomial> out;
  for (const auto& x : s) out.push_back(parse_polynomial(R, x));
  return out;
}

DiagonalForm form_of(const FieldPtr& F, const std::vector<long>& a) {
  std::vector<FieldElem> e;
  for (long x : a) e.emplace_back(F, x);
  return DiagonalForm(F, e);
}

bool same_square_class_qq(const FieldElem& a, const FieldElem& b) {
  return oracle::is_rational_square(oracle::rational_of(a) / oracle::rational_of(b));
}

// 1
Outcome koszul_duality_certificates() {
  oracle::Random rnd(2024);
  Outcome o;
  int cases = 0, failures = 0;
  for (const auto& F : {Field::prime(5), Field::rationals()}) {
    const RingPtr R = PolyRing::make(F, {"x", "y", "z"});
    for (int done = 0; done < 50;) {
      const int n = static_cast<int>(rnd.uniform(1, 3));
      std::vector<Polynomial> f;
      for (int k = 0; k < n; ++k) f.push_back(oracle::random_poly(rnd, R, 3, 2, 10));
      if (!is_regular_sequence(f).regular) continue;
      ++done;
      ++cases;
      const DualityResult d = koszul_duality(koszul(f), FieldElem::one(F));
      if (!d.chain_map || !d.symmetric || !oracle::duality_certificate(f)) ++failures;
    }
  }
  o.ok = failures == 0 && cases == 100;
  o.detail = std::to_string(cases) + " sequences, " + std::to_string(failures) + " failures";
  return o;
}

// 2
Outcome cone_koszul_equality() {
  const RingPtr R = PolyRing::make(Field::rationals(), {"x", "y", "z", "T"});
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases{
      {{"x"}, "1"},          {{"x"}, "T"},           {{"x"}, "y*(y - 1)"},  {{"x"}, "y"},
      {{"x"}, "-3"},         {{"x", "y"}, "T"},      {{"x", "y"}, "1"},     {{"x", "y - T"}, "T"},
      {{"x", "y - T^2"}, "T"}, {{"x", "y"}, "z*(z - 1)"}, {{"x*y", "x + y"}, "z"}, {{"x^2 - y"}, "y*(y - 1)"},
      {{"x", "y", "z"}, "T"}, {{"x", "y", "z"}, "2"}, {{"x - 1", "y + z"}, "T^2 - 1"}, {{"x*z - y"}, "x + T"},
      {{"x"}, "x + 1"},      {{"y^2 - 1", "x"}, "T*z"}, {{"z"}, "y*(y - 1)*(y + 1)"}, {{"x + y + z", "x*y*z"}, "T - x"}};
  int failures = 0;
  for (const auto& [g, t] : cases) {
    const auto f = polys(R, g);
    const Polynomial tt = parse_polynomial(R, t);
    const ChainComplex c = reorder_lex(cone(multiplication_map(koszul(f), tt)));
    auto ft = f;
    ft.push_back(tt);
    bool ok = c == koszul(ft);
    for (int r = 1; r <= c.top() && ok; ++r) {
      const oracle::PMatrix m = oracle::cone_differential(f, tt, r);
      for (std::size_t i = 0; i < m.size() && ok; ++i)
        for (std::size_t j = 0; j < m[i].size() && ok; ++j) ok = c.d[r](i, j) == m[i][j];
      const oracle::PMatrix k = oracle::koszul_differential(ft, r);
      ok = ok && k == m;
    }
    if (!ok) ++failures;
  }
  return {failures == 0, std::to_string(cases.size()) + " instances, " + std::to_string(failures) + " mismatches"};
}

// 3
Outcome witt_brute_force() {
  long mismatches = 0, checked = 0;
  for (long p : {3L, 5L}) {
    const FieldPtr F = Field::prime(p);
    for (long a = 1; a < p; ++a)
      for (long b = 1; b < p; ++b) {
        ++checked;
        mismatches += decide_isometry(form_of(F, {a}), form_of(F, {b})) != oracle::congruent_fp({a}, {b}, p);
        for (long c = 1; c < p; ++c)
          for (long d = 1; d < p; ++d) {
            ++checked;
            mismatches += decide_isometry(form_of(F, {a, b}), form_of(F, {c, d})) !=
                          oracle::congruent_fp({a, b}, {c, d}, p);
          }
      }
    oracle::Random rnd(p);
    for (int i = 0; i < 200; ++i) {
      std::vector<long> a, b;
      for (int k = 0; k < 3; ++k) {
        a.push_back(rnd.uniform(1, p - 1));
        b.push_back(rnd.uniform(1, p - 1));
      }
      ++checked;
      mismatches += decide_isometry(form_of(F, a), form_of(F, b)) != oracle::congruent_fp(a, b, p);
    }
  }
  return {mismatches == 0, std::to_string(checked) + " pairs, " + std::to_string(mismatches) + " mismatches"};
}

// 4
Outcome theta_canonical() {
  const RingPtr R = PolyRing::make(Field::rationals(), {"x", "y"});
  const ThetaResult a = theta(LocalOrientation::parse(R, 2, {"x", "y"}));
  const ThetaResult b = theta(LocalOrientation::parse(R, 2, {"y", "x"}));
  const FieldPtr Q = R->field();
  auto single = [&](const ThetaResult& t, long u) {
    return t.cycle.terms().size() == 1 && t.cycle.terms()[0].point.label() == "(0, 0)" &&
           t.cycle.terms()[0].multiplicity == 1 && t.cycle.terms()[0].gw.equivalent(GWClass(form_of(Q, {u})));
  };
  const bool first = single(a, 1), second = single(b, -1);
  const bool distinct = !decide_isometry(form_of(Q, {1}), form_of(Q, {-1})) &&
                        gw_invariants(form_of(Q, {1})).signature != gw_invariants(form_of(Q, {-1})).signature &&
                        !a.cycle.equivalent(b.cycle);
  std::ostringstream d;
  d << "theta(x,y) = " << a.cycle.terms()[0].gw.to_string() << ", theta(y,x) = " << b.cycle.terms()[0].gw.to_string()
    << ", not isometric: " << (distinct ? "yes" : "no");
  return {first && second && distinct, d.str()};
}

// 5
Outcome boundary_instances() {
  const RingPtr R = PolyRing::make(Field::rationals(), {"x", "y"});
  const FieldPtr Q = R->field();
  struct Case {
    std::string t;
    std::vector<long> roots;
  };
  const std::vector<Case> cases{{"y", {0}}, {"y - 1", {1}}, {"y*(y - 1)", {0, 1}}};
  const Polynomial g = parse_polynomial(R, "x");
  int failures = 0, points = 0;
  for (const auto& c : cases) {
    const Polynomial t = parse_polynomial(R, c.t);
    const BoundaryResult r = d1_boundary({{g}, {Polynomial::constant(R, 1)}, t, std::nullopt});
    // chain level: the explicit cone is the Koszul complex of (x, t) ...
    bool ok = true;
    for (int k = 1; k <= 2; ++k) ok = ok && oracle::cone_differential({g}, t, k) == oracle::koszul_differential({g, t}, k);
    ok = ok && oracle::duality_certificate({g, t});
    // ... whose degree-0 form at a reduced point is <1 * jacobian>
    ok = ok && r.cycle.terms().size() == c.roots.size();
    for (std::size_t i = 0; ok && i < c.roots.size(); ++i) {
      const std::vector<FieldElem> pt{FieldElem(Q, 0L), FieldElem(Q, c.roots[i])};
      const auto& term = r.cycle.terms()[i];
      const FieldElem expected = oracle::jacobian_at({g, t}, {0, 1}, pt);
      ok = term.point.coords == pt && term.multiplicity == 1 && term.gw.rank() == 1 &&
           term.gw.witt().rank() == 1 && same_square_class_qq(term.gw.witt().entries()[0], expected);
      ++points;
    }
    if (!ok) ++failures;
  }
  return {failures == 0, std::to_string(cases.size()) + " instances, " + std::to_string(points) + " points, " +
                             std::to_string(failures) + " failures"};
}

// 6
Outcome homotopy_instances() {
  const RingPtr R = PolyRing::make(Field::rationals(), {"x", "y", "T"}, MonomialOrder::grevlex, 0, "T");
  const Polynomial T = Polynomial::variable(R, 2);
  int failures = 0, points = 0;
  for (const auto& g : {"y - T", "y - T^2", "y - T*(T - 1)"}) {
    const auto o = LocalOrientation::parse(R, 2, {"x", g});
    const HomotopyReport h = homotopy_check(o);
    bool ok = h.ok && h.det == Polynomial::constant(R, 1) && !h.points.empty();
    // Delta (f(0), T)^T = (f(T), T)^T
    std::vector<Polynomial> g0, gt = o.generators;
    for (const auto& f : o.generators) g0.push_back(f.substitute(2, Polynomial(R)));
    g0.push_back(T);
    gt.push_back(T);
    for (std::size_t i = 0; i < 3; ++i) {
      Polynomial s(R);
      for (std::size_t j = 0; j < 3; ++j) s += h.delta(i, j) * g0[j];
      ok = ok && s == gt[i];
    }
    for (const auto& p : h.points) {
      ++points;
      const FieldElem psi = oracle::jacobian_at(gt, {0, 1, 2}, p.point.coords);
      const FieldElem psi0 = oracle::jacobian_at(g0, {0, 1, 2}, p.point.coords);
      ok = ok && p.isometric && same_square_class_qq(p.psi, psi) && same_square_class_qq(p.psi0, psi0) &&
           same_square_class_qq(psi, psi0);
    }
    if (!ok) ++failures;
  }
  return {failures == 0, "3 homotopies, " + std::to_string(points) + " points, " + std::to_string(failures) + " failures"};
}

// 7
Outcome cycle_witness() {
  const RingPtr R = PolyRing::make(Field::rationals(), {"x", "y"});
  const FieldPtr Q = R->field();
  CWCycle c1(R, 2), c2(R, 2), c3(R, 2);
  c1.add(point_from_prime(Ideal::parse(R, {"x", "y"})), GWClass(form_of(Q, {1})), 1);
  c2.add(point_from_prime(Ideal::parse(R, {"x", "y - 1"})), GWClass(form_of(Q, {1})), 1);
  c3.add(point_from_prime(Ideal::parse(R, {"x", "y"})), GWClass(form_of(Q, {-1})), 1);
  const std::vector<Witness> w{{1, {polys(R, {"x"}), polys(R, {"1"}), parse_polynomial(R, "y"), std::nullopt}},
                              {-1, {polys(R, {"x"}), polys(R, {"1"}), parse_polynomial(R, "y - 1"), std::nullopt}}};
  const bool certified = verify_cycle_difference(c1, c2, w).equal;
  const bool refused = !verify_cycle_difference(c1, c3, {}).equal;
  return {certified && refused, std::string("witnessed equality ") + (certified ? "certified" : "NOT certified") +
                                    ", <1> vs <-1> " + (refused ? "refused" : "NOT refused")};
}

// 8
Outcome witt_relations() {
  std::vector<FieldPtr> fields{Field::prime(3), Field::prime(5), Field::prime(7), parse_field("GF(5)[z]/(z^2+2)"),
                               Field::rationals(), parse_field("QQ[z]/(z^2-2)"), parse_field("QQ[z]/(z^2+1)")};
  oracle::Random rnd(8);
  int failures = 0, pairs = 0;
  std::string where;
  for (const auto& F : fields) {
    for (int done = 0; done < 50;) {
      std::vector<Rational> ca, cb;
      for (std::size_t k = 0; k < F->degree(); ++k) {
        ca.emplace_back(rnd.uniform(-12, 12));
        cb.emplace_back(rnd.uniform(-12, 12));
      }
      const FieldElem a(F, ca), b(F, cb);
      if (a.is_zero() || b.is_zero() || (a + b).is_zero()) continue;
      ++done;
      ++pairs;
      try {
        const DiagonalForm lhs(F, {a, b}), rhs(F, {a + b, a * b * (a + b)});
        const DiagonalForm h = DiagonalForm::hyperbolic(F, 1);
        const bool ok = decide_isometry(lhs, rhs) && witt_equal(orthogonal_sum(lhs, h), lhs) &&
                        decide_isometry(orthogonal_sum(DiagonalForm(F, {a}), h), orthogonal_sum(DiagonalForm(F, {a}), DiagonalForm(F, {b, -b})));
        if (!ok) {
          ++failures;
          where = F->descriptor();
        }
      } catch (const Error& e) {
        ++failures;
        where = F->descriptor() + ": " + e.what();
      }
    }
  }
  return {failures == 0, std::to_string(fields.size()) + " fields, " + std::to_string(pairs) + " pairs, " +
                             std::to_string(failures) + " failures" + (where.empty() ? "" : " (" + where + ")")};
}

// 9
Outcome cli_determinism(const std::string& dir) {
  const corpus::Outcome c = corpus::check(dir);
  const bool all_commands = [&] {
    for (const auto& cmd : commands())
      if (!c.commands.count(cmd)) return false;
    return true;
  }();
  std::string detail = std::to_string(c.documents) + " documents, " + std::to_string(c.commands.size()) +
                       " commands, " + std::to_string(c.failures.size()) + " failures";
  if (!c.failures.empty()) detail += " (" + c.failures.front() + ")";
  return {c.failures.empty() && c.documents >= 15 && all_commands, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string corpus_dir = argc > 1 ? argv[1] : "corpus";
  struct Criterion {
    int id;
    std::string name;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Koszul duality certificates", 10, koszul_duality_certificates},
      {2, "cone-Koszul equality", 5, cone_koszul_equality},
      {3, "Witt classification vs brute force", 60, witt_brute_force},
      {4, "theta on canonical instances", 1, theta_canonical},
      {5, "d1 boundary instances", 5, boundary_instances},
      {6, "homotopy invariance pipeline", 10, homotopy_instances},
      {7, "cycle-equality witness", 5, cycle_witness},
      {8, "Witt ring relations", 10, witt_relations},
      {9, "CLI determinism", 30, [&] { return cli_determinism(corpus_dir); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = s < c.limit;
    const bool pass = o.ok && in_time;
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [" << std::fixed
              << std::setprecision(3) << s << " s, limit " << std::setprecision(0) << c.limit << " s] " << o.detail
              << (in_time ? "" : " (time limit exceeded)") << "\n";
  }
  return failed == 0 ? 0 : 1;
}
