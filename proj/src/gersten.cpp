#include "cwkit/gersten.hpp"

#include <algorithm>

#include "cwkit/error.hpp"

namespace cwkit {

void CWCycle::check_ambient(const CWCycle& o) const {
  if (!same_ring(ring_, o.ring_) || codim_ != o.codim_)
    throw InvalidArgument("cycles live in different ambient rings or codimensions");
}

void CWCycle::add(const Point& x, const GWClass& gw, long m) {
  if (((gw.rank() - m) % 2 + 2) % 2)
    throw Falsified("cycle term at " + x.label() + " has rank " + std::to_string(gw.rank()) + " and multiplicity " +
                    std::to_string(m));
  auto it = std::find_if(terms_.begin(), terms_.end(), [&](const CycleTerm& t) { return t.point.key == x.key; });
  if (it == terms_.end()) {
    if (gw.is_zero() && m == 0) return;
    terms_.push_back({x, gw, m});
    std::sort(terms_.begin(), terms_.end(), [](const CycleTerm& a, const CycleTerm& b) {
      if (a.point.degree() != b.point.degree()) return a.point.degree() < b.point.degree();
      if (a.point.degree() == 1)
        return std::lexicographical_compare(
            a.point.coords.begin(), a.point.coords.end(), b.point.coords.begin(), b.point.coords.end(),
            [](const FieldElem& p, const FieldElem& q) { return canonical_less(p, q); });
      return a.point.key < b.point.key;
    });
    return;
  }
  it->gw = it->gw + gw;
  it->multiplicity += m;
  if (it->gw.is_zero() && it->multiplicity == 0) terms_.erase(it);
}

CWCycle CWCycle::operator+(const CWCycle& o) const {
  check_ambient(o);
  CWCycle out = *this;
  for (const auto& t : o.terms_) out.add(t.point, t.gw, t.multiplicity);
  return out;
}

CWCycle CWCycle::operator-() const {
  CWCycle out(ring_, codim_);
  for (const auto& t : terms_) out.terms_.push_back({t.point, -t.gw, -t.multiplicity});
  return out;
}

bool CWCycle::equivalent(const CWCycle& o) const {
  check_ambient(o);
  const CWCycle d = *this - o;
  for (const auto& t : d.terms_)
    if (t.multiplicity != 0 || !t.gw.equivalent(GWClass::zero(t.gw.field()))) return false;
  return true;
}

ThetaResult theta(const LocalOrientation& o, const std::optional<std::vector<Ideal>>& primes,
                  const std::optional<LocalOrientation>& reference) {
  ThetaResult r;
  r.orientation = o;
  r.cycle = CWCycle(o.ring, o.n);
  const PointwiseForm phi = phi_form(o, primes);
  r.units = phi.points;
  for (const auto& e : phi.points)
    r.cycle.add(e.point, GWClass(DiagonalForm(e.point.residue, {e.transition})), 1);
  if (reference) {
    r.reference = compare_orientations(*reference, o, primes);
    const PointwiseForm ref = phi_form(*reference, primes);
    for (const auto& e : phi.points) {
      auto rp = std::find_if(ref.points.begin(), ref.points.end(),
                             [&](const PointwiseEntry& q) { return q.point.key == e.point.key; });
      auto up = std::find_if(r.reference->units.begin(), r.reference->units.end(),
                             [&](const PointUnit& q) { return q.point.key == e.point.key; });
      if (rp == ref.points.end() || up == r.reference->units.end())
        throw Falsified("reference orientation misses the point " + e.point.label());
      if (rp->transition * up->unit != e.transition)
        throw Falsified("theta at " + e.point.label() + ": reference unit " + rp->transition.to_string() + " * det M " +
                        up->unit.to_string() + " != " + e.transition.to_string());
    }
  }
  return r;
}

BoundaryResult d1_boundary(const BoundaryDatum& b) {
  if (b.g.empty()) throw InvalidArgument("d1_boundary: empty sequence g");
  if (b.form.empty()) throw InvalidArgument("d1_boundary: empty base form");
  const RingPtr& R = b.g[0].ring();
  const Polynomial t = convert(b.t, R);
  BoundaryResult out;
  out.regular = is_regular_sequence(b.g);
  if (!out.regular.regular) throw Rejected("d1_boundary: g is not a regular sequence: " + out.regular.reason);
  const Ideal G(R, b.g);
  if (t.is_zero()) throw Rejected("d1_boundary: t = 0 is a zero divisor");
  const Ideal colon = G.colon(t);
  out.colon = colon.groebner_strings();
  if (!(colon == G)) throw Rejected("d1_boundary: " + t.to_string() + " is a zero divisor modulo " + G.to_string());

  const ChainComplex k = koszul(b.g);
  const ChainComplex c = reorder_lex(cone(multiplication_map(k, t)));
  std::vector<Polynomial> gt = b.g;
  gt.push_back(t);
  out.cone_is_koszul = c == koszul(gt) && c.is_complex();
  const DualityResult phi = koszul_duality(c, FieldElem::one(R->field()));
  out.duality_chain_map = phi.chain_map;
  out.duality_symmetric = phi.symmetric;
  if (!out.cone_is_koszul || !phi.chain_map || !phi.symmetric)
    throw Falsified("d1_boundary: cone/duality certificate failed");

  const std::size_t n = gt.size();
  out.cycle = CWCycle(R, n);
  const Ideal J(R, gt);
  if (J.is_unit()) return out;
  if (!b.primes && !J.is_zero_dimensional())
    throw Unsupported("d1_boundary: (g, t) = " + J.to_string() + " is not zero-dimensional");
  for (auto& x : decompose(J, b.primes)) {
    if (x.multiplicity != 1)
      throw Unsupported("d1_boundary: non-reduced point " + x.label() + " of length " + std::to_string(x.multiplicity));
    const FieldElem u = transition_unit(x, gt);
    if (u.is_zero()) throw Unsupported("d1_boundary: non-reduced point " + x.label());
    std::vector<FieldElem> entries;
    for (const auto& a : b.form) {
      const FieldElem ax = x.reduce(a);
      if (ax.is_zero())
        throw Rejected("d1_boundary: form entry " + a.to_string() + " vanishes at " + x.label());
      entries.push_back(ax * u);
    }
    out.cycle.add(x, GWClass(DiagonalForm(x.residue, entries)), static_cast<long>(b.form.size()));
    out.units.push_back({x, FieldElem::one(x.residue), u});
  }
  return out;
}

HomotopyReport homotopy_check(const LocalOrientation& o, const std::optional<std::vector<Ideal>>& primes) {
  const auto tname = o.ring->homotopy_name();
  if (!tname) throw InvalidArgument("homotopy_check: the ring has no homotopy variable");
  const RingPtr& R = o.ring;
  const std::size_t ti = *R->homotopy_index();
  HomotopyReport r;
  r.orientation = o;
  const ValidationCertificate vc = require_valid(o);
  if (vc.kind == OrientationKind::trivial) throw Rejected("homotopy_check: trivial orientation");
  r.at0 = evaluate(o, 0);
  r.at1 = evaluate(o, 1);

  const Polynomial T = Polynomial::variable(R, ti);
  const Polynomial zero = Polynomial(R);
  const std::size_t n = o.n;
  std::vector<Polynomial> f = o.generators, f0;
  for (const auto& p : f) f0.push_back(p.substitute(ti, zero));
  r.delta = PolyMatrix::identity(R, n + 1);
  for (std::size_t i = 0; i < n; ++i) r.delta(i, n) = exact_divide(f[i] - f0[i], T);
  r.det = determinant(r.delta);

  std::vector<Polynomial> g = f, g0 = f0;
  g.push_back(T);
  g0.push_back(T);
  r.conjugation = conjugate_by_elementary(g, g0, r.delta, FieldElem::one(R->field()));
  if (!r.conjugation.composite_is_chain_map || !r.conjugation.degree0_agrees)
    throw Falsified("homotopy_check: degree-0 disagreement; composite " +
                    r.conjugation.composite.f[0].to_strings()[0][0] + " vs phi " +
                    (r.conjugation.composite.f[0] - r.conjugation.discrepancy[0]).to_strings()[0][0]);
  const Ideal I(R, g), I0(R, g0);
  r.ideals_agree = I == I0;
  if (!r.ideals_agree) throw Falsified("homotopy_check: (f(T), T) != (f(0), T)");

  if (!primes && !I0.is_zero_dimensional())
    throw Unsupported("homotopy_check: (I(0), T) = " + I0.to_string() + " is not zero-dimensional");
  for (auto& x : decompose(I0, primes)) {
    if (x.multiplicity != 1) throw Unsupported("homotopy_check: non-reduced point " + x.label());
    HomotopyPointCheck pc{x, transition_unit(x, g), transition_unit(x, g0), FieldElem(), false};
    if (pc.psi.is_zero() || pc.psi0.is_zero()) throw Unsupported("homotopy_check: non-reduced point " + x.label());
    pc.ratio = pc.psi / pc.psi0;
    pc.isometric = decide_isometry(DiagonalForm(x.residue, {pc.psi}), DiagonalForm(x.residue, {pc.psi0}));
    if (!pc.isometric)
      throw Falsified("homotopy_check: psi = <" + pc.psi.to_string() + "> and psi0 = <" + pc.psi0.to_string() +
                      "> differ by the non-square unit " + pc.ratio.to_string() + " at " + x.label());
    r.points.push_back(std::move(pc));
  }

  std::vector<Polynomial> one{Polynomial::constant(R, 1)};
  r.boundary_t = d1_boundary({f, one, T, primes});
  r.boundary_0 = d1_boundary({f0, one, T, primes});
  r.boundaries_agree = r.boundary_t.cycle.equivalent(r.boundary_0.cycle);
  if (!r.boundaries_agree) throw Falsified("homotopy_check: d1 boundaries of f(T) and f(0) differ");

  try {
    r.theta0 = theta(r.at0);
    r.theta1 = theta(r.at1);
  } catch (const Unsupported& e) {
    r.theta0.reset();
    r.theta1.reset();
    r.theta_note = e.what();
  }
  r.ok = true;
  return r;
}

DifferenceReport verify_cycle_difference(const CWCycle& c1, const CWCycle& c2, const std::vector<Witness>& witnesses) {
  DifferenceReport r;
  r.difference = c1 - c2;
  r.boundary = CWCycle(c1.ring(), c1.codim());
  for (const auto& w : witnesses) {
    if (w.sign != 1 && w.sign != -1) throw InvalidArgument("witness sign must be +1 or -1");
    BoundaryResult b = d1_boundary(w.datum);
    r.boundary = r.boundary + (w.sign > 0 ? b.cycle : -b.cycle);
    r.witnesses.push_back(std::move(b));
  }
  r.equal = r.difference.equivalent(r.boundary);
  return r;
}

}  // namespace cwkit
