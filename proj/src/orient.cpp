#include "cwkit/orient.hpp"

#include "cwkit/error.hpp"

namespace cwkit {

std::string to_string(OrientationKind k) {
  switch (k) {
    case OrientationKind::trivial: return "trivial";
    case OrientationKind::height_n: return "height-n";
    case OrientationKind::rejected: return "rejected";
  }
  return "?";
}

LocalOrientation LocalOrientation::make(const RingPtr& ring, std::size_t n, std::vector<Polynomial> generators,
                                        std::optional<std::vector<Polynomial>> ideal) {
  if (n < 2) throw InvalidArgument("orientation rank n must be at least 2");
  if (generators.size() != n)
    throw InvalidArgument("orientation needs exactly n = " + std::to_string(n) + " generators, got " +
                          std::to_string(generators.size()));
  LocalOrientation o;
  o.ring = ring;
  o.n = n;
  for (auto& g : generators) o.generators.push_back(convert(g, ring));
  std::vector<Polynomial> ig;
  if (ideal)
    for (auto& g : *ideal) ig.push_back(convert(g, ring));
  else
    ig = o.generators;
  o.ideal = Ideal(ring, ig);
  return o;
}

LocalOrientation LocalOrientation::parse(const RingPtr& ring, std::size_t n, const std::vector<std::string>& generators,
                                         const std::optional<std::vector<std::string>>& ideal) {
  std::vector<Polynomial> g;
  for (const auto& s : generators) g.push_back(parse_polynomial(ring, s));
  std::optional<std::vector<Polynomial>> ig;
  if (ideal) {
    ig.emplace();
    for (const auto& s : *ideal) ig->push_back(parse_polynomial(ring, s));
  }
  return make(ring, n, std::move(g), std::move(ig));
}

std::vector<std::string> LocalOrientation::generator_strings() const {
  std::vector<std::string> out;
  for (const auto& g : generators) out.push_back(g.to_string());
  return out;
}

ValidationCertificate validate(const LocalOrientation& o) {
  ValidationCertificate c;
  const Ideal gen(o.ring, o.generators);
  c.generators_generate = gen == o.ideal;
  if (!c.generators_generate) {
    c.reason = "generators do not generate the stated ideal";
    return c;
  }
  if (gen.is_unit()) {
    c.kind = OrientationKind::trivial;
    return c;
  }
  c.height = gen.height();
  if (*c.height < o.n) {
    c.reason = "height " + std::to_string(*c.height) + " < n = " + std::to_string(o.n);
    return c;
  }
  c.regular = is_regular_sequence(o.generators);
  if (!c.regular->regular) {
    c.reason = "generators are not a regular sequence: " + c.regular->reason;
    return c;
  }
  c.kind = OrientationKind::height_n;
  return c;
}

ValidationCertificate require_valid(const LocalOrientation& o) {
  ValidationCertificate c = validate(o);
  if (c.kind == OrientationKind::rejected) throw Rejected(c.reason);
  return c;
}

LocalOrientation evaluate(const LocalOrientation& o, long c) {
  const auto t = o.ring->homotopy_name();
  if (!t) throw InvalidArgument("evaluate: the ring has no homotopy variable");
  const FieldElem v(o.ring->field(), c);
  std::vector<Polynomial> g, ig;
  for (const auto& f : o.generators) g.push_back(substitute_value(f, *t, v));
  for (const auto& f : o.ideal.generators()) ig.push_back(substitute_value(f, *t, v));
  RingPtr small = o.ring->without(*t);
  if (g.empty()) throw InvalidArgument("evaluate: empty orientation");
  LocalOrientation e = LocalOrientation::make(small, o.n, std::move(g), std::move(ig));
  const ValidationCertificate cert = validate(e);
  if (cert.kind == OrientationKind::rejected)
    throw Rejected("evaluation at " + *t + " = " + std::to_string(c) + " is not a valid orientation: " + cert.reason);
  return e;
}

PointwiseForm phi_form(const LocalOrientation& o, const std::optional<std::vector<Ideal>>& primes) {
  const ValidationCertificate c = require_valid(o);
  PointwiseForm out;
  if (c.kind == OrientationKind::trivial) return out;
  if (!primes && !o.ideal.is_zero_dimensional())
    throw Unsupported("the points of the positive-dimensional ideal " + o.ideal.to_string() +
                      " are not closed points; only zero-dimensional supports are supported");
  for (auto& x : decompose(o.ideal, primes)) {
    if (x.multiplicity != 1)
      throw Unsupported("non-reduced point " + x.label() + " of length " + std::to_string(x.multiplicity));
    FieldElem t = transition_unit(x, o.generators);
    if (t.is_zero()) throw Unsupported("non-reduced point " + x.label());
    FieldElem one = FieldElem::one(x.residue);
    out.points.push_back({std::move(x), std::move(one), std::move(t)});
  }
  return out;
}

OrientationComparison compare_orientations(const LocalOrientation& a, const LocalOrientation& b,
                                           const std::optional<std::vector<Ideal>>& primes) {
  require_valid(a);
  require_valid(b);
  if (!same_ring(a.ring, b.ring) || a.n != b.n) throw InvalidArgument("compare: orientations live on different data");
  if (!(a.ideal == b.ideal)) throw Rejected("compare: the orientations have different ideals");
  const std::size_t n = a.n;
  // f' in terms of f and the products f_j f_k spanning I^2.
  std::vector<Polynomial> span = a.generators;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j; k < n; ++k) span.push_back(a.generators[j] * a.generators[k]);
  OrientationComparison out;
  out.m = PolyMatrix(a.ring, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = lift(b.generators[i], span);
    if (!c) throw Rejected("compare: " + b.generators[i].to_string() + " is not in the ideal");
    for (std::size_t j = 0; j < n; ++j) out.m(i, j) = (*c)[j];
  }
  out.det = determinant(out.m);
  if (a.ideal.is_unit()) return out;
  if (!primes && !a.ideal.is_zero_dimensional()) {
    out.points_note = "positive-dimensional support: pointwise units not computed";
    return out;
  }
  for (auto& x : decompose(a.ideal, primes)) {
    FieldElem u = x.reduce(out.det);
    out.units.push_back({std::move(x), std::move(u)});
  }
  return out;
}

}  // namespace cwkit
