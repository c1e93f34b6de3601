#include "cwkit/points.hpp"

#include <algorithm>
#include <numeric>

#include "cwkit/error.hpp"

namespace cwkit {

FieldElem Point::reduce(const Polynomial& f) const {
  return convert(f, ring()).evaluate(coords);
}

std::string Point::label() const {
  std::string s = "(";
  if (degree() == 1) {
    for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? ", " : "") + coords[i].to_string();
  } else {
    const auto g = prime.groebner_strings();
    for (std::size_t i = 0; i < g.size(); ++i) s += (i ? ", " : "") + g[i];
    s = "V" + s;
  }
  return s + ")";
}

namespace {

struct Shape {
  RingPtr lex;
  std::size_t last;                     // index (in the original ring) of the univariate variable
  std::vector<std::size_t> perm;        // lex variable k is original variable perm[k]
  Polynomial h;                         // univariate, in the original ring
  std::vector<Polynomial> linear;       // x_i - g_i(x_last), indexed by original variable, unset at `last`
};

std::optional<Shape> try_shape(const Ideal& I, const std::vector<std::size_t>& perm) {
  const RingPtr& R = I.ring();
  const std::size_t m = R->nvars();
  std::vector<std::string> names;
  for (std::size_t k : perm) names.push_back(R->variable(k));
  RingPtr lex = PolyRing::make(R->field(), names, MonomialOrder::lex);
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(convert(g, lex));
  const auto gb = buchberger(gens);
  if (gb.size() != m) return std::nullopt;
  Shape s;
  s.lex = lex;
  s.perm = perm;
  s.last = perm.back();
  s.linear.assign(m, Polynomial(R));
  std::vector<bool> seen(m, false);
  bool have_h = false;
  for (const auto& p : gb) {
    // Every non-leading term may only involve the last lex variable.
    for (std::size_t t = 1; t < p.terms().size(); ++t)
      for (std::size_t k = 0; k + 1 < m; ++k)
        if (p.terms()[t].mono[k]) return std::nullopt;
    const Monomial& lm = p.leading_monomial();
    std::size_t support = 0, var = 0;
    for (std::size_t k = 0; k < m; ++k)
      if (lm[k]) {
        ++support;
        var = k;
      }
    if (support != 1) return std::nullopt;
    if (var + 1 == m) {
      if (have_h) return std::nullopt;
      have_h = true;
      s.h = convert(p, R);
    } else {
      if (lm[var] != 1 || seen[var]) return std::nullopt;
      seen[var] = true;
      s.linear[perm[var]] = convert(p, R);
    }
  }
  if (!have_h) return std::nullopt;
  return s;
}

std::optional<Shape> find_shape(const Ideal& I) {
  const std::size_t m = I.ring()->nvars();
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (auto s = try_shape(I, perm)) return s;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

UniPoly to_univariate(const Polynomial& h, std::size_t var) {
  const FieldPtr& F = h.ring()->field();
  std::vector<Rational> c(h.degree_in(var) + 1, Rational(0));
  for (const auto& t : h.terms()) c[t.mono[var]] = t.coef.base_value();
  return UniPoly(F, std::move(c));
}

Polynomial from_univariate(const RingPtr& R, std::size_t var, const UniPoly& u) {
  std::vector<Term> terms;
  for (std::size_t e = 0; e < u.coeffs().size(); ++e) {
    if (u.coeffs()[e] == 0) continue;
    Monomial m(R->nvars(), 0);
    m[var] = static_cast<std::uint32_t>(e);
    terms.push_back({m, FieldElem(R->field(), u.coeffs()[e])});
  }
  return Polynomial::from_terms(R, std::move(terms));
}

std::vector<UniFactor> split(const Polynomial& h, std::size_t var) {
  const FieldPtr& F = h.ring()->field();
  if (F->kind() == FieldKind::extension) {
    if (h.degree_in(var) == 1) return {};  // handled by the caller
    throw Unsupported("splitting a univariate polynomial over " + F->descriptor() +
                      " is not supported; supply a decomposition");
  }
  const UniPoly u = to_univariate(h, var);
  return F->kind() == FieldKind::prime ? factor_univariate(u) : factor_rational_small(u);
}

bool point_less(const Point& a, const Point& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  if (a.degree() == 1 && same_field(a.residue, b.residue))
    return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(), b.coords.end(),
                                        [](const FieldElem& x, const FieldElem& y) { return canonical_less(x, y); });
  return a.key < b.key;
}

std::string key_of(const Ideal& P) {
  std::string k;
  for (const auto& s : P.groebner_strings()) k += (k.empty() ? "" : "; ") + s;
  return k;
}

Point make_point(const Shape& s, const RingPtr& R, const Polynomial& q, const FieldPtr& residue,
                 const FieldElem& root, std::size_t multiplicity) {
  Point pt;
  pt.residue = residue;
  const std::size_t m = R->nvars();
  pt.coords.assign(m, FieldElem::zero(residue));
  pt.coords[s.last] = root;
  std::vector<FieldElem> v(m, FieldElem::zero(residue));
  v[s.last] = root;
  for (std::size_t i = 0; i < m; ++i)
    if (i != s.last) pt.coords[i] = -s.linear[i].evaluate(v);
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < m; ++i)
    if (i != s.last) gens.push_back(s.linear[i]);
  gens.push_back(q);
  pt.parameters = gens;
  pt.prime = Ideal(R, gens);
  pt.multiplicity = multiplicity;
  pt.key = key_of(pt.prime);
  return pt;
}

// Points read off the shape position of I itself; presentations depend on I.
std::vector<Point> raw_points(const Ideal& I) {
  const RingPtr& R = I.ring();
  if (!I.is_zero_dimensional())
    throw InvalidArgument("minimal_primes_zero_dim: " + I.to_string() + " is not zero-dimensional");
  const auto shape = find_shape(I);
  if (!shape)
    throw Unsupported("ideal " + I.to_string() + " is not in shape position; supply a decomposition");
  const FieldPtr& F = R->field();
  std::vector<Point> out;
  if (F->kind() == FieldKind::extension) {
    const Polynomial h = shape->h.monic();
    if (h.degree_in(shape->last) != 1)
      throw Unsupported("splitting a univariate polynomial over " + F->descriptor() +
                        " is not supported; supply a decomposition");
    out.push_back(make_point(*shape, R, h, F, -h.constant_coeff(), 1));
    return out;
  }
  for (const auto& fac : split(shape->h, shape->last)) {
    const Polynomial q = from_univariate(R, shape->last, fac.factor);
    if (fac.factor.degree() == 1) {
      const FieldElem root(F, Rational(-fac.factor.coeffs()[0]));
      out.push_back(make_point(*shape, R, q, F, root, fac.multiplicity));
    } else {
      FieldPtr K = Field::extension(F, fac.factor.coeffs(), "z");
      out.push_back(make_point(*shape, R, q, K, FieldElem::generator(K), fac.multiplicity));
    }
  }
  return out;
}

}  // namespace

std::vector<Point> minimal_primes_zero_dim(const Ideal& I) {
  if (I.is_unit()) return {};
  std::vector<Point> out;
  // Re-derive each point from its own prime so that residue field,
  // coordinates and parameters depend only on the point.
  for (const auto& raw : raw_points(I)) {
    auto own = raw_points(raw.prime);
    if (own.size() != 1) throw Falsified("prime " + raw.prime.to_string() + " split further");
    own[0].multiplicity = raw.multiplicity;
    out.push_back(std::move(own[0]));
  }
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

Point point_from_prime(const Ideal& prime) {
  if (prime.is_unit()) throw Rejected("decomposition entry " + prime.to_string() + " is the unit ideal");
  std::vector<Point> pts;
  try {
    pts = raw_points(prime);
  } catch (const Error& e) {
    throw Rejected("decomposition entry " + prime.to_string() + " is not a usable maximal ideal: " + e.what());
  }
  if (pts.size() != 1 || pts[0].multiplicity != 1)
    throw Rejected("decomposition entry " + prime.to_string() + " is not a maximal ideal");
  return pts[0];
}

namespace {

std::size_t local_length(const Ideal& I, const Point& x) {
  const std::size_t deg = x.prime.vector_space_dimension();
  Ideal power = x.prime;
  std::size_t prev = 0;
  for (;;) {
    const std::size_t d = (I + power).vector_space_dimension();
    if (d == prev) return d / deg;
    prev = d;
    power = power * x.prime;
  }
}

}  // namespace

std::vector<Point> verify_decomposition(const Ideal& I, const std::vector<Ideal>& primes) {
  if (I.is_unit()) {
    if (!primes.empty()) throw Rejected("the unit ideal has no points");
    return {};
  }
  if (!I.is_zero_dimensional())
    throw Unsupported("points of the positive-dimensional ideal " + I.to_string() + " are not supported");
  std::vector<Point> out;
  for (const auto& P0 : primes) {
    const Ideal P = P0.in_ring(I.ring());
    if (!P.contains(I)) throw Rejected("decomposition entry " + P.to_string() + " does not contain " + I.to_string());
    Point x = point_from_prime(P);
    x.multiplicity = local_length(I, x);
    out.push_back(std::move(x));
  }
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = a + 1; b < out.size(); ++b)
      if (!(out[a].prime + out[b].prime).is_unit())
        throw Rejected("decomposition entries " + out[a].prime.to_string() + " and " + out[b].prime.to_string() +
                       " are not comaximal");
  std::size_t total = 0;
  for (const auto& x : out) total += x.multiplicity * x.prime.vector_space_dimension();
  if (total != I.vector_space_dimension())
    throw Rejected("decomposition misses points: lengths add up to " + std::to_string(total) + ", dim A/I = " +
                   std::to_string(I.vector_space_dimension()));
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

std::vector<Point> decompose(const Ideal& I, const std::optional<std::vector<Ideal>>& primes) {
  return primes ? verify_decomposition(I, *primes) : minimal_primes_zero_dim(I);
}

std::vector<std::vector<FieldElem>> transition_matrix(const Point& x, const std::vector<Polynomial>& f) {
  if (f.size() != x.parameters.size())
    throw InvalidArgument("transition matrix: " + std::to_string(f.size()) + " elements against " +
                          std::to_string(x.parameters.size()) + " parameters at " + x.label());
  std::vector<std::vector<FieldElem>> M;
  for (const auto& fi : f) {
    const Polynomial g = convert(fi, x.ring());
    const auto c = lift(g, x.parameters);
    if (!c) throw InvalidArgument(g.to_string() + " does not vanish at " + x.label());
    std::vector<FieldElem> row;
    for (const auto& cij : *c) row.push_back(x.reduce(cij));
    M.push_back(std::move(row));
  }
  return M;
}

FieldElem transition_unit(const Point& x, const std::vector<Polynomial>& f) {
  return determinant(transition_matrix(x, f));
}

FieldElem determinant(const std::vector<std::vector<FieldElem>>& m0) {
  if (m0.empty()) throw InvalidArgument("determinant of an empty matrix");
  auto m = m0;
  const std::size_t n = m.size();
  FieldElem det = FieldElem::one(m[0][0].field());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return FieldElem::zero(det.field());
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    const FieldElem inv = m[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      const FieldElem k = m[r][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[r][j] -= k * m[c][j];
    }
  }
  return det;
}

}  // namespace cwkit
