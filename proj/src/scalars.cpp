#include "cwkit/scalars.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>

#include "cwkit/error.hpp"
#include "raw_poly.hpp"

namespace cwkit {

namespace {

std::atomic<std::uint64_t> g_trial_bound{kDefaultTrialDivisionBound};

bool is_odd_prime(std::uint64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  Integer z(static_cast<unsigned long>(p));
  return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

}  // namespace

// --- Field -----------------------------------------------------------------

FieldPtr Field::rationals() {
  static const FieldPtr qq = [] {
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = FieldKind::rationals;
    f->descriptor_ = "QQ";
    return f;
  }();
  return qq;
}

FieldPtr Field::prime(std::uint64_t p) {
  if (!is_odd_prime(p))
    throw InvalidArgument("GF(" + std::to_string(p) + "): characteristic must be an odd prime");
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = FieldKind::prime;
  f->p_ = p;
  f->descriptor_ = "GF(" + std::to_string(p) + ")";
  return f;
}

FieldPtr Field::extension(const FieldPtr& base, std::vector<Rational> minpoly,
                          std::string generator) {
  if (!base || base->kind() == FieldKind::extension)
    throw InvalidArgument("simple extensions are limited to one level over QQ or GF(p)");
  const std::uint64_t p = base->characteristic();
  RawArith ar{p};
  for (auto& c : minpoly) c = ar.norm(c);
  ar.trim(minpoly);
  if (minpoly.size() < 3)
    throw InvalidArgument("minimal polynomial of an extension must have degree >= 2");
  minpoly = ar.monic(minpoly);
  UniPoly m(base, minpoly);
  if (p == 0) {
    if (m.degree() != 2)
      throw Unsupported("extensions of QQ are supported in degree 2 only");
    if (!rational_roots(m).empty())
      throw InvalidArgument("minimal polynomial " + m.to_string(generator) + " is reducible over QQ");
  } else {
    auto fac = factor_univariate(m);
    if (fac.size() != 1 || fac[0].multiplicity != 1)
      throw InvalidArgument("minimal polynomial " + m.to_string(generator) + " is reducible over " +
                            base->descriptor());
  }
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = FieldKind::extension;
  f->p_ = p;
  f->base_ = base;
  f->minpoly_ = std::move(minpoly);
  f->generator_ = generator;
  f->descriptor_ = base->descriptor() + "[" + generator + "]/(" +
                   raw_to_string(f->minpoly_, generator, false) + ")";
  return f;
}

FieldPtr Field::prime_field() const {
  if (kind_ == FieldKind::extension) return base_;
  return shared_from_this();
}

Integer Field::order() const {
  if (p_ == 0) throw InvalidArgument("QQ is infinite");
  Integer q;
  mpz_ui_pow_ui(q.get_mpz_t(), p_, degree());
  return q;
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->descriptor() == b->descriptor();
}

// --- FieldElem -------------------------------------------------------------

FieldElem::FieldElem(FieldPtr field, const Rational& value) : field_(std::move(field)) {
  RawArith ar{field_->characteristic()};
  c_.assign(field_->degree(), Rational(0));
  c_[0] = ar.norm(value);
}

FieldElem::FieldElem(FieldPtr field, std::vector<Rational> coeffs) : field_(std::move(field)) {
  RawArith ar{field_->characteristic()};
  for (auto& c : coeffs) c = ar.norm(c);
  if (field_->kind() == FieldKind::extension) {
    ar.trim(coeffs);
    coeffs = ar.rem(coeffs, field_->minimal_polynomial());
  }
  coeffs.resize(field_->degree(), Rational(0));
  c_ = std::move(coeffs);
}

FieldElem FieldElem::generator(const FieldPtr& field) {
  if (field->kind() != FieldKind::extension)
    throw InvalidArgument(field->descriptor() + " has no generator");
  return FieldElem(field, std::vector<Rational>{Rational(0), Rational(1)});
}

bool FieldElem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r == 0; });
}

bool FieldElem::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& r) { return r == 0; });
}

bool FieldElem::in_prime_field() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& r) { return r == 0; });
}

const Rational& FieldElem::base_value() const {
  if (!in_prime_field()) throw InvalidArgument(to_string() + " is not in the prime field");
  return c_[0];
}

void FieldElem::check_same(const FieldElem& o) const {
  if (!valid() || !o.valid()) throw InvalidArgument("uninitialised field element");
  if (!same_field(field_, o.field_))
    throw InvalidArgument("field mismatch: " + field_->descriptor() + " vs " + o.field_->descriptor());
}

FieldElem FieldElem::operator-() const {
  FieldElem r = *this;
  RawArith ar{field_->characteristic()};
  for (auto& c : r.c_) c = ar.neg(c);
  return r;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  check_same(o);
  RawArith ar{field_->characteristic()};
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = ar.add(c_[i], o.c_[i]);
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  check_same(o);
  RawArith ar{field_->characteristic()};
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = ar.sub(c_[i], o.c_[i]);
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  check_same(o);
  RawArith ar{field_->characteristic()};
  if (field_->kind() != FieldKind::extension) {
    c_[0] = ar.mul(c_[0], o.c_[0]);
    return *this;
  }
  RawPoly a = c_, b = o.c_;
  ar.trim(a);
  ar.trim(b);
  RawPoly prod = ar.rem(ar.mul(a, b), field_->minimal_polynomial());
  prod.resize(field_->degree(), Rational(0));
  c_ = std::move(prod);
  return *this;
}

FieldElem FieldElem::inverse() const {
  if (!valid()) throw InvalidArgument("uninitialised field element");
  if (is_zero()) throw InvalidArgument("division by zero in " + field_->descriptor());
  RawArith ar{field_->characteristic()};
  FieldElem r = *this;
  if (field_->kind() != FieldKind::extension) {
    r.c_[0] = ar.inv(c_[0]);
    return r;
  }
  RawPoly a = c_;
  ar.trim(a);
  RawPoly inv = ar.inverse_mod(a, field_->minimal_polynomial());
  inv.resize(field_->degree(), Rational(0));
  r.c_ = std::move(inv);
  return r;
}

FieldElem& FieldElem::operator/=(const FieldElem& o) {
  check_same(o);
  return *this *= o.inverse();
}

FieldElem FieldElem::pow(const Integer& e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElem result = one(field_);
  FieldElem base = *this;
  Integer k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

bool operator==(const FieldElem& a, const FieldElem& b) {
  return same_field(a.field_, b.field_) && a.c_ == b.c_;
}

bool canonical_less(const FieldElem& a, const FieldElem& b) {
  for (std::size_t i = a.c_.size(); i-- > 0;) {
    if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
  }
  return false;
}

std::string FieldElem::to_string() const {
  if (!valid()) return "<invalid>";
  if (field_->kind() != FieldKind::extension) return c_[0].get_str();
  RawArith ar{field_->characteristic()};
  RawPoly a = c_;
  ar.trim(a);
  return raw_to_string(a, field_->generator_name(), false);
}

FieldElem embed(const FieldElem& x, const FieldPtr& target) {
  if (same_field(x.field(), target)) return x;
  if (!same_field(x.field(), target->prime_field()))
    throw InvalidArgument("cannot embed " + x.field()->descriptor() + " into " + target->descriptor());
  return FieldElem(target, x.coeffs()[0]);
}

// --- integers and square classes -------------------------------------------

void set_trial_division_bound(std::uint64_t bound) { g_trial_bound.store(bound); }
std::uint64_t trial_division_bound() { return g_trial_bound.load(); }

std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n) {
  if (n == 0) throw InvalidArgument("cannot factor zero");
  Integer m = abs(n);
  std::vector<std::pair<Integer, unsigned>> out;
  auto take = [&](unsigned long d) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
      ++e;
    }
    if (e) out.emplace_back(Integer(d), e);
  };
  const std::uint64_t bound = trial_division_bound();
  take(2);
  for (unsigned long d = 3; d <= bound; d += 2) {
    if (m == 1) break;
    if (Integer(d) * Integer(d) > m) break;
    take(d);
  }
  if (m > 1) {
    const bool below_square =
        Integer(static_cast<unsigned long>(bound)) * Integer(static_cast<unsigned long>(bound)) >= m;
    if (below_square || mpz_probab_prime_p(m.get_mpz_t(), 50) > 0) {
      out.emplace_back(m, 1);
    } else {
      throw Unsupported("integer factorization of " + n.get_str() + " exceeds trial-division bound " +
                        std::to_string(bound));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

Integer squarefree_part(const Rational& q) {
  if (q == 0) throw InvalidArgument("square class of zero");
  Integer nd = q.get_num() * q.get_den();
  Integer s = sgn(nd) < 0 ? Integer(-1) : Integer(1);
  if (nd == 1 || nd == -1) return s;
  for (const auto& [p, e] : factor_integer(nd))
    if (e % 2) s *= p;
  return s;
}

namespace {

// Euler's criterion in a finite field.
bool finite_is_square(const FieldElem& a) {
  Integer e = (a.field()->order() - 1) / 2;
  return a.pow(e).is_one();
}

// a in QQ[z]/(z^2 + b z + c); complete the square and solve (s + t w)^2 = a
// with w^2 = D over QQ.
bool quadratic_ext_is_square(const FieldElem& a) {
  const auto& m = a.field()->minimal_polynomial();
  const Rational b = m[1], c = m[0];
  const Rational D = b * b / 4 - c;
  const Rational u = a.coeffs()[0] - a.coeffs()[1] * b / 2;
  const Rational v = a.coeffs()[1];
  auto rat_square = [](const Rational& r) {
    if (r < 0) return false;
    return mpz_perfect_square_p(r.get_num_mpz_t()) && mpz_perfect_square_p(r.get_den_mpz_t());
  };
  auto rat_sqrt = [](const Rational& r) {
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
    return Rational(n, d);
  };
  if (v == 0) return rat_square(u) || rat_square(u / D);
  const Rational N = u * u - D * v * v;
  if (!rat_square(N)) return false;
  const Rational r = rat_sqrt(N);
  for (const Rational& s2 : {Rational((u + r) / 2), Rational((u - r) / 2)})
    if (s2 != 0 && rat_square(s2)) return true;
  return false;
}

}  // namespace

bool is_square(const FieldElem& a) {
  if (a.is_zero()) throw InvalidArgument("is_square: zero has no square class");
  const auto& f = a.field();
  switch (f->kind()) {
    case FieldKind::rationals: {
      const Rational& q = a.coeffs()[0];
      return q > 0 && mpz_perfect_square_p(q.get_num_mpz_t()) &&
             mpz_perfect_square_p(q.get_den_mpz_t());
    }
    case FieldKind::prime: {
      Integer x(a.coeffs()[0].get_num());
      Integer p(static_cast<unsigned long>(f->characteristic()));
      return mpz_legendre(x.get_mpz_t(), p.get_mpz_t()) == 1;
    }
    case FieldKind::extension:
      if (f->is_finite()) return finite_is_square(a);
      return quadratic_ext_is_square(a);
  }
  return false;
}

FieldElem least_nonsquare(const FieldPtr& field) {
  if (!field->is_finite()) throw InvalidArgument(field->descriptor() + " is not finite");
  const std::uint64_t p = field->characteristic();
  const std::size_t d = field->degree();
  for (std::uint64_t idx = 1;; ++idx) {
    std::vector<Rational> c(d, Rational(0));
    std::uint64_t k = idx;
    for (std::size_t i = 0; i < d && k; ++i, k /= p) c[i] = Rational(static_cast<long>(k % p));
    FieldElem x(field, c);
    if (!is_square(x)) return x;
  }
}

FieldElem square_class(const FieldElem& a) {
  if (a.is_zero()) throw InvalidArgument("square_class: zero has no square class");
  const auto& f = a.field();
  if (f->kind() == FieldKind::rationals) return FieldElem(f, Rational(squarefree_part(a.coeffs()[0])));
  if (!f->is_finite())
    throw Unsupported("square classes over " + f->descriptor() + " have no canonical representative");
  return is_square(a) ? FieldElem::one(f) : least_nonsquare(f);
}

// --- UniPoly ---------------------------------------------------------------

UniPoly::UniPoly(FieldPtr field, std::vector<Rational> coeffs) : field_(std::move(field)) {
  if (field_->kind() == FieldKind::extension)
    throw InvalidArgument("UniPoly coefficients must lie in QQ or GF(p)");
  RawArith ar{field_->characteristic()};
  for (auto& c : coeffs) c = ar.norm(c);
  ar.trim(coeffs);
  c_ = std::move(coeffs);
}

UniPoly UniPoly::monic() const {
  RawArith ar{field_->characteristic()};
  return UniPoly(field_, ar.monic(c_));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (!same_field(a.field_, b.field_)) throw InvalidArgument("UniPoly field mismatch");
  RawArith ar{a.field_->characteristic()};
  return UniPoly(a.field_, ar.mul(a.c_, b.c_));
}

bool operator==(const UniPoly& a, const UniPoly& b) {
  return same_field(a.field_, b.field_) && a.c_ == b.c_;
}

std::string UniPoly::to_string(const std::string& var) const {
  return raw_to_string(c_, var, false);
}

namespace {

// Square-free factorization over GF(p) (Musser / Yun variant with p-th roots).
void sff(const RawArith& ar, RawPoly f, unsigned mult, std::vector<std::pair<RawPoly, unsigned>>& out) {
  const std::uint64_t p = ar.p;
  RawPoly g = ar.derivative(f);
  if (!g.empty()) {
    RawPoly c = ar.gcd(f, g);
    RawPoly w = ar.quo(f, c);
    unsigned i = 1;
    while (w.size() > 1) {
      RawPoly y = ar.gcd(w, c);
      RawPoly fac = ar.quo(w, y);
      if (fac.size() > 1) out.emplace_back(fac, i * mult);
      ++i;
      w = y;
      c = ar.quo(c, y);
    }
    if (c.size() > 1) {
      RawPoly root;
      for (std::size_t k = 0; k < c.size(); k += p) root.push_back(c[k]);
      sff(ar, root, mult * static_cast<unsigned>(p), out);
    }
  } else {
    RawPoly root;
    for (std::size_t k = 0; k < f.size(); k += p) root.push_back(f[k]);
    sff(ar, root, mult * static_cast<unsigned>(p), out);
  }
}

std::vector<std::pair<RawPoly, unsigned>> ddf(const RawArith& ar, RawPoly f) {
  std::vector<std::pair<RawPoly, unsigned>> out;
  const RawPoly x{Rational(0), Rational(1)};
  RawPoly h = x;
  Integer pz(static_cast<unsigned long>(ar.p));
  unsigned i = 1;
  while (static_cast<int>(f.size()) - 1 >= 2 * static_cast<int>(i)) {
    h = ar.pow_mod(h, pz, f);
    RawPoly g = ar.gcd(f, ar.sub(h, x));
    if (g.size() > 1) {
      out.emplace_back(g, i);
      f = ar.quo(f, g);
      h = ar.rem(h, f);
    }
    ++i;
  }
  if (f.size() > 1) out.emplace_back(f, static_cast<unsigned>(f.size() - 1));
  return out;
}

void edf(const RawArith& ar, const RawPoly& g, unsigned d, std::mt19937_64& rng,
         std::vector<RawPoly>& out) {
  const std::size_t n = g.size() - 1;
  if (n == d) {
    out.push_back(g);
    return;
  }
  Integer q;
  mpz_ui_pow_ui(q.get_mpz_t(), ar.p, d);
  const Integer e = (q - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> coef(0, ar.p - 1);
  for (;;) {
    RawPoly a(n);
    for (auto& c : a) c = Rational(static_cast<unsigned long>(coef(rng)));
    ar.trim(a);
    if (a.size() < 2) continue;
    RawPoly b = ar.sub(ar.pow_mod(a, e, g), RawPoly{Rational(1)});
    RawPoly h = ar.gcd(g, b);
    if (h.size() > 1 && h.size() < g.size()) {
      edf(ar, h, d, rng, out);
      edf(ar, ar.quo(g, h), d, rng, out);
      return;
    }
  }
}

bool raw_less(const RawPoly& a, const RawPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

void sort_factors(std::vector<UniFactor>& v) {
  std::sort(v.begin(), v.end(), [](const UniFactor& a, const UniFactor& b) {
    if (a.factor.coeffs() != b.factor.coeffs()) return raw_less(a.factor.coeffs(), b.factor.coeffs());
    return a.multiplicity < b.multiplicity;
  });
}

}  // namespace

std::vector<UniFactor> factor_univariate(const UniPoly& f) {
  if (f.is_zero()) throw InvalidArgument("factor_univariate: zero polynomial");
  if (!f.field()->is_finite()) throw InvalidArgument("factor_univariate expects a polynomial over GF(p)");
  RawArith ar{f.field()->characteristic()};
  std::vector<UniFactor> out;
  if (f.degree() == 0) return out;
  std::vector<std::pair<RawPoly, unsigned>> sq;
  sff(ar, ar.monic(f.coeffs()), 1, sq);
  std::mt19937_64 rng(0x5eed5eedULL);
  for (const auto& [part, mult] : sq) {
    for (const auto& [g, d] : ddf(ar, part)) {
      std::vector<RawPoly> pieces;
      edf(ar, g, d, rng, pieces);
      for (auto& piece : pieces) out.push_back({UniPoly(f.field(), ar.monic(piece)), mult});
    }
  }
  // Merge equal factors coming from different square-free layers.
  sort_factors(out);
  std::vector<UniFactor> merged;
  for (auto& u : out) {
    if (!merged.empty() && merged.back().factor == u.factor)
      merged.back().multiplicity += u.multiplicity;
    else
      merged.push_back(u);
  }
  return merged;
}

std::vector<std::pair<Rational, unsigned>> rational_roots(const UniPoly& f) {
  if (f.field()->kind() != FieldKind::rationals) throw InvalidArgument("rational_roots expects QQ");
  if (f.is_zero()) throw InvalidArgument("rational_roots: zero polynomial");
  RawArith ar{0};
  RawPoly g = f.coeffs();
  std::vector<std::pair<Rational, unsigned>> roots;
  unsigned zero_mult = 0;
  while (g.size() > 1 && g[0] == 0) {
    g.erase(g.begin());
    ++zero_mult;
  }
  if (zero_mult) roots.emplace_back(Rational(0), zero_mult);
  if (g.size() <= 1) return roots;
  // Integer primitive form.
  Integer l = 1;
  for (const auto& c : g) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> a;
  for (const auto& c : g) a.push_back(Integer(c * l));
  auto divisors = [](const Integer& n) {
    std::vector<Integer> ds{Integer(1)};
    for (const auto& [p, e] : factor_integer(n)) {
      const std::size_t cur = ds.size();
      Integer pk = 1;
      for (unsigned k = 1; k <= e; ++k) {
        pk *= p;
        for (std::size_t i = 0; i < cur; ++i) ds.push_back(ds[i] * pk);
      }
    }
    return ds;
  };
  const auto num_divs = divisors(a.front());
  const auto den_divs = divisors(a.back());
  std::vector<Rational> cands;
  for (const auto& pn : num_divs)
    for (const auto& qd : den_divs) {
      Rational r(pn, qd);
      r.canonicalize();
      cands.push_back(r);
      cands.push_back(-r);
    }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  for (const auto& r : cands) {
    unsigned m = 0;
    const RawPoly lin{-r, Rational(1)};
    while (g.size() > 1 && ar.eval(g, r) == 0) {
      g = ar.quo(g, lin);
      ++m;
    }
    if (m) roots.emplace_back(r, m);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<UniFactor> factor_rational_small(const UniPoly& f) {
  RawArith ar{0};
  std::vector<UniFactor> out;
  RawPoly g = ar.monic(f.coeffs());
  for (const auto& [r, m] : rational_roots(f)) {
    const RawPoly lin{-r, Rational(1)};
    for (unsigned k = 0; k < m; ++k) g = ar.quo(g, lin);
    out.push_back({UniPoly(f.field(), lin), m});
  }
  if (g.size() == 3) {
    out.push_back({UniPoly(f.field(), g), 1});
  } else if (g.size() > 3) {
    throw Unsupported("factor of degree " + std::to_string(g.size() - 1) + " without rational roots over QQ: " +
                      raw_to_string(g, "x", false) + "; supply the decomposition explicitly");
  }
  sort_factors(out);
  return out;
}

}  // namespace cwkit
