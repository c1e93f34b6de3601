#include "cwkit/witt.hpp"

#include <algorithm>
#include <set>

#include "cwkit/error.hpp"
#include "cwkit/polyring.hpp"

namespace cwkit {

DiagonalForm::DiagonalForm(FieldPtr field, std::vector<FieldElem> entries)
    : field_(std::move(field)), entries_(std::move(entries)) {
  for (const auto& a : entries_) {
    if (!same_field(a.field(), field_))
      throw InvalidArgument("form entry " + a.to_string() + " is not in " + field_->descriptor());
    if (a.is_zero()) throw InvalidArgument("diagonal form entries must be nonzero");
  }
}

DiagonalForm DiagonalForm::parse(const FieldPtr& field, const std::vector<std::string>& entries) {
  std::vector<FieldElem> e;
  for (const auto& s : entries) e.push_back(parse_field_element(field, s));
  return DiagonalForm(field, std::move(e));
}

DiagonalForm DiagonalForm::hyperbolic(const FieldPtr& field, std::size_t k) {
  std::vector<FieldElem> e;
  for (std::size_t i = 0; i < k; ++i) {
    e.push_back(FieldElem::one(field));
    e.push_back(-FieldElem::one(field));
  }
  return DiagonalForm(field, std::move(e));
}

FieldElem DiagonalForm::determinant() const {
  FieldElem d = FieldElem::one(field_);
  for (const auto& a : entries_) d *= a;
  return d;
}

FieldElem DiagonalForm::signed_determinant() const {
  const std::size_t k = rank();
  const FieldElem d = determinant();
  return (k * (k - 1) / 2) % 2 ? -d : d;
}

std::vector<std::string> DiagonalForm::entry_strings() const {
  std::vector<std::string> out;
  for (const auto& a : entries_) out.push_back(a.to_string());
  return out;
}

std::string DiagonalForm::brackets() const {
  std::string s = "<";
  for (std::size_t i = 0; i < entries_.size(); ++i) s += (i ? "," : "") + entries_[i].to_string();
  return s + ">";
}

std::string DiagonalForm::to_string() const { return brackets() + " over " + field_->descriptor(); }

bool operator==(const DiagonalForm& a, const DiagonalForm& b) {
  return same_field(a.field_, b.field_) && a.entries_ == b.entries_;
}

DiagonalForm orthogonal_sum(const DiagonalForm& a, const DiagonalForm& b) {
  if (!same_field(a.field(), b.field())) throw InvalidArgument("orthogonal sum: field mismatch");
  auto e = a.entries();
  e.insert(e.end(), b.entries().begin(), b.entries().end());
  return DiagonalForm(a.field(), std::move(e));
}

DiagonalForm scale(const DiagonalForm& f, const FieldElem& u) {
  std::vector<FieldElem> e;
  for (const auto& a : f.entries()) e.push_back(a * u);
  return DiagonalForm(f.field(), std::move(e));
}

FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  FieldMatrix c(n, std::vector<FieldElem>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      FieldElem s = FieldElem::zero(a[i][0].field());
      for (std::size_t t = 0; t < k; ++t) s += a[i][t] * b[t][j];
      c[i][j] = s;
    }
  return c;
}

FieldMatrix mat_transpose(const FieldMatrix& a) {
  if (a.empty()) return a;
  FieldMatrix t(a[0].size(), std::vector<FieldElem>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

Diagonalization diagonalize(const FieldMatrix& g) {
  const std::size_t n = g.size();
  if (n == 0) throw InvalidArgument("diagonalize: empty matrix");
  for (const auto& row : g)
    if (row.size() != n) throw InvalidArgument("diagonalize: matrix is not square");
  const FieldPtr F = g[0][0].field();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (g[i][j] != g[j][i]) throw InvalidArgument("diagonalize: matrix is not symmetric");
  FieldMatrix a = g;
  FieldMatrix p(n, std::vector<FieldElem>(n, FieldElem::zero(F)));
  for (std::size_t i = 0; i < n; ++i) p[i][i] = FieldElem::one(F);
  // e_j += c e_i, applied to the basis and to the Gram matrix.
  auto add = [&](std::size_t j, std::size_t i, const FieldElem& c) {
    for (std::size_t r = 0; r < n; ++r) p[r][j] += c * p[r][i];
    for (std::size_t r = 0; r < n; ++r) a[j][r] += c * a[i][r];
    for (std::size_t r = 0; r < n; ++r) a[r][j] += c * a[r][i];
  };
  auto swap = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < n; ++r) std::swap(p[r][i], p[r][j]);
    std::swap(a[i], a[j]);
    for (std::size_t r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i][i].is_zero()) {
      std::size_t j = i + 1;
      while (j < n && a[j][j].is_zero()) ++j;
      if (j < n) {
        swap(i, j);
      } else {
        j = i + 1;
        while (j < n && a[i][j].is_zero()) ++j;
        if (j == n) throw InvalidArgument("diagonalize: degenerate form");
        add(i, j, FieldElem::one(F));
      }
    }
    const FieldElem inv = a[i][i].inverse();
    for (std::size_t j = i + 1; j < n; ++j)
      if (!a[i][j].is_zero()) add(j, i, -(a[i][j] * inv));
  }
  std::vector<FieldElem> d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(a[i][i]);
  Diagonalization out{DiagonalForm(F, d), p};
  const FieldMatrix check = mat_mul(mat_mul(mat_transpose(p), g), p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (check[i][j] != (i == j ? d[i] : FieldElem::zero(F)))
        throw Falsified("diagonalize: congruence certificate failed");
  return out;
}

// --- Hilbert symbols --------------------------------------------------------

namespace {

unsigned valuation(Integer& n, const Integer& p) {
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int legendre(const Integer& a, const Integer& p) { return mpz_legendre(a.get_mpz_t(), p.get_mpz_t()); }

int mod8_eps(const Integer& u) {  // (u - 1)/2 mod 2
  Integer r = u % 4;
  if (r < 0) r += 4;
  return r == 3 ? 1 : 0;
}

int mod8_omega(const Integer& u) {  // (u^2 - 1)/8 mod 2
  Integer r = u % 8;
  if (r < 0) r += 8;
  return (r == 3 || r == 5) ? 1 : 0;
}

}  // namespace

int hilbert_symbol(const Rational& a0, const Rational& b0, const Integer& p) {
  if (a0 == 0 || b0 == 0) throw InvalidArgument("Hilbert symbol of zero");
  Integer a = squarefree_part(a0), b = squarefree_part(b0);
  if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
  const unsigned alpha = valuation(a, p), beta = valuation(b, p);
  if (p == 2) {
    const int e = mod8_eps(a) * mod8_eps(b) + static_cast<int>(alpha) * mod8_omega(b) +
                  static_cast<int>(beta) * mod8_omega(a);
    return e % 2 ? -1 : 1;
  }
  int s = 1;
  const Integer half = (p - 1) / 2;
  if ((alpha * beta) % 2 && half % 2 != 0) s = -s;
  if (beta % 2) s *= legendre(a, p);
  if (alpha % 2) s *= legendre(b, p);
  return s;
}

std::vector<Integer> relevant_places(const DiagonalForm& f) {
  std::set<Integer> primes{Integer(2)};
  for (const auto& a : f.entries())
    for (const auto& [q, e] : factor_integer(squarefree_part(a.base_value()))) primes.insert(q);
  std::vector<Integer> out(primes.begin(), primes.end());
  out.push_back(0);
  return out;
}

int hasse_invariant(const DiagonalForm& f, const Integer& p) {
  int s = 1;
  const auto& e = f.entries();
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j) s *= hilbert_symbol(e[i].base_value(), e[j].base_value(), p);
  return s;
}

namespace {

bool is_rationals(const FieldPtr& f) { return f->kind() == FieldKind::rationals; }
bool is_rational_extension(const FieldPtr& f) { return f->kind() == FieldKind::extension && !f->is_finite(); }

long signature(const DiagonalForm& f) {
  long s = 0;
  for (const auto& a : f.entries()) s += a.base_value() > 0 ? 1 : -1;
  return s;
}

FieldElem canonical_class(const FieldElem& a) {
  return is_rational_extension(a.field()) ? a : square_class(a);
}

}  // namespace

WittInvariants gw_invariants(const DiagonalForm& f) {
  WittInvariants w;
  w.rank = f.rank();
  w.rank_mod2 = static_cast<int>(f.rank() % 2);
  const FieldElem sd = f.signed_determinant();
  w.discriminant = canonical_class(sd);
  w.discriminant_trivial = is_square(sd);
  if (is_rationals(f.field())) {
    w.signature = signature(f);
    for (const auto& p : relevant_places(f)) w.hasse.push_back({p, hasse_invariant(f, p)});
  }
  return w;
}

namespace {

// Does a x^2 + b y^2 = c have a solution over QQ(sqrt d)? Bounded search;
// nullopt when nothing is found.
std::optional<bool> binary_represents(const FieldElem& a, const FieldElem& b, const FieldElem& c) {
  if (is_square(c / a) || is_square(c / b) || is_square(-(a * b))) return true;
  const FieldPtr& F = a.field();
  const long bound = 6;
  for (long w = 1; w <= bound; ++w)
    for (long u = -bound; u <= bound; ++u)
      for (long v = -bound; v <= bound; ++v) {
        const FieldElem x = FieldElem(F, std::vector<Rational>{Rational(u, w), Rational(v, w)});
        const FieldElem rest = c - a * x * x;
        if (rest.is_zero()) continue;
        if (is_square(rest / b)) return true;
      }
  return std::nullopt;
}

// Signs of a under the real embeddings of a quadratic extension of QQ
// (empty when the field is imaginary).
std::vector<int> real_signs(const FieldElem& a) {
  const auto& m = a.field()->minimal_polynomial();  // z^2 + c1 z + c0
  const Rational disc = m[1] * m[1] - 4 * m[0];
  if (disc <= 0) return {};
  const Rational a0 = a.coeffs()[0], a1 = a.coeffs().size() > 1 ? a.coeffs()[1] : Rational(0);
  const Rational p = a0 - a1 * m[1] / 2, q = a1 / 2;
  auto sign = [&](const Rational& qq) {
    const int sp = sgn(p), sq = sgn(qq);
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    return cmp(p * p, qq * qq * disc) > 0 ? sp : sq;
  };
  return {sign(q), sign(Rational(-q))};
}

std::vector<long> real_signatures(const DiagonalForm& f) {
  std::vector<long> sig;
  for (const auto& a : f.entries()) {
    const auto s = real_signs(a);
    if (sig.empty()) sig.assign(s.size(), 0);
    for (std::size_t i = 0; i < s.size(); ++i) sig[i] += s[i];
  }
  return sig;
}

}  // namespace

bool decide_isometry(const DiagonalForm& a, const DiagonalForm& b) {
  if (!same_field(a.field(), b.field())) throw InvalidArgument("decide_isometry: field mismatch");
  if (a.rank() != b.rank()) return false;
  if (a.rank() == 0) return true;
  const FieldPtr& F = a.field();
  const bool same_disc = is_square(a.determinant() / b.determinant());
  if (F->is_finite()) return same_disc;
  if (is_rationals(F)) {
    if (!same_disc || signature(a) != signature(b)) return false;
    std::set<Integer> places;
    for (const auto& p : relevant_places(a)) places.insert(p);
    for (const auto& p : relevant_places(b)) places.insert(p);
    for (const auto& p : places)
      if (hasse_invariant(a, p) != hasse_invariant(b, p)) return false;
    return true;
  }
  if (a.rank() == 1) return same_disc;
  if (!same_disc || real_signatures(a) != real_signatures(b)) return false;
  if (a.rank() >= 3) {
    // Witt cancellation of shared square classes and of hyperbolic planes.
    auto x = a.entries(), y = b.entries();
    auto cancel_entry = [&] {
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
          if (is_square(x[i] / y[j])) {
            x.erase(x.begin() + static_cast<long>(i));
            y.erase(y.begin() + static_cast<long>(j));
            return true;
          }
      return false;
    };
    auto hyperbolic_pair = [](std::vector<FieldElem>& v) {
      for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
          if (is_square(-(v[i] * v[j]))) return std::optional<std::pair<std::size_t, std::size_t>>({i, j});
      return std::optional<std::pair<std::size_t, std::size_t>>();
    };
    while (x.size() > 2) {
      if (cancel_entry()) continue;
      const auto hx = hyperbolic_pair(x), hy = hyperbolic_pair(y);
      if (!hx || !hy) break;
      x.erase(x.begin() + static_cast<long>(hx->second));
      x.erase(x.begin() + static_cast<long>(hx->first));
      y.erase(y.begin() + static_cast<long>(hy->second));
      y.erase(y.begin() + static_cast<long>(hy->first));
    }
    if (x.size() < a.rank()) return decide_isometry(DiagonalForm(F, x), DiagonalForm(F, y));
  }
  if (a.rank() == 2) {
    const auto r = binary_represents(a.entries()[0], a.entries()[1], b.entries()[0]);
    if (r) return *r;
    throw Unsupported("isometry of " + a.to_string() + " and " + b.to_string() +
                      " not decided: no representation found in the search range");
  }
  throw Unsupported("isometry over " + F->descriptor() + " is only decided up to rank 2");
}

DiagonalForm witt_reduce(const DiagonalForm& f) {
  const FieldPtr& F = f.field();
  if (F->is_finite()) {
    const FieldElem d = f.signed_determinant();
    if (f.rank() % 2) return DiagonalForm(F, {square_class(d)});
    if (is_square(d)) return DiagonalForm(F, {});
    return DiagonalForm(F, {FieldElem::one(F), square_class(-d)});
  }
  std::vector<FieldElem> e;
  for (const auto& a : f.entries()) e.push_back(canonical_class(a));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < e.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < e.size() && !changed; ++j)
        if (is_square(-(e[i] / e[j]))) {
          e.erase(e.begin() + static_cast<std::ptrdiff_t>(j));
          e.erase(e.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
        }
  }
  std::sort(e.begin(), e.end(), [](const FieldElem& x, const FieldElem& y) { return canonical_less(x, y); });
  return DiagonalForm(F, std::move(e));
}

bool witt_equal(const DiagonalForm& a, const DiagonalForm& b) {
  const DiagonalForm w = witt_reduce(orthogonal_sum(a, scale(b, -FieldElem::one(b.field()))));
  if (w.rank() == 0) return true;
  if (w.rank() % 2) return false;
  return decide_isometry(w, DiagonalForm::hyperbolic(w.field(), w.rank() / 2));
}

int fundamental_ideal_level(const DiagonalForm& f) {
  if (is_rational_extension(f.field()))
    throw Unsupported("fundamental ideal filtration over " + f.field()->descriptor() + " is not supported");
  if (f.rank() % 2) return 0;
  return is_square(f.signed_determinant()) ? 2 : 1;
}

// --- GW ---------------------------------------------------------------------

GWClass::GWClass(const DiagonalForm& f) : witt_(witt_reduce(f)), rank_(static_cast<long>(f.rank())) {}

GWClass::GWClass(DiagonalForm witt, long rank) : witt_(witt_reduce(witt)), rank_(rank) {
  if (((rank_ - static_cast<long>(witt_.rank())) % 2 + 2) % 2)
    throw Falsified("GW class with rank " + std::to_string(rank_) + " and Witt part " + witt_.brackets() +
                    " violates the parity condition");
}

GWClass GWClass::zero(const FieldPtr& field) { return GWClass(DiagonalForm(field, {}), 0); }

std::pair<DiagonalForm, DiagonalForm> GWClass::representative() const {
  const FieldPtr& F = field();
  const long w = static_cast<long>(witt_.rank());
  if (rank_ >= w)
    return {orthogonal_sum(witt_, DiagonalForm::hyperbolic(F, static_cast<std::size_t>((rank_ - w) / 2))),
            DiagonalForm(F, {})};
  if (rank_ <= -w)
    return {DiagonalForm(F, {}),
            orthogonal_sum(scale(witt_, -FieldElem::one(F)),
                           DiagonalForm::hyperbolic(F, static_cast<std::size_t>((-rank_ - w) / 2)))};
  return {witt_, DiagonalForm::hyperbolic(F, static_cast<std::size_t>((w - rank_) / 2))};
}

GWClass GWClass::operator+(const GWClass& o) const {
  return GWClass(orthogonal_sum(witt_, o.witt_), rank_ + o.rank_);
}

GWClass GWClass::operator-() const { return GWClass(scale(witt_, -FieldElem::one(field())), -rank_); }

GWClass GWClass::times(const FieldElem& u) const { return GWClass(scale(witt_, u), rank_); }

bool GWClass::equivalent(const GWClass& o) const { return rank_ == o.rank_ && witt_equal(witt_, o.witt_); }

std::string GWClass::to_string() const {
  if (is_zero()) return "0";
  const auto [pos, neg] = representative();
  if (neg.rank() == 0) return pos.brackets();
  if (pos.rank() == 0) return "-" + neg.brackets();
  return pos.brackets() + " - " + neg.brackets();
}

}  // namespace cwkit
