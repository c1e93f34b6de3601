#include "cwkit/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "cwkit/error.hpp"

namespace cwkit {

// --- PolyRing --------------------------------------------------------------

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

RingPtr PolyRing::make(FieldPtr field, std::vector<std::string> vars, MonomialOrder order,
                       std::size_t block, std::optional<std::string> homotopy) {
  if (!field) throw InvalidArgument("polynomial ring needs a coefficient field");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!is_identifier(vars[i])) throw InvalidArgument("invalid variable name '" + vars[i] + "'");
    if (field->kind() == FieldKind::extension && vars[i] == field->generator_name())
      throw InvalidArgument("variable '" + vars[i] + "' clashes with the field generator");
    for (std::size_t j = 0; j < i; ++j)
      if (vars[i] == vars[j]) throw InvalidArgument("duplicate variable '" + vars[i] + "'");
  }
  if (order == MonomialOrder::block && block > vars.size())
    throw InvalidArgument("elimination block larger than the variable list");
  if (homotopy && std::find(vars.begin(), vars.end(), *homotopy) == vars.end())
    throw InvalidArgument("homotopy variable '" + *homotopy + "' is not a ring variable");
  auto r = std::shared_ptr<PolyRing>(new PolyRing());
  r->field_ = std::move(field);
  r->vars_ = std::move(vars);
  r->order_ = order;
  r->block_ = order == MonomialOrder::block ? block : 0;
  r->homotopy_ = std::move(homotopy);
  return r;
}

std::optional<std::size_t> PolyRing::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> PolyRing::homotopy_index() const {
  if (!homotopy_) return std::nullopt;
  return index_of(*homotopy_);
}

int PolyRing::compare(const Monomial& a, const Monomial& b) const {
  switch (order_) {
    case MonomialOrder::lex:
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case MonomialOrder::grevlex:
      return grevlex_range(a, b, 0, a.size());
    case MonomialOrder::block: {
      int c = grevlex_range(a, b, 0, block_);
      if (c != 0) return c;
      return grevlex_range(a, b, block_, a.size());
    }
  }
  return 0;
}

RingPtr PolyRing::with_order(MonomialOrder order, std::size_t block) const {
  return make(field_, vars_, order, block, homotopy_);
}

RingPtr PolyRing::with_variables(std::vector<std::string> vars, std::size_t block) const {
  std::optional<std::string> h;
  if (homotopy_ && std::find(vars.begin(), vars.end(), *homotopy_) != vars.end()) h = homotopy_;
  return make(field_, std::move(vars), order_, order_ == MonomialOrder::block ? block : 0, h);
}

RingPtr PolyRing::without(std::string_view var) const {
  std::vector<std::string> vars;
  for (const auto& v : vars_)
    if (v != var) vars.push_back(v);
  if (vars.size() == vars_.size()) throw InvalidArgument("unknown variable '" + std::string(var) + "'");
  std::size_t block = block_;
  if (order_ == MonomialOrder::block) {
    auto idx = *index_of(var);
    if (idx < block_) --block;
  }
  return with_variables(std::move(vars), block);
}

std::string PolyRing::describe() const {
  std::string s = field_->descriptor() + "[";
  for (std::size_t i = 0; i < vars_.size(); ++i) s += (i ? "," : "") + vars_[i];
  s += "] ";
  switch (order_) {
    case MonomialOrder::grevlex: s += "grevlex"; break;
    case MonomialOrder::lex: s += "lex"; break;
    case MonomialOrder::block: s += "block(" + std::to_string(block_) + ")"; break;
  }
  return s;
}

bool same_ring(const PolyRing& a, const PolyRing& b) {
  return same_field(a.field_, b.field_) && a.vars_ == b.vars_ && a.order_ == b.order_ &&
         a.block_ == b.block_;
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return same_ring(*a, *b);
}

// --- Polynomial ------------------------------------------------------------

namespace {

void require_same(const Polynomial& a, const Polynomial& b) {
  if (!a.ring() || !b.ring()) throw InvalidArgument("polynomial without a ring");
  if (!same_ring(a.ring(), b.ring()))
    throw InvalidArgument("ring mismatch: " + a.ring()->describe() + " vs " + b.ring()->describe());
}

}  // namespace

void Polynomial::normalize(std::vector<Term>&& raw) {
  const PolyRing& r = *ring_;
  std::sort(raw.begin(), raw.end(),
            [&](const Term& a, const Term& b) { return r.compare(a.mono, b.mono) > 0; });
  terms_.clear();
  for (auto& t : raw) {
    if (!terms_.empty() && terms_.back().mono == t.mono) {
      terms_.back().coef += t.coef;
    } else {
      if (!terms_.empty() && terms_.back().coef.is_zero()) terms_.pop_back();
      terms_.push_back(std::move(t));
    }
  }
  if (!terms_.empty() && terms_.back().coef.is_zero()) terms_.pop_back();
}

Polynomial Polynomial::constant(const RingPtr& ring, const FieldElem& c) {
  Polynomial p(ring);
  if (!c.is_zero()) p.terms_.push_back({Monomial(ring->nvars(), 0), embed(c, ring->field())});
  return p;
}

Polynomial Polynomial::constant(const RingPtr& ring, long c) {
  return constant(ring, FieldElem(ring->field(), c));
}

Polynomial Polynomial::variable(const RingPtr& ring, std::size_t i) {
  if (i >= ring->nvars()) throw InvalidArgument("variable index out of range");
  Monomial m(ring->nvars(), 0);
  m[i] = 1;
  return monomial(ring, std::move(m), FieldElem::one(ring->field()));
}

Polynomial Polynomial::variable(const RingPtr& ring, std::string_view name) {
  auto i = ring->index_of(name);
  if (!i) throw InvalidArgument("unknown variable '" + std::string(name) + "'");
  return variable(ring, *i);
}

Polynomial Polynomial::monomial(const RingPtr& ring, Monomial m, const FieldElem& c) {
  Polynomial p(ring);
  if (m.size() != ring->nvars()) throw InvalidArgument("monomial arity mismatch");
  if (!c.is_zero()) p.terms_.push_back({std::move(m), embed(c, ring->field())});
  return p;
}

Polynomial Polynomial::from_terms(const RingPtr& ring, std::vector<Term> terms) {
  Polynomial p(ring);
  for (auto& t : terms) {
    if (t.mono.size() != ring->nvars()) throw InvalidArgument("monomial arity mismatch");
    t.coef = embed(t.coef, ring->field());
  }
  p.normalize(std::move(terms));
  return p;
}

Polynomial Polynomial::tail() const {
  Polynomial r(ring_);
  if (terms_.size() > 1) r.terms_.assign(terms_.begin() + 1, terms_.end());
  return r;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& m = terms_.front().mono;
  return std::all_of(m.begin(), m.end(), [](std::uint32_t e) { return e == 0; });
}

FieldElem Polynomial::constant_coeff() const {
  if (!terms_.empty()) {
    const auto& m = terms_.back().mono;
    if (std::all_of(m.begin(), m.end(), [](std::uint32_t e) { return e == 0; }))
      return terms_.back().coef;
  }
  return FieldElem::zero(ring_->field());
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& t : terms_)
    d = std::max(d, static_cast<int>(std::accumulate(t.mono.begin(), t.mono.end(), 0u)));
  return d;
}

std::uint32_t Polynomial::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[var]);
  return d;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_same(*this, o);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  const PolyRing& r = *ring_;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size()) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size()) {
      out.push_back(o.terms_[j++]);
    } else {
      int c = r.compare(terms_[i].mono, o.terms_[j].mono);
      if (c > 0) {
        out.push_back(std::move(terms_[i++]));
      } else if (c < 0) {
        out.push_back(o.terms_[j++]);
      } else {
        FieldElem s = terms_[i].coef + o.terms_[j].coef;
        if (!s.is_zero()) out.push_back({std::move(terms_[i].mono), std::move(s)});
        ++i;
        ++j;
      }
    }
  }
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same(a, b);
  Polynomial r(a.ring_);
  if (a.is_zero() || b.is_zero()) return r;
  std::vector<Term> raw;
  raw.reserve(a.terms_.size() * b.terms_.size());
  const std::size_t n = a.ring_->nvars();
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) {
      Monomial m(n);
      for (std::size_t k = 0; k < n; ++k) m[k] = s.mono[k] + t.mono[k];
      raw.push_back({std::move(m), s.coef * t.coef});
    }
  r.normalize(std::move(raw));
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(a.ring_, b.ring_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coef != b.terms_[i].coef) return false;
  return true;
}

Polynomial Polynomial::scaled(const FieldElem& c) const {
  Polynomial r(ring_);
  if (c.is_zero()) return r;
  const FieldElem cc = embed(c, ring_->field());
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coef *= cc;
  return r;
}

Polynomial Polynomial::times_term(const Monomial& m, const FieldElem& c) const {
  Polynomial r(ring_);
  if (c.is_zero()) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) {
    for (std::size_t k = 0; k < m.size(); ++k) t.mono[k] += m[k];
    t.coef *= c;
  }
  return r;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(leading_coeff().inverse());
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

FieldElem Polynomial::evaluate(std::span<const FieldElem> point) const {
  if (point.size() != ring_->nvars()) throw InvalidArgument("evaluation point has wrong arity");
  if (point.empty()) return constant_coeff();
  const FieldPtr& target = point[0].field();
  FieldElem acc = FieldElem::zero(target);
  for (const auto& t : terms_) {
    FieldElem v = embed(t.coef, target);
    for (std::size_t k = 0; k < t.mono.size(); ++k)
      if (t.mono[k]) v *= point[k].pow(Integer(static_cast<unsigned long>(t.mono[k])));
    acc += v;
  }
  return acc;
}

Polynomial Polynomial::substitute(std::size_t var, const Polynomial& value) const {
  require_same(*this, value);
  Polynomial out(ring_);
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    const std::uint32_t e = m[var];
    m[var] = 0;
    out += monomial(ring_, std::move(m), t.coef) * value.pow(e);
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  const auto& vars = ring_->variables();
  const bool ext = ring_->field()->kind() == FieldKind::extension;
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    std::string mono;
    for (std::size_t k = 0; k < t.mono.size(); ++k) {
      if (!t.mono[k]) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[k];
      if (t.mono[k] > 1) mono += "^" + std::to_string(t.mono[k]);
    }
    std::string coef;
    bool negative = false;
    if (ext && !t.coef.in_prime_field()) {
      coef = "(" + t.coef.to_string() + ")";
    } else {
      Rational c = t.coef.coeffs()[0];
      if (c < 0) {
        negative = true;
        c = -c;
      }
      coef = c.get_str();
    }
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (mono.empty())
      out += coef;
    else if (coef == "1")
      out += mono;
    else
      out += coef + "*" + mono;
  }
  return out;
}

Polynomial convert(const Polynomial& f, const RingPtr& target) {
  if (!same_field(f.ring()->field(), target->field()))
    throw InvalidArgument("convert: coefficient fields differ");
  const auto& src = *f.ring();
  std::vector<std::optional<std::size_t>> map(src.nvars());
  for (std::size_t i = 0; i < src.nvars(); ++i) map[i] = target->index_of(src.variable(i));
  std::vector<Term> raw;
  for (const auto& t : f.terms()) {
    Monomial m(target->nvars(), 0);
    for (std::size_t i = 0; i < src.nvars(); ++i) {
      if (!t.mono[i]) continue;
      if (!map[i])
        throw InvalidArgument("variable '" + src.variable(i) + "' does not exist in " + target->describe());
      m[*map[i]] = t.mono[i];
    }
    raw.push_back({std::move(m), t.coef});
  }
  return Polynomial::from_terms(target, std::move(raw));
}

Polynomial substitute_value(const Polynomial& f, std::string_view var, const FieldElem& value) {
  auto idx = f.ring()->index_of(var);
  if (!idx) throw InvalidArgument("unknown variable '" + std::string(var) + "'");
  const RingPtr& ring = f.ring();
  Polynomial c = Polynomial::constant(ring, value);
  return convert(f.substitute(*idx, c), ring->without(var));
}

Polynomial exact_divide(const Polynomial& f, const Polynomial& g) {
  require_same(f, g);
  if (g.is_zero()) throw InvalidArgument("exact_divide: division by zero");
  Polynomial q(f.ring()), r = f;
  const Monomial& lm = g.leading_monomial();
  const FieldElem lc_inv = g.leading_coeff().inverse();
  while (!r.is_zero()) {
    const Term& lt = r.leading_term();
    Monomial m(lm.size());
    for (std::size_t k = 0; k < lm.size(); ++k) {
      if (lt.mono[k] < lm[k])
        throw InvalidArgument("exact_divide: " + g.to_string() + " does not divide " + f.to_string());
      m[k] = lt.mono[k] - lm[k];
    }
    FieldElem c = lt.coef * lc_inv;
    q += Polynomial::monomial(f.ring(), m, c);
    r -= g.times_term(m, c);
  }
  return q;
}

// --- parsing ---------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(const RingPtr& ring, std::string_view text) : ring_(ring), s_(text) {}

  Polynomial parse() {
    skip();
    if (pos_ >= s_.size()) fail("empty expression");
    Polynomial p = expr();
    skip();
    if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InvalidArgument("parse error at column " + std::to_string(pos_ + 1) + " in '" + std::string(s_) +
                          "': " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc(ring_);
    bool negate = false;
    if (eat('-'))
      negate = true;
    else
      eat('+');
    Polynomial t = term();
    acc += negate ? -t : t;
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = power();
    for (;;) {
      if (eat('*')) {
        acc = acc * power();
      } else if (eat('/')) {
        const std::size_t at = pos_;
        Polynomial d = power();
        if (!d.is_constant() || d.is_zero()) {
          pos_ = at;
          fail("division only by a nonzero constant");
        }
        acc = acc.scaled(d.constant_coeff().inverse());
      } else {
        return acc;
      }
    }
  }

  Polynomial power() {
    Polynomial base = atom();
    if (eat('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      const unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (e > 4096) fail("exponent too large");
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Integer v(std::string(s_.substr(start, pos_ - start)));
      return Polynomial::constant(ring_, FieldElem(ring_->field()->prime_field(), Rational(v)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      if (auto i = ring_->index_of(name)) return Polynomial::variable(ring_, *i);
      const auto& f = ring_->field();
      if (f->kind() == FieldKind::extension && name == f->generator_name())
        return Polynomial::constant(ring_, FieldElem::generator(f));
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    fail(std::string("unexpected '") + c + "'");
  }

  const RingPtr& ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const RingPtr& ring, std::string_view text) {
  return Parser(ring, text).parse();
}

FieldElem parse_field_element(const FieldPtr& field, std::string_view text) {
  static thread_local std::vector<std::pair<std::string, RingPtr>> cache;
  RingPtr ring;
  for (const auto& [d, r] : cache)
    if (d == field->descriptor()) ring = r;
  if (!ring) {
    ring = PolyRing::make(field, {});
    cache.emplace_back(field->descriptor(), ring);
  }
  Polynomial p = parse_polynomial(ring, text);
  return p.is_zero() ? FieldElem::zero(field) : p.constant_coeff();
}

FieldPtr parse_field(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto fail = [&](const std::string& why) -> FieldPtr {
    throw InvalidArgument("invalid field descriptor '" + std::string(text) + "': " + why);
  };
  FieldPtr base;
  std::size_t pos = 0;
  if (s.rfind("QQ", 0) == 0) {
    base = Field::rationals();
    pos = 2;
  } else if (s.rfind("GF(", 0) == 0) {
    const auto close = s.find(')');
    if (close == std::string::npos) return fail("missing ')'");
    const std::string num = s.substr(3, close - 3);
    if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      return fail("characteristic must be a decimal integer");
    base = Field::prime(std::stoull(num));
    pos = close + 1;
  } else {
    return fail("expected QQ or GF(p)");
  }
  if (pos == s.size()) return base;
  if (s[pos] != '[') return fail("unexpected trailing text");
  const auto close = s.find(']', pos);
  if (close == std::string::npos) return fail("missing ']'");
  const std::string gen = s.substr(pos + 1, close - pos - 1);
  if (s.compare(close + 1, 2, "/(") != 0 || s.back() != ')') return fail("expected '/(minimal polynomial)'");
  const std::string mp = s.substr(close + 3, s.size() - close - 4);
  RingPtr uni = PolyRing::make(base, {gen});
  Polynomial m = parse_polynomial(uni, mp);
  std::vector<Rational> coeffs(m.is_zero() ? 0 : m.degree_in(0) + 1, Rational(0));
  for (const auto& t : m.terms()) coeffs[t.mono[0]] = t.coef.coeffs()[0];
  return Field::extension(base, std::move(coeffs), gen);
}

}  // namespace cwkit
