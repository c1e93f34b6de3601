#include "cwkit/groebner.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "cwkit/error.hpp"

namespace cwkit {

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial m(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) m[k] = std::max(a[k], b[k]);
  return m;
}

namespace {

unsigned degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0u); }

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] && b[k]) return false;
  return true;
}

Monomial quotient(const Monomial& a, const Monomial& b) {
  Monomial m(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) m[k] = a[k] - b[k];
  return m;
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  unsigned sugar;
};

// Buchberger state. With `track`, every basis element carries its expression
// in terms of the input generators.
class Engine {
 public:
  Engine(RingPtr ring, bool track, std::size_t ngens) : ring_(std::move(ring)), track_(track), ngens_(ngens) {}

  void add_input(const Polynomial& f, std::size_t index) {
    if (f.is_zero()) return;
    std::vector<Polynomial> rep;
    if (track_) {
      rep.assign(ngens_, Polynomial(ring_));
      rep[index] = Polynomial::constant(ring_, f.leading_coeff().inverse());
    }
    insert(f.monic(), static_cast<unsigned>(f.total_degree()), std::move(rep));
  }

  void run() {
    while (!pairs_.empty()) {
      auto best = pairs_.begin();
      for (auto it = pairs_.begin() + 1; it != pairs_.end(); ++it) {
        if (it->sugar != best->sugar) {
          if (it->sugar < best->sugar) best = it;
          continue;
        }
        const int c = ring_->compare(it->lcm, best->lcm);
        if (c < 0 || (c == 0 && std::tie(it->i, it->j) < std::tie(best->i, best->j))) best = it;
      }
      Pair p = *best;
      pairs_.erase(best);

      const Polynomial& f = polys_[p.i];
      const Polynomial& g = polys_[p.j];
      const Monomial mf = quotient(p.lcm, f.leading_monomial());
      const Monomial mg = quotient(p.lcm, g.leading_monomial());
      const FieldElem one = FieldElem::one(ring_->field());
      Polynomial s = f.times_term(mf, one) - g.times_term(mg, one);
      std::vector<Polynomial> rep;
      if (track_) {
        rep.resize(ngens_, Polynomial(ring_));
        for (std::size_t k = 0; k < ngens_; ++k)
          rep[k] = reps_[p.i][k].times_term(mf, one) - reps_[p.j][k].times_term(mg, one);
      }
      Polynomial h = reduce(std::move(s), track_ ? &rep : nullptr);
      if (h.is_zero()) continue;
      if (track_) {
        const FieldElem li = h.leading_coeff().inverse();
        for (auto& r : rep) r = r.scaled(li);
      }
      insert(h.monic(), p.sugar, std::move(rep));
    }
  }

  // Full reduction against the active basis.
  Polynomial reduce(Polynomial p, std::vector<Polynomial>* rep) const {
    std::vector<Term> rem;
    while (!p.is_zero()) {
      const Term lt = p.leading_term();
      const Polynomial* reducer = nullptr;
      std::size_t k = 0;
      for (std::size_t idx : active_) {
        if (divides(polys_[idx].leading_monomial(), lt.mono)) {
          reducer = &polys_[idx];
          k = idx;
          break;
        }
      }
      if (reducer) {
        const Monomial m = quotient(lt.mono, reducer->leading_monomial());
        p -= reducer->times_term(m, lt.coef);
        if (rep)
          for (std::size_t r = 0; r < ngens_; ++r) (*rep)[r] -= reps_[k][r].times_term(m, lt.coef);
      } else {
        rem.push_back(lt);
        p = p.tail();
      }
    }
    return Polynomial::from_terms(ring_, std::move(rem));
  }

  std::vector<Polynomial> active_polys() const {
    std::vector<Polynomial> out;
    for (std::size_t idx : active_) out.push_back(polys_[idx]);
    return out;
  }
  std::vector<std::vector<Polynomial>> active_reps() const {
    std::vector<std::vector<Polynomial>> out;
    for (std::size_t idx : active_) out.push_back(reps_[idx]);
    return out;
  }

 private:
  void insert(Polynomial h, unsigned sugar, std::vector<Polynomial> rep) {
    const std::size_t hi = polys_.size();
    polys_.push_back(std::move(h));
    sugars_.push_back(sugar);
    reps_.push_back(std::move(rep));
    update(hi);
  }

  unsigned pair_sugar(std::size_t i, std::size_t j, const Monomial& l) const {
    const unsigned dl = degree(l);
    const unsigned si = sugars_[i] + dl - degree(polys_[i].leading_monomial());
    const unsigned sj = sugars_[j] + dl - degree(polys_[j].leading_monomial());
    return std::max(si, sj);
  }

  // Gebauer-Moeller installation of the new element h.
  void update(std::size_t h) {
    const Monomial& lh = polys_[h].leading_monomial();
    std::vector<Pair> c;
    for (std::size_t g : active_) {
      Monomial l = lcm(lh, polys_[g].leading_monomial());
      c.push_back({g, h, l, 0});
    }
    std::vector<Pair> d;
    for (std::size_t a = 0; a < c.size(); ++a) {
      const Monomial& lg = polys_[c[a].i].leading_monomial();
      bool keep = coprime(lh, lg);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < c.size() && keep; ++b)
          if (divides(c[b].lcm, c[a].lcm)) keep = false;
        for (std::size_t b = 0; b < d.size() && keep; ++b)
          if (divides(d[b].lcm, c[a].lcm)) keep = false;
      }
      if (keep) d.push_back(c[a]);
    }
    std::vector<Pair> next;
    for (auto& p : pairs_) {
      const Monomial& l = p.lcm;
      const bool drop = divides(lh, l) && lcm(polys_[p.i].leading_monomial(), lh) != l &&
                        lcm(lh, polys_[p.j].leading_monomial()) != l;
      if (!drop) next.push_back(std::move(p));
    }
    for (auto& p : d) {
      if (coprime(lh, polys_[p.i].leading_monomial())) continue;
      p.sugar = pair_sugar(p.i, p.j, p.lcm);
      next.push_back(std::move(p));
    }
    pairs_ = std::move(next);
    std::vector<std::size_t> act;
    for (std::size_t g : active_)
      if (!divides(lh, polys_[g].leading_monomial())) act.push_back(g);
    act.push_back(h);
    active_ = std::move(act);
  }

  RingPtr ring_;
  bool track_;
  std::size_t ngens_;
  std::vector<Polynomial> polys_;
  std::vector<unsigned> sugars_;
  std::vector<std::vector<Polynomial>> reps_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
};

RingPtr common_ring(std::span<const Polynomial> ps) {
  RingPtr ring;
  for (const auto& p : ps) {
    if (!p.ring()) throw InvalidArgument("polynomial without a ring");
    if (!ring)
      ring = p.ring();
    else if (!same_ring(ring, p.ring()))
      throw InvalidArgument("generators live in different rings");
  }
  return ring;
}

}  // namespace

std::vector<Polynomial> buchberger(std::span<const Polynomial> gens) {
  RingPtr ring = common_ring(gens);
  if (!ring) return {};
  Engine e(ring, false, gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) e.add_input(gens[i], i);
  e.run();
  std::vector<Polynomial> g = e.active_polys();
  for (const auto& p : g)
    if (p.is_constant()) return {Polynomial::constant(ring, 1)};
  // Minimalize, then interreduce.
  std::vector<Polynomial> minimal;
  for (std::size_t a = 0; a < g.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < g.size() && !redundant; ++b) {
      if (a == b) continue;
      if (divides(g[b].leading_monomial(), g[a].leading_monomial()) &&
          (g[b].leading_monomial() != g[a].leading_monomial() || b < a))
        redundant = true;
    }
    if (!redundant) minimal.push_back(g[a]);
  }
  std::vector<Polynomial> reduced;
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    std::vector<Polynomial> others;
    for (std::size_t b = 0; b < minimal.size(); ++b)
      if (a != b) others.push_back(minimal[b]);
    const Polynomial& p = minimal[a];
    Polynomial tail_nf = normal_form(p.tail(), others);
    reduced.push_back((Polynomial::monomial(ring, p.leading_monomial(), p.leading_coeff()) + tail_nf).monic());
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ring->compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  return reduced;
}

DivisionResult divide(const Polynomial& f, std::span<const Polynomial> divisors) {
  for (const auto& g : divisors)
    if (g.is_zero()) throw InvalidArgument("division by the zero polynomial");
  DivisionResult out;
  out.quotients.assign(divisors.size(), Polynomial(f.ring()));
  std::vector<Term> rem;
  Polynomial p = f;
  while (!p.is_zero()) {
    const Term lt = p.leading_term();
    bool reduced = false;
    for (std::size_t k = 0; k < divisors.size(); ++k) {
      const Polynomial& g = divisors[k];
      if (!divides(g.leading_monomial(), lt.mono)) continue;
      const Monomial m = quotient(lt.mono, g.leading_monomial());
      const FieldElem c = lt.coef / g.leading_coeff();
      out.quotients[k] += Polynomial::monomial(f.ring(), m, c);
      p -= g.times_term(m, c);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.push_back(lt);
      p = p.tail();
    }
  }
  out.remainder = Polynomial::from_terms(f.ring(), std::move(rem));
  return out;
}

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis) {
  return divide(f, basis).remainder;
}

std::optional<std::vector<Polynomial>> lift(const Polynomial& f, std::span<const Polynomial> gens) {
  const RingPtr& ring = f.ring();
  std::vector<Polynomial> zero(gens.size(), Polynomial(ring));
  if (f.is_zero()) return zero;
  if (!gens.empty() && !same_ring(common_ring(gens), ring))
    throw InvalidArgument("lift: ring mismatch");
  Engine e(ring, true, gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) e.add_input(gens[i], i);
  e.run();
  const auto basis = e.active_polys();
  const auto reps = e.active_reps();
  DivisionResult d = divide(f, basis);
  if (!d.remainder.is_zero()) return std::nullopt;
  std::vector<Polynomial> c = zero;
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (std::size_t i = 0; i < gens.size(); ++i) c[i] += d.quotients[k] * reps[k][i];
  Polynomial check(ring);
  for (std::size_t i = 0; i < gens.size(); ++i) check += c[i] * gens[i];
  if (check != f) throw Falsified("lift: cofactor certificate failed for " + f.to_string());
  return c;
}

// --- Ideal -----------------------------------------------------------------

struct Ideal::Cache {
  std::once_flag once;
  std::vector<Polynomial> gb;
};

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> gens)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (auto& g : gens) {
    if (!same_ring(g.ring(), ring_))
      throw InvalidArgument("generator " + g.to_string() + " is not in " + ring_->describe());
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

Ideal Ideal::parse(const RingPtr& ring, const std::vector<std::string>& gens) {
  std::vector<Polynomial> ps;
  for (const auto& s : gens) ps.push_back(parse_polynomial(ring, s));
  return Ideal(ring, std::move(ps));
}

const std::vector<Polynomial>& Ideal::groebner() const {
  if (!cache_) throw InvalidArgument("empty Ideal handle");
  std::call_once(cache_->once, [this] { cache_->gb = buchberger(gens_); });
  return cache_->gb;
}

bool Ideal::is_unit() const {
  const auto& g = groebner();
  return g.size() == 1 && g[0].is_constant();
}

bool Ideal::contains(const Polynomial& f) const { return normal_form(f).is_zero(); }

bool Ideal::contains(const Ideal& other) const {
  return std::all_of(other.gens_.begin(), other.gens_.end(),
                     [&](const Polynomial& g) { return contains(convert(g, ring_)); });
}

Polynomial Ideal::normal_form(const Polynomial& f) const {
  return cwkit::normal_form(convert(f, ring_), groebner());
}

bool operator==(const Ideal& a, const Ideal& b) {
  if (!same_ring(a.ring_, b.ring_)) return false;
  return a.groebner() == b.groebner();
}

Ideal Ideal::operator+(const Ideal& o) const {
  std::vector<Polynomial> g = gens_;
  for (const auto& p : o.gens_) g.push_back(convert(p, ring_));
  return Ideal(ring_, std::move(g));
}

Ideal Ideal::operator*(const Ideal& o) const {
  std::vector<Polynomial> g;
  for (const auto& a : gens_)
    for (const auto& b : o.gens_) g.push_back(a * convert(b, ring_));
  return Ideal(ring_, std::move(g));
}

namespace {

std::string fresh_name(const PolyRing& r, const std::string& stem) {
  std::string name = stem;
  while (r.index_of(name)) name += "_";
  return name;
}

}  // namespace

Ideal Ideal::intersect(const Ideal& o) const {
  const std::string t = fresh_name(*ring_, "_cwt");
  std::vector<std::string> vars{t};
  for (const auto& v : ring_->variables()) vars.push_back(v);
  RingPtr big = PolyRing::make(ring_->field(), vars, MonomialOrder::block, 1);
  const Polynomial tp = Polynomial::variable(big, 0);
  const Polynomial one_minus_t = Polynomial::constant(big, 1) - tp;
  std::vector<Polynomial> g;
  for (const auto& p : gens_) g.push_back(tp * convert(p, big));
  for (const auto& p : o.gens_) g.push_back(one_minus_t * convert(p, big));
  std::vector<Polynomial> out;
  for (const auto& p : buchberger(g))
    if (p.degree_in(0) == 0) out.push_back(convert(p, ring_));
  return Ideal(ring_, std::move(out));
}

Ideal Ideal::colon(const Polynomial& f) const {
  if (f.is_zero()) throw InvalidArgument("colon by the zero polynomial");
  const Polynomial ff = convert(f, ring_);
  Ideal meet = intersect(Ideal(ring_, {ff}));
  std::vector<Polynomial> out;
  for (const auto& g : meet.groebner()) out.push_back(exact_divide(g, ff));
  return Ideal(ring_, std::move(out));
}

Ideal Ideal::eliminate(const std::vector<std::string>& vars) const {
  std::vector<std::string> order_vars, rest;
  for (const auto& v : vars) {
    if (!ring_->index_of(v)) throw InvalidArgument("eliminate: unknown variable '" + v + "'");
    order_vars.push_back(v);
  }
  for (const auto& v : ring_->variables())
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) rest.push_back(v);
  std::vector<std::string> all = order_vars;
  all.insert(all.end(), rest.begin(), rest.end());
  RingPtr big = PolyRing::make(ring_->field(), all, MonomialOrder::block, order_vars.size());
  std::vector<Polynomial> g;
  for (const auto& p : gens_) g.push_back(convert(p, big));
  const MonomialOrder kind = ring_->order() == MonomialOrder::block ? MonomialOrder::grevlex : ring_->order();
  RingPtr small = PolyRing::make(ring_->field(), rest, kind);
  std::vector<Polynomial> out;
  for (const auto& p : buchberger(g)) {
    bool free = true;
    for (std::size_t k = 0; k < order_vars.size(); ++k)
      if (p.degree_in(k)) free = false;
    if (free) out.push_back(convert(p, small));
  }
  return Ideal(small, std::move(out));
}

Ideal Ideal::in_ring(const RingPtr& target) const {
  std::vector<Polynomial> g;
  for (const auto& p : gens_) g.push_back(convert(p, target));
  return Ideal(target, std::move(g));
}

Ideal Ideal::substitute(std::string_view var, const FieldElem& value) const {
  RingPtr small = ring_->without(var);
  std::vector<Polynomial> g;
  for (const auto& p : gens_) g.push_back(substitute_value(p, var, value));
  return Ideal(small, std::move(g));
}

int Ideal::dimension() const {
  const auto& g = groebner();
  if (is_unit()) return -1;
  const std::size_t n = ring_->nvars();
  int best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const int size = std::popcount(mask);
    if (size <= best) continue;
    bool independent = true;
    for (const auto& p : g) {
      const Monomial& lm = p.leading_monomial();
      bool inside = true;
      for (std::size_t k = 0; k < n && inside; ++k)
        if (lm[k] && !(mask >> k & 1u)) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

std::size_t Ideal::height() const {
  const int d = dimension();
  if (d < 0) throw InvalidArgument("height of the unit ideal is undefined");
  return ring_->nvars() - static_cast<std::size_t>(d);
}

bool Ideal::is_zero_dimensional() const { return dimension() == 0; }

std::vector<Monomial> Ideal::standard_monomials() const {
  if (!is_zero_dimensional()) throw InvalidArgument("standard_monomials: ideal is not zero-dimensional");
  const auto& g = groebner();
  const std::size_t n = ring_->nvars();
  std::vector<std::uint32_t> bound(n, 0);
  for (const auto& p : g) {
    const Monomial& lm = p.leading_monomial();
    std::size_t support = 0, var = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (lm[k]) {
        ++support;
        var = k;
      }
    if (support == 1 && (bound[var] == 0 || lm[var] < bound[var])) bound[var] = lm[var];
  }
  std::vector<Monomial> out;
  Monomial m(n, 0);
  for (;;) {
    bool standard = true;
    for (const auto& p : g)
      if (divides(p.leading_monomial(), m)) {
        standard = false;
        break;
      }
    if (standard) out.push_back(m);
    std::size_t k = 0;
    while (k < n) {
      if (++m[k] < bound[k]) break;
      m[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return ring_->compare(a, b) < 0; });
  return out;
}

std::size_t Ideal::vector_space_dimension() const { return standard_monomials().size(); }

std::string Ideal::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + gens_[i].to_string();
  return s + ")";
}

std::vector<std::string> Ideal::groebner_strings() const {
  std::vector<std::string> out;
  for (const auto& p : groebner()) out.push_back(p.to_string());
  return out;
}

RegularSequenceCertificate is_regular_sequence(std::span<const Polynomial> fs) {
  RegularSequenceCertificate cert;
  if (fs.empty()) throw InvalidArgument("is_regular_sequence: empty sequence");
  const RingPtr ring = common_ring(fs);
  Ideal all(ring, std::vector<Polynomial>(fs.begin(), fs.end()));
  cert.proper = !all.is_unit();
  if (!cert.proper) {
    cert.reason = "the sequence generates the unit ideal";
    return cert;
  }
  cert.regular = true;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    ColonStep step{i, {}, true};
    Ideal prefix(ring, std::vector<Polynomial>(fs.begin(), fs.begin() + static_cast<std::ptrdiff_t>(i)));
    if (fs[i].is_zero()) {
      step.colon = {"1"};
      step.equal = false;
    } else if (i == 0) {
      step.equal = true;
    } else {
      Ideal c = prefix.colon(fs[i]);
      step.colon = c.groebner_strings();
      step.equal = c == prefix;
    }
    if (!step.equal && cert.regular) {
      cert.regular = false;
      cert.reason = "element " + std::to_string(i + 1) + " (" + fs[i].to_string() +
                    ") is a zero divisor modulo its predecessors";
    }
    cert.steps.push_back(std::move(step));
  }
  return cert;
}

}  // namespace cwkit
