#ifndef CWKIT_SRC_RAW_POLY_HPP
#define CWKIT_SRC_RAW_POLY_HPP

// Dense univariate arithmetic over QQ (p == 0) or GF(p), coefficients
// low-to-high. Internal to the scalars module.

#include <string>
#include <vector>

#include "cwkit/error.hpp"
#include "cwkit/scalars.hpp"

namespace cwkit {

using RawPoly = std::vector<Rational>;

struct RawArith {
  std::uint64_t p = 0;

  Rational norm(const Rational& a) const {
    if (p == 0) {
      Rational r = a;
      r.canonicalize();
      return r;
    }
    Integer pz(static_cast<unsigned long>(p));
    Integer den = a.get_den();
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()) == 0)
      throw InvalidArgument("denominator " + den.get_str() + " is not invertible mod " + pz.get_str());
    Integer r = a.get_num() * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), pz.get_mpz_t());
    return Rational(r);
  }
  Rational add(const Rational& a, const Rational& b) const { return p ? norm(a + b) : Rational(a + b); }
  Rational sub(const Rational& a, const Rational& b) const { return p ? norm(a - b) : Rational(a - b); }
  Rational mul(const Rational& a, const Rational& b) const { return p ? norm(a * b) : Rational(a * b); }
  Rational neg(const Rational& a) const { return p ? norm(-a) : Rational(-a); }
  Rational inv(const Rational& a) const {
    if (a == 0) throw InvalidArgument("division by zero");
    if (p == 0) return Rational(1) / a;
    Integer pz(static_cast<unsigned long>(p)), r;
    Integer n = a.get_num();
    mpz_invert(r.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
    return Rational(r);
  }

  void trim(RawPoly& a) const {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  RawPoly monic(RawPoly a) const {
    trim(a);
    if (a.empty()) return a;
    const Rational li = inv(a.back());
    for (auto& c : a) c = mul(c, li);
    return a;
  }
  RawPoly add(const RawPoly& a, const RawPoly& b) const {
    RawPoly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = add(r[i], b[i]);
    trim(r);
    return r;
  }
  RawPoly sub(const RawPoly& a, const RawPoly& b) const {
    RawPoly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i]);
    trim(r);
    return r;
  }
  RawPoly mul(const RawPoly& a, const RawPoly& b) const {
    if (a.empty() || b.empty()) return {};
    RawPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    if (p)
      for (auto& c : r) c = norm(c);
    trim(r);
    return r;
  }
  // Quotient and remainder; b nonzero.
  void divmod(const RawPoly& a, const RawPoly& b, RawPoly& q, RawPoly& r) const {
    if (b.empty()) throw InvalidArgument("polynomial division by zero");
    r = a;
    trim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
    const Rational li = inv(b.back());
    while (r.size() >= b.size()) {
      const std::size_t shift = r.size() - b.size();
      const Rational c = mul(r.back(), li);
      q[shift] = c;
      for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] = sub(r[shift + j], mul(c, b[j]));
      trim(r);
    }
    trim(q);
  }
  RawPoly rem(const RawPoly& a, const RawPoly& b) const {
    RawPoly q, r;
    divmod(a, b, q, r);
    return r;
  }
  RawPoly quo(const RawPoly& a, const RawPoly& b) const {
    RawPoly q, r;
    divmod(a, b, q, r);
    return q;
  }
  RawPoly gcd(RawPoly a, RawPoly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      RawPoly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  // s with s*a == 1 mod m (gcd(a, m) == 1).
  RawPoly inverse_mod(const RawPoly& a, const RawPoly& m) const {
    RawPoly r0 = m, r1 = a, s0, s1{Rational(1)};
    trim(r1);
    while (!r1.empty()) {
      RawPoly q, r;
      divmod(r0, r1, q, r);
      RawPoly s = sub(s0, mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    if (r0.size() != 1) throw InvalidArgument("element is not invertible modulo the minimal polynomial");
    const Rational c = inv(r0[0]);
    for (auto& x : s0) x = mul(x, c);
    return rem(s0, m);
  }
  RawPoly derivative(const RawPoly& a) const {
    RawPoly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(mul(a[i], Rational(static_cast<long>(i))));
    trim(r);
    return r;
  }
  RawPoly pow_mod(RawPoly base, Integer e, const RawPoly& m) const {
    RawPoly result{Rational(1)};
    base = rem(base, m);
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) result = rem(mul(result, base), m);
      base = rem(mul(base, base), m);
      e >>= 1;
    }
    return rem(result, m);
  }
  Rational eval(const RawPoly& a, const Rational& x) const {
    Rational acc = 0;
    for (std::size_t i = a.size(); i-- > 0;) acc = add(mul(acc, x), a[i]);
    return acc;
  }
};

// High-to-low text, e.g. "z^2+2" (compact) or "z^2 + 2" (spaced).
inline std::string raw_to_string(const RawPoly& a, const std::string& var, bool spaced) {
  if (a.empty()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] == 0) continue;
    Rational c = a[i];
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += spaced ? (negative ? " - " : " + ") : (negative ? "-" : "+");
    }
    first = false;
    std::string mono;
    if (i >= 1) mono = var;
    if (i >= 2) mono += "^" + std::to_string(i);
    if (mono.empty())
      out += c.get_str();
    else if (c == 1)
      out += mono;
    else
      out += c.get_str() + "*" + mono;
  }
  return out;
}

}  // namespace cwkit

#endif  // CWKIT_SRC_RAW_POLY_HPP
