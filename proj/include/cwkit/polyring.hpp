#ifndef CWKIT_POLYRING_HPP
#define CWKIT_POLYRING_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cwkit/scalars.hpp"

namespace cwkit {

/// Exponent vector, one entry per ring variable.
using Monomial = std::vector<std::uint32_t>;

enum class MonomialOrder {
  grevlex,
  lex,
  /// grevlex on the first `block` variables, ties broken by grevlex on the
  /// rest. Eliminates the leading block.
  block,
};

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

class PolyRing {
 public:
  /// Variable names must be distinct identifiers. `homotopy`, when given,
  /// names the variable playing the role of T.
  static RingPtr make(FieldPtr field, std::vector<std::string> vars,
                      MonomialOrder order = MonomialOrder::grevlex, std::size_t block = 0,
                      std::optional<std::string> homotopy = std::nullopt);

  const FieldPtr& field() const { return field_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& variables() const { return vars_; }
  const std::string& variable(std::size_t i) const { return vars_[i]; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  MonomialOrder order() const { return order_; }
  std::size_t block_size() const { return block_; }
  std::optional<std::size_t> homotopy_index() const;
  const std::optional<std::string>& homotopy_name() const { return homotopy_; }

  /// -1, 0, 1 as a <, ==, > b in the ring's monomial order.
  int compare(const Monomial& a, const Monomial& b) const;

  /// Same variables and field, different order.
  RingPtr with_order(MonomialOrder order, std::size_t block = 0) const;
  /// Same field and order kind, variables replaced.
  RingPtr with_variables(std::vector<std::string> vars, std::size_t block = 0) const;
  /// Drops one variable (the homotopy flag goes with it).
  RingPtr without(std::string_view var) const;

  /// e.g. `QQ[x,y,T] grevlex`.
  std::string describe() const;

  friend bool same_ring(const PolyRing& a, const PolyRing& b);

 private:
  PolyRing() = default;

  FieldPtr field_;
  std::vector<std::string> vars_;
  MonomialOrder order_ = MonomialOrder::grevlex;
  std::size_t block_ = 0;
  std::optional<std::string> homotopy_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);

struct Term {
  Monomial mono;
  FieldElem coef;
};

/// Sparse polynomial, terms strictly decreasing in the ring order, no zero
/// coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(const RingPtr& ring, const FieldElem& c);
  static Polynomial constant(const RingPtr& ring, long c);
  static Polynomial variable(const RingPtr& ring, std::size_t i);
  static Polynomial variable(const RingPtr& ring, std::string_view name);
  static Polynomial monomial(const RingPtr& ring, Monomial m, const FieldElem& c);
  /// Terms in any order; like monomials are combined.
  static Polynomial from_terms(const RingPtr& ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// The constant term's coefficient (zero if absent).
  FieldElem constant_coeff() const;
  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const FieldElem& leading_coeff() const { return terms_.front().coef; }
  int total_degree() const;
  std::uint32_t degree_in(std::size_t var) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Drops the leading term.
  Polynomial tail() const;
  Polynomial scaled(const FieldElem& c) const;
  Polynomial times_term(const Monomial& m, const FieldElem& c) const;
  Polynomial monic() const;
  Polynomial pow(unsigned e) const;

  /// Value at a point whose coordinates lie in a field containing the
  /// coefficient field (coefficients are embedded).
  FieldElem evaluate(std::span<const FieldElem> point) const;

  /// Replace variable `var` by `value` (same ring).
  Polynomial substitute(std::size_t var, const Polynomial& value) const;

  /// `3/2*x^2*y - T + 1` style text, terms in ring order.
  std::string to_string() const;

 private:
  void normalize(std::vector<Term>&& raw);

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Re-express `f` in `target`, matching variables by name. Throws if `f`
/// uses a variable `target` lacks or the fields differ.
Polynomial convert(const Polynomial& f, const RingPtr& target);

/// Evaluation homomorphism var -> value; the result lives in ring.without(var).
Polynomial substitute_value(const Polynomial& f, std::string_view var, const FieldElem& value);

/// Exact quotient f / g; throws InvalidArgument if g does not divide f.
Polynomial exact_divide(const Polynomial& f, const Polynomial& g);

/// Parses the ASCII grammar: sums of products of rationals, variables,
/// parenthesised expressions and `^` powers. The extension generator of the
/// coefficient field (e.g. `z`) is accepted as a constant. Errors report the
/// column.
Polynomial parse_polynomial(const RingPtr& ring, std::string_view text);

/// Parses a field constant, e.g. `3/2`, `-1`, `z+2`.
FieldElem parse_field_element(const FieldPtr& field, std::string_view text);

/// Parses `QQ`, `GF(p)`, `QQ[z]/(z^2-2)`, `GF(p)[z]/(...)`.
FieldPtr parse_field(std::string_view text);

}  // namespace cwkit

#endif  // CWKIT_POLYRING_HPP
