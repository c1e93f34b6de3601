#ifndef CWKIT_SCALARS_HPP
#define CWKIT_SCALARS_HPP

// Exact scalars: the rationals, prime fields F_p (p odd) and one-level simple
// extensions K[z]/(m(z)). Residue fields of closed points live here.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace cwkit {

using Integer = mpz_class;
using Rational = mpq_class;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

enum class FieldKind { rationals, prime, extension };

/// Immutable field descriptor. Build with the static factories; compare with
/// `same_field`, which looks at the canonical descriptor text.
class Field : public std::enable_shared_from_this<Field> {
 public:
  static FieldPtr rationals();
  /// Throws InvalidArgument unless p is an odd prime.
  static FieldPtr prime(std::uint64_t p);
  /// `minpoly` holds coefficients low-to-high over `base` (which must be QQ
  /// or GF(p)); it is made monic and checked for irreducibility.
  static FieldPtr extension(const FieldPtr& base, std::vector<Rational> minpoly,
                            std::string generator = "z");

  FieldKind kind() const { return kind_; }
  /// 0 for the rationals.
  std::uint64_t characteristic() const { return p_; }
  /// The prime field underneath; the field itself for QQ and GF(p).
  FieldPtr prime_field() const;
  /// Degree over the prime field.
  std::size_t degree() const { return kind_ == FieldKind::extension ? minpoly_.size() - 1 : 1; }
  /// Monic minimal polynomial, low-to-high, over the prime field (extensions only).
  const std::vector<Rational>& minimal_polynomial() const { return minpoly_; }
  const std::string& generator_name() const { return generator_; }
  bool is_finite() const { return p_ != 0; }
  /// Number of elements of a finite field.
  Integer order() const;

  /// Canonical text form: `QQ`, `GF(5)`, `GF(5)[z]/(z^2+2)`.
  const std::string& descriptor() const { return descriptor_; }

 private:
  Field() = default;

  FieldKind kind_ = FieldKind::rationals;
  std::uint64_t p_ = 0;
  FieldPtr base_;
  std::vector<Rational> minpoly_;
  std::string generator_;
  std::string descriptor_;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);

/// Element of a Field in canonical form: reduced fraction over QQ, least
/// nonnegative residue over GF(p), reduced polynomial remainder in extensions.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(FieldPtr field, const Rational& value);
  FieldElem(FieldPtr field, long value) : FieldElem(std::move(field), Rational(value)) {}
  /// Extension element from its coefficients over the prime field (low-to-high).
  FieldElem(FieldPtr field, std::vector<Rational> coeffs);

  static FieldElem zero(const FieldPtr& field) { return FieldElem(field, 0L); }
  static FieldElem one(const FieldPtr& field) { return FieldElem(field, 1L); }
  /// The class of z in K[z]/(m).
  static FieldElem generator(const FieldPtr& field);

  const FieldPtr& field() const { return field_; }
  bool valid() const { return field_ != nullptr; }
  bool is_zero() const;
  bool is_one() const;
  /// Coefficients over the prime field; size 1 for QQ and GF(p).
  const std::vector<Rational>& coeffs() const { return c_; }
  /// The value as a prime-field scalar; throws unless the element lies there.
  const Rational& base_value() const;
  bool in_prime_field() const;

  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o);
  FieldElem inverse() const;
  FieldElem pow(const Integer& e) const;

  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }
  friend bool operator==(const FieldElem& a, const FieldElem& b);
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

  /// Total order on canonical forms, for deterministic sorting only.
  friend bool canonical_less(const FieldElem& a, const FieldElem& b);

  std::string to_string() const;

 private:
  void check_same(const FieldElem& o) const;

  FieldPtr field_;
  std::vector<Rational> c_;
};

/// Embed an element of the prime field of `target` into `target`.
FieldElem embed(const FieldElem& x, const FieldPtr& target);

// --- square classes --------------------------------------------------------

void set_trial_division_bound(std::uint64_t bound);
std::uint64_t trial_division_bound();
constexpr std::uint64_t kDefaultTrialDivisionBound = 1000000;

/// Prime factorization of |n| (n != 0) by trial division up to the configured
/// bound. A cofactor left over is accepted only when it is provably or
/// probabilistically prime; otherwise throws Unsupported.
std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n);

/// Signed square-free integer s with q = s * r^2 for some rational r.
Integer squarefree_part(const Rational& q);

bool is_square(const FieldElem& a);

/// Canonical representative of a modulo squares. Finite fields: 1 or the
/// least non-square; QQ: the signed square-free integer. Throws Unsupported
/// for extensions of QQ, where square classes have no finite description.
FieldElem square_class(const FieldElem& a);

/// Least non-square in a finite field (enumeration order: base-p digits of
/// the coefficient vector).
FieldElem least_nonsquare(const FieldPtr& field);

// --- univariate polynomials over a prime field -----------------------------

/// Univariate polynomial over QQ or GF(p), coefficients low-to-high, trimmed.
class UniPoly {
 public:
  UniPoly() = default;
  UniPoly(FieldPtr field, std::vector<Rational> coeffs);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& leading() const { return c_.back(); }
  UniPoly monic() const;

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly& a, const UniPoly& b);

  std::string to_string(const std::string& var = "x") const;

 private:
  FieldPtr field_;
  std::vector<Rational> c_;
};

struct UniFactor {
  UniPoly factor;  // monic irreducible
  unsigned multiplicity;
};

/// Complete factorization over GF(p): square-free, distinct-degree and
/// Cantor-Zassenhaus equal-degree splitting. Factors sorted by degree, then
/// coefficients. Throws InvalidArgument on the zero polynomial.
std::vector<UniFactor> factor_univariate(const UniPoly& f);

/// Factorization over QQ restricted to what is decidable without a general
/// factoring algorithm: rational roots are split off; a cofactor of degree 2
/// is irreducible; anything larger throws Unsupported.
std::vector<UniFactor> factor_rational_small(const UniPoly& f);

/// Rational roots (with multiplicity) of a polynomial over QQ.
std::vector<std::pair<Rational, unsigned>> rational_roots(const UniPoly& f);

}  // namespace cwkit

#endif  // CWKIT_SCALARS_HPP
