#ifndef CWKIT_GROEBNER_HPP
#define CWKIT_GROEBNER_HPP

// Buchberger's algorithm (sugar selection, Gebauer-Moeller pair criteria, full
// reduction) and the ideal arithmetic built on it.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cwkit/polyring.hpp"

namespace cwkit {

/// Reduced Groebner basis in the ring's order: monic, interreduced, sorted by
/// increasing leading monomial. Zero inputs are dropped; an empty result is
/// the zero ideal.
std::vector<Polynomial> buchberger(std::span<const Polynomial> gens);

struct DivisionResult {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

/// Multivariate division with full reduction: f = sum q_i g_i + r, no term of
/// r divisible by any leading monomial of the divisors.
DivisionResult divide(const Polynomial& f, std::span<const Polynomial> divisors);

/// Remainder of `divide`.
Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis);

/// Cofactors c with f == sum c_i gens_i (checked exactly), or nullopt when f
/// is not in the ideal.
std::optional<std::vector<Polynomial>> lift(const Polynomial& f, std::span<const Polynomial> gens);

bool divides(const Monomial& a, const Monomial& b);
Monomial lcm(const Monomial& a, const Monomial& b);

class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr ring, std::vector<Polynomial> gens);
  static Ideal parse(const RingPtr& ring, const std::vector<std::string>& gens);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  /// Reduced basis, computed once and shared between copies.
  const std::vector<Polynomial>& groebner() const;

  bool is_zero() const { return groebner().empty(); }
  bool is_unit() const;
  bool contains(const Polynomial& f) const;
  bool contains(const Ideal& other) const;
  Polynomial normal_form(const Polynomial& f) const;

  friend bool operator==(const Ideal& a, const Ideal& b);
  friend bool operator!=(const Ideal& a, const Ideal& b) { return !(a == b); }
  Ideal operator+(const Ideal& o) const;
  Ideal operator*(const Ideal& o) const;
  Ideal intersect(const Ideal& o) const;
  /// (I : f) = { g : g f in I }, via (I cap (f)) / f. Requires f != 0.
  Ideal colon(const Polynomial& f) const;
  /// I cap K[remaining variables]; the result lives in the smaller ring.
  Ideal eliminate(const std::vector<std::string>& vars) const;
  /// Same generators, different ring (variables matched by name).
  Ideal in_ring(const RingPtr& target) const;
  /// Evaluation var -> value on every generator.
  Ideal substitute(std::string_view var, const FieldElem& value) const;

  /// Krull dimension of A/I via maximal independent sets of the leading-term
  /// ideal; -1 for the unit ideal.
  int dimension() const;
  /// nvars - dimension. Throws InvalidArgument for the unit ideal.
  std::size_t height() const;
  bool is_zero_dimensional() const;
  /// Monomials outside the leading-term ideal (zero-dimensional ideals only).
  std::vector<Monomial> standard_monomials() const;
  /// dim_K A/I by staircase counting (zero-dimensional ideals only).
  std::size_t vector_space_dimension() const;

  std::string to_string() const;
  std::vector<std::string> groebner_strings() const;

 private:
  struct Cache;

  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

struct ColonStep {
  std::size_t index;                  // position i of f_i (0-based)
  std::vector<std::string> colon;     // reduced basis of ((f_1..f_{i-1}) : f_i)
  bool equal;                         // colon == (f_1..f_{i-1})
};

struct RegularSequenceCertificate {
  bool regular = false;
  bool proper = false;  // (f) != (1)
  std::vector<ColonStep> steps;
  std::string reason;
};

/// f_1..f_k is regular iff (f) is proper and each colon
/// ((f_1..f_{i-1}) : f_i) equals (f_1..f_{i-1}).
RegularSequenceCertificate is_regular_sequence(std::span<const Polynomial> fs);

}  // namespace cwkit

#endif  // CWKIT_GROEBNER_HPP
