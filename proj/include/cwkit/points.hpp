#ifndef CWKIT_POINTS_HPP
#define CWKIT_POINTS_HPP

// Closed points of zero-dimensional ideals: shape-position decomposition,
// verification of user-supplied decompositions, residue fields and the
// reduction map A -> k(x).

#include <optional>
#include <string>
#include <vector>

#include "cwkit/groebner.hpp"

namespace cwkit {

/// A maximal ideal of a polynomial ring with an explicit residue field.
struct Point {
  Ideal prime;
  FieldPtr residue;
  /// Image of every ring variable in the residue field.
  std::vector<FieldElem> coords;
  /// Canonical parameters: the lex shape-position generators, ordered by
  /// variable (x_1 - g_1(x_m), ..., q(x_m)). They fix the reference
  /// orientation at the point.
  std::vector<Polynomial> parameters;
  /// Length of the local ring of the ideal the point was found in.
  std::size_t multiplicity = 1;
  /// Reduced Groebner basis of the prime, joined; identifies the point.
  std::string key;

  const RingPtr& ring() const { return prime.ring(); }
  std::size_t degree() const { return residue->degree() / ring()->field()->degree(); }
  /// The reduction map A -> k(x).
  FieldElem reduce(const Polynomial& f) const;
  /// `(0, 1)` when every coordinate lies in the base field, otherwise the
  /// prime's generators.
  std::string label() const;
};

/// Minimal primes of a zero-dimensional ideal in shape position. Points are
/// sorted by residue degree, then key. Throws InvalidArgument when I is not
/// zero-dimensional and Unsupported when I is not in shape position or a
/// univariate factor cannot be split.
std::vector<Point> minimal_primes_zero_dim(const Ideal& I);

/// Checks a user decomposition: each prime is maximal (its own shape position
/// gives a single reduced point), contains I, the primes are pairwise
/// comaximal, and the lengths add up to dim_K A/I. Throws Rejected on
/// failure.
std::vector<Point> verify_decomposition(const Ideal& I, const std::vector<Ideal>& primes);

/// `verify_decomposition` when `primes` is given, else `minimal_primes_zero_dim`.
std::vector<Point> decompose(const Ideal& I, const std::optional<std::vector<Ideal>>& primes);

/// A single point given by generators of its maximal ideal.
Point point_from_prime(const Ideal& prime);

/// Determinant of the matrix M with f_i = sum_j M_ij p_j, reduced at the
/// point, where p are its canonical parameters. Requires f in the prime and
/// f.size() == number of parameters. Zero exactly when f fails to generate
/// the prime locally.
FieldElem transition_unit(const Point& x, const std::vector<Polynomial>& f);

/// The matrix of `transition_unit`, reduced at the point.
std::vector<std::vector<FieldElem>> transition_matrix(const Point& x, const std::vector<Polynomial>& f);

/// Determinant by cofactor expansion over a field.
FieldElem determinant(const std::vector<std::vector<FieldElem>>& m);

}  // namespace cwkit

#endif  // CWKIT_POINTS_HPP
