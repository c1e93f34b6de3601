#ifndef CWKIT_WITT_HPP
#define CWKIT_WITT_HPP

// Symmetric bilinear forms over exact fields of characteristic != 2:
// diagonalization, classical invariants, isometry, Witt and Grothendieck-Witt
// classes.

#include <optional>
#include <string>
#include <vector>

#include "cwkit/scalars.hpp"

namespace cwkit {

using FieldMatrix = std::vector<std::vector<FieldElem>>;

/// <a_1, ..., a_k>, all entries nonzero.
class DiagonalForm {
 public:
  DiagonalForm() = default;
  DiagonalForm(FieldPtr field, std::vector<FieldElem> entries);
  static DiagonalForm parse(const FieldPtr& field, const std::vector<std::string>& entries);
  /// k copies of <1, -1>.
  static DiagonalForm hyperbolic(const FieldPtr& field, std::size_t k);

  const FieldPtr& field() const { return field_; }
  const std::vector<FieldElem>& entries() const { return entries_; }
  std::size_t rank() const { return entries_.size(); }
  /// Product of the entries.
  FieldElem determinant() const;
  /// (-1)^{k(k-1)/2} times the determinant.
  FieldElem signed_determinant() const;
  std::vector<std::string> entry_strings() const;
  /// `<a1,...,ak> over K`.
  std::string to_string() const;
  /// `<a1,...,ak>`.
  std::string brackets() const;

  friend bool operator==(const DiagonalForm& a, const DiagonalForm& b);

 private:
  FieldPtr field_;
  std::vector<FieldElem> entries_;
};

DiagonalForm orthogonal_sum(const DiagonalForm& a, const DiagonalForm& b);
/// <u> * f.
DiagonalForm scale(const DiagonalForm& f, const FieldElem& u);

struct Diagonalization {
  DiagonalForm form;
  FieldMatrix transform;  // P with P^T G P = diag(form)
};

/// Congruence diagonalization; the certificate is checked before returning.
/// Throws InvalidArgument for non-symmetric or degenerate input.
Diagonalization diagonalize(const FieldMatrix& g);

FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix mat_transpose(const FieldMatrix& a);

/// Hilbert symbol (a, b)_p over QQ; p == 0 is the real place.
int hilbert_symbol(const Rational& a, const Rational& b, const Integer& p);

struct HasseEntry {
  Integer prime;  // 0 for the real place
  int value;
};

struct WittInvariants {
  std::size_t rank = 0;
  int rank_mod2 = 0;
  /// Square class of the signed determinant (the raw value over extensions
  /// of QQ, where no canonical class exists).
  FieldElem discriminant;
  bool discriminant_trivial = false;
  std::optional<long> signature;   // QQ only
  std::vector<HasseEntry> hasse;   // QQ only: primes dividing 2 * entries, then the real place
};

WittInvariants gw_invariants(const DiagonalForm& f);

/// Places relevant for the Hasse data of f over QQ (primes, then 0).
std::vector<Integer> relevant_places(const DiagonalForm& f);
/// Hasse invariant prod_{i<j} (a_i, a_j)_p.
int hasse_invariant(const DiagonalForm& f, const Integer& p);

/// Finite fields: rank and discriminant. QQ: rank, signature, discriminant,
/// Hasse invariants. Extensions of QQ: rank <= 2 by explicit representation
/// search; otherwise throws Unsupported.
bool decide_isometry(const DiagonalForm& a, const DiagonalForm& b);

/// Canonical representative in W: square-class normalized entries with
/// <a>, <-a> pairs cancelled; over finite fields the unique representative of
/// rank <= 2 determined by (rank mod 2, discriminant).
DiagonalForm witt_reduce(const DiagonalForm& f);
/// a == b in W(K).
bool witt_equal(const DiagonalForm& a, const DiagonalForm& b);

/// Filtration level in W: 0 (odd rank), 1 (even rank, nontrivial signed
/// discriminant), 2 meaning "at least 2". Finite fields and QQ only.
int fundamental_ideal_level(const DiagonalForm& f);

/// Element of GW(K) stored as (Witt class, rank).
class GWClass {
 public:
  GWClass() = default;
  explicit GWClass(const DiagonalForm& f);
  GWClass(DiagonalForm witt, long rank);
  static GWClass zero(const FieldPtr& field);

  const FieldPtr& field() const { return witt_.field(); }
  /// Reduced Witt part.
  const DiagonalForm& witt() const { return witt_; }
  long rank() const { return rank_; }
  bool is_zero() const { return rank_ == 0 && witt_.rank() == 0; }

  /// Formal difference pos - neg with rank(pos) - rank(neg) == rank(),
  /// padded with hyperbolic planes as needed.
  std::pair<DiagonalForm, DiagonalForm> representative() const;

  GWClass operator+(const GWClass& o) const;
  GWClass operator-() const;
  GWClass operator-(const GWClass& o) const { return *this + (-o); }
  GWClass times(const FieldElem& u) const;
  /// Same rank and same Witt class.
  bool equivalent(const GWClass& o) const;

  /// `<1,-1>`, `-<1>`, `<1> - <1,-1>`, `0`.
  std::string to_string() const;

 private:
  DiagonalForm witt_;
  long rank_ = 0;
};

}  // namespace cwkit

#endif  // CWKIT_WITT_HPP
