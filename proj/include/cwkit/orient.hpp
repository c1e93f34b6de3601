#ifndef CWKIT_ORIENT_HPP
#define CWKIT_ORIENT_HPP

// Local orientations (I, omega) on a free module of rank n, encoded by a
// generator list f_1..f_n of I that is also the lift of omega.

#include <optional>
#include <string>
#include <vector>

#include "cwkit/komplex.hpp"
#include "cwkit/points.hpp"

namespace cwkit {

enum class OrientationKind { trivial, height_n, rejected };
std::string to_string(OrientationKind k);

struct LocalOrientation {
  RingPtr ring;
  std::size_t n = 0;
  std::vector<Polynomial> generators;
  /// Generators of I as stated; the generator list itself when not given.
  Ideal ideal;

  /// Checks sizes and rings; does not validate.
  static LocalOrientation make(const RingPtr& ring, std::size_t n, std::vector<Polynomial> generators,
                               std::optional<std::vector<Polynomial>> ideal = std::nullopt);
  static LocalOrientation parse(const RingPtr& ring, std::size_t n, const std::vector<std::string>& generators,
                                const std::optional<std::vector<std::string>>& ideal = std::nullopt);

  bool has_homotopy() const { return ring->homotopy_index().has_value(); }
  std::vector<std::string> generator_strings() const;
};

struct ValidationCertificate {
  OrientationKind kind = OrientationKind::rejected;
  bool generators_generate = false;
  std::optional<std::size_t> height;  // absent for the unit ideal
  std::optional<RegularSequenceCertificate> regular;
  std::string reason;
};

ValidationCertificate validate(const LocalOrientation& o);
/// validate, throwing Rejected with the reason unless trivial or height n.
ValidationCertificate require_valid(const LocalOrientation& o);

/// Substitutes T = c, drops T from the ring and re-validates (Rejected on
/// failure).
LocalOrientation evaluate(const LocalOrientation& o, long c);

struct PointwiseEntry {
  Point point;
  /// Phi(I, omega) at the point in the trivialization given by f: always 1.
  FieldElem unit;
  /// det of f against the point's canonical parameters: the same form in the
  /// point's reference trivialization.
  FieldElem transition;
};

struct PointwiseForm {
  std::vector<PointwiseEntry> points;
};

/// Decomposes I (user primes if given), rejects non-reduced points with
/// Unsupported, and records the pointwise units. Trivial orientation: empty.
PointwiseForm phi_form(const LocalOrientation& o, const std::optional<std::vector<Ideal>>& primes = std::nullopt);

struct PointUnit {
  Point point;
  FieldElem unit;
};

struct OrientationComparison {
  PolyMatrix m;       // f'_i = sum_j M_ij f_j mod I^2
  Polynomial det;
  std::vector<PointUnit> units;  // det M at every point
  std::string points_note;       // set when points were not computed
};

/// Both orientations must be valid with the same ideal.
OrientationComparison compare_orientations(const LocalOrientation& a, const LocalOrientation& b,
                                           const std::optional<std::vector<Ideal>>& primes = std::nullopt);

}  // namespace cwkit

#endif  // CWKIT_ORIENT_HPP
