#ifndef CWKIT_GERSTEN_HPP
#define CWKIT_GERSTEN_HPP

// Degree-0 cycles of the Chow-Witt fiber product (GW part and Milnor K_0
// multiplicity at closed points), the boundary d1 on Koszul-supported forms,
// Theta, and the homotopy-invariance pipeline.

#include <optional>
#include <string>
#include <vector>

#include "cwkit/orient.hpp"
#include "cwkit/witt.hpp"

namespace cwkit {

struct CycleTerm {
  Point point;
  GWClass gw;
  long multiplicity = 0;
};

class CWCycle {
 public:
  CWCycle() = default;
  CWCycle(RingPtr ring, std::size_t codim) : ring_(std::move(ring)), codim_(codim) {}

  const RingPtr& ring() const { return ring_; }
  std::size_t codim() const { return codim_; }
  const std::vector<CycleTerm>& terms() const { return terms_; }
  bool is_empty() const { return terms_.empty(); }

  /// Merges with an existing term at the same point; zero terms vanish.
  /// Throws Falsified when rank(gw) and m differ in parity.
  void add(const Point& x, const GWClass& gw, long multiplicity);

  CWCycle operator+(const CWCycle& o) const;
  CWCycle operator-() const;
  CWCycle operator-(const CWCycle& o) const { return *this + (-o); }
  /// Same points, GW classes equal in GW, equal multiplicities.
  bool equivalent(const CWCycle& o) const;

 private:
  void check_ambient(const CWCycle& o) const;

  RingPtr ring_;
  std::size_t codim_ = 0;
  std::vector<CycleTerm> terms_;
};

struct ThetaResult {
  CWCycle cycle;
  LocalOrientation orientation;
  std::vector<PointwiseEntry> units;
  /// Units recomputed through compare_orientations against a reference.
  std::optional<OrientationComparison> reference;
};

/// One term <u> with multiplicity 1 per point, u the orientation's unit in
/// the point's reference trivialization. Empty for the trivial orientation.
/// With `reference`, the units are cross-checked against
/// theta(reference) * <det M>.
ThetaResult theta(const LocalOrientation& o, const std::optional<std::vector<Ideal>>& primes = std::nullopt,
                  const std::optional<LocalOrientation>& reference = std::nullopt);

struct BoundaryDatum {
  std::vector<Polynomial> g;        // regular sequence cutting out the height n-1 support
  std::vector<Polynomial> form;     // <a_1, ..., a_k>, units along the support
  Polynomial t;                     // nonzerodivisor modulo (g)
  std::optional<std::vector<Ideal>> primes;  // decomposition of (g, t)
};

struct BoundaryResult {
  CWCycle cycle;
  RegularSequenceCertificate regular;
  std::vector<std::string> colon;   // basis of ((g) : t)
  bool cone_is_koszul = false;      // reorder(cone(t on K(g))) == K(g, t)
  bool duality_chain_map = false;
  bool duality_symmetric = false;
  std::vector<PointwiseEntry> units;  // Koszul orientation of (g, t) at each point
};

/// d1 of (sum <a_i>) (<t> - <1>) on the Koszul form of g: at each point x of
/// (g, t) the class sum <a_i(x) u_x>, multiplicity k. Rejected when the
/// datum's invariants fail.
BoundaryResult d1_boundary(const BoundaryDatum& b);

struct HomotopyPointCheck {
  Point point;
  FieldElem psi;     // unit of K(f(T), T) at the point
  FieldElem psi0;    // unit of K(f(0), T)
  FieldElem ratio;   // psi / psi0
  bool isometric = false;
};

struct HomotopyReport {
  LocalOrientation orientation, at0, at1;
  PolyMatrix delta;
  Polynomial det;
  ElementaryConjugation conjugation;
  bool ideals_agree = false;        // (f(T), T) == (f(0), T)
  std::vector<HomotopyPointCheck> points;
  BoundaryResult boundary_t, boundary_0;
  bool boundaries_agree = false;
  std::optional<ThetaResult> theta0, theta1;
  std::string theta_note;
  bool ok = false;
};

/// Runs the homotopy-invariance argument on an orientation over A[T]; throws
/// Falsified with the offending data when an exact check fails.
HomotopyReport homotopy_check(const LocalOrientation& o,
                              const std::optional<std::vector<Ideal>>& primes = std::nullopt);

struct Witness {
  int sign = 1;
  BoundaryDatum datum;
};

struct DifferenceReport {
  CWCycle difference;   // c1 - c2
  CWCycle boundary;     // sum of signed d1 witnesses
  std::vector<BoundaryResult> witnesses;
  bool equal = false;
};

DifferenceReport verify_cycle_difference(const CWCycle& c1, const CWCycle& c2, const std::vector<Witness>& witnesses);

}  // namespace cwkit

#endif  // CWKIT_GERSTEN_HPP
