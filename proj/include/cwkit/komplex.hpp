#ifndef CWKIT_KOMPLEX_HPP
#define CWKIT_KOMPLEX_HPP

// Bounded complexes of based free modules in degrees top..0, Koszul
// complexes, the Koszul self-duality map, cones and elementary base changes.

#include <string>
#include <vector>

#include "cwkit/polyring.hpp"

namespace cwkit {

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols);
  static PolyMatrix identity(const RingPtr& ring, std::size_t n);
  /// Rows of polynomial strings.
  static PolyMatrix parse(const RingPtr& ring, const std::vector<std::vector<std::string>>& rows);

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Polynomial& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Polynomial& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  PolyMatrix transpose() const;
  PolyMatrix scaled(const Polynomial& s) const;
  bool is_zero() const;
  std::vector<std::vector<std::string>> to_strings() const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

 private:
  RingPtr ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Polynomial> a_;
};

/// Determinant by cofactor expansion (square matrices, small sizes).
Polynomial determinant(const PolyMatrix& m);
/// Classical adjoint: adj(m) * m = det(m) * 1.
PolyMatrix adjugate(const PolyMatrix& m);
/// k-subsets of {1..n} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int k);
/// Sign of the permutation sorting the concatenation (S, T) of disjoint sets.
int shuffle_sign(const std::vector<int>& s, const std::vector<int>& t);
/// k-th compound matrix (matrix of Lambda^k), rows and columns indexed by
/// lex-ordered k-subsets.
PolyMatrix compound(const PolyMatrix& m, int k);

/// Free module with a labelled basis. Exterior-power bases are index subsets;
/// `dual` marks the dual basis e*_S.
struct BasedFreeModule {
  std::vector<std::vector<int>> basis;
  bool dual = false;

  std::size_t rank() const { return basis.size(); }
  std::string label(std::size_t i) const;
  friend bool operator==(const BasedFreeModule&, const BasedFreeModule&) = default;
};

/// Complex in degrees top..0. d[k] : K_k -> K_{k-1} for k >= 1 has
/// rank(K_{k-1}) rows and rank(K_k) columns; d[0] is unused.
struct ChainComplex {
  RingPtr ring;
  std::vector<BasedFreeModule> modules;
  std::vector<PolyMatrix> d;
  /// Generators when the complex is a Koszul complex.
  std::vector<Polynomial> koszul_sequence;

  int top() const { return static_cast<int>(modules.size()) - 1; }
  std::size_t rank(int k) const { return k < 0 || k > top() ? 0 : modules[k].rank(); }
  /// d_{k-1} d_k == 0 for every k.
  bool is_complex() const;
  friend bool operator==(const ChainComplex& a, const ChainComplex& b);
};

struct ChainMap {
  ChainComplex source, target;
  std::vector<PolyMatrix> f;  // f[k] : source_k -> target_k

  /// target.d[k] f[k] == f[k-1] source.d[k] for every k.
  bool commutes() const;
  /// The degree-k commutator target.d[k] f[k] - f[k-1] source.d[k].
  PolyMatrix defect(int k) const;
};

/// Koszul complex: degree k is Lambda^k A^n on lex k-subsets,
/// d(e_S) = sum_j (-1)^(j+1) f_{i_j} e_{S - i_j}.
ChainComplex koszul(const std::vector<Polynomial>& f);

/// Dual complex reindexed into degrees n..0: degree r is (K_{n-r})* with
/// differential (-1)^(r-1) d_{n-r+1}^T.
ChainComplex dual(const ChainComplex& k);

struct DualityResult {
  ChainMap phi;           // K -> dual(K)
  bool chain_map = false;
  bool symmetric = false; // phi_{n-r}^T == (-1)^{r(n-r)} phi_r for all r
};

/// phi_r(e_S) = sign(S, S^c) * chi * e*_{S^c}, with both certificates.
/// Throws InvalidArgument for a non-Koszul complex or chi == 0.
DualityResult koszul_duality(const ChainComplex& k, const FieldElem& chi);

/// Multiplication by t on every component.
ChainMap multiplication_map(const ChainComplex& k, const Polynomial& t);

/// Cone of an endomorphism f of K: degree r is K_r (+) K_{r-1} with
/// differential [[d_r, (-1)^(r+1) f_{r-1}], [0, d_{r-1}]]. For a Koszul
/// complex on n generators the second summand's basis vectors are labelled
/// S u {n+1}. Throws InvalidArgument unless source == target.
ChainComplex cone(const ChainMap& f);

/// Permutes every basis into lexicographic subset order (the basis order of
/// koszul(f, t)), conjugating the differentials accordingly.
ChainComplex reorder_lex(const ChainComplex& k);

struct ElementaryConjugation {
  PolyMatrix delta;
  Polynomial det;
  ChainMap lambda;          // koszul(g') -> koszul(g), Lambda^r of (Delta^-1)^T
  ChainMap lambda_dual;     // dual(koszul(g)) -> dual(koszul(g'))
  ChainMap composite;       // lambda_dual . phi_g . lambda : koszul(g') -> dual(koszul(g'))
  bool composite_is_chain_map = false;
  bool degree0_agrees = false;
  /// composite_r - phi_{g'},r for r = 0..n.
  std::vector<PolyMatrix> discrepancy;
};

/// Base change along Delta with Delta g' = g and det Delta = 1. Throws
/// Rejected when either condition fails.
ElementaryConjugation conjugate_by_elementary(const std::vector<Polynomial>& g,
                                              const std::vector<Polynomial>& g_prime,
                                              const PolyMatrix& delta, const FieldElem& chi);

}  // namespace cwkit

#endif  // CWKIT_KOMPLEX_HPP
