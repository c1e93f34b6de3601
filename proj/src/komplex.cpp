#include "cwkit/komplex.hpp"

#include <algorithm>
#include <numeric>

#include "cwkit/error.hpp"

namespace cwkit {

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), a_(rows * cols, Polynomial(ring_)) {}

PolyMatrix PolyMatrix::identity(const RingPtr& ring, std::size_t n) {
  PolyMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Polynomial::constant(ring, 1);
  return m;
}

PolyMatrix PolyMatrix::parse(const RingPtr& ring, const std::vector<std::vector<std::string>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows[0].size();
  PolyMatrix m(ring, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw InvalidArgument("matrix rows have different lengths");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = parse_polynomial(ring, rows[i][j]);
  }
  return m;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

PolyMatrix PolyMatrix::scaled(const Polynomial& s) const {
  PolyMatrix t = *this;
  for (auto& x : t.a_) x = x * s;
  return t;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

std::vector<std::vector<std::string>> PolyMatrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).to_string());
  return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidArgument("matrix product: shape mismatch");
  const RingPtr& ring = a.ring_ ? a.ring_ : b.ring_;
  PolyMatrix c(ring, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Polynomial& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
    }
  return c;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("matrix sum: shape mismatch");
  PolyMatrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
  return c;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("matrix difference: shape mismatch");
  PolyMatrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
  return c;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

namespace {

Polynomial det_rec(const PolyMatrix& m, std::vector<std::size_t>& cols, std::size_t row) {
  const RingPtr& R = m.ring();
  if (row == m.rows()) return Polynomial::constant(R, 1);
  Polynomial sum(R);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const Polynomial& a = m(row, cols[k]);
    if (a.is_zero()) continue;
    const std::size_t c = cols[k];
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
    Polynomial minor = a * det_rec(m, cols, row + 1);
    cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
    if (k % 2) sum -= minor;
    else sum += minor;
  }
  return sum;
}

Polynomial minor_det(const PolyMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  PolyMatrix s(m.ring(), rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = m(rows[i] - 1, cols[j] - 1);
  return determinant(s);
}

std::vector<int> complement(const std::vector<int>& s, int n) {
  std::vector<int> c;
  for (int i = 1; i <= n; ++i)
    if (!std::binary_search(s.begin(), s.end(), i)) c.push_back(i);
  return c;
}

}  // namespace

Polynomial determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("determinant of a non-square matrix");
  if (m.rows() == 0) return Polynomial::constant(m.ring(), 1);
  std::vector<std::size_t> cols(m.cols());
  std::iota(cols.begin(), cols.end(), 0);
  return det_rec(m, cols, 0);
}

PolyMatrix adjugate(const PolyMatrix& m) {
  const int n = static_cast<int>(m.rows());
  if (m.rows() != m.cols()) throw InvalidArgument("adjugate of a non-square matrix");
  PolyMatrix a(m.ring(), n, n);
  if (n == 1) {
    a(0, 0) = Polynomial::constant(m.ring(), 1);
    return a;
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      std::vector<int> rows, cols;
      for (int k = 1; k <= n; ++k) {
        if (k != j) rows.push_back(k);
        if (k != i) cols.push_back(k);
      }
      Polynomial c = minor_det(m, rows, cols);
      a(i - 1, j - 1) = (i + j) % 2 ? -c : c;
    }
  return a;
}

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> s(k);
  std::iota(s.begin(), s.end(), 1);
  for (;;) {
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

int shuffle_sign(const std::vector<int>& s, const std::vector<int>& t) {
  int inv = 0;
  for (int a : s)
    for (int b : t)
      if (a > b) ++inv;
  return inv % 2 ? -1 : 1;
}

PolyMatrix compound(const PolyMatrix& m, int k) {
  const int n = static_cast<int>(m.rows());
  if (m.rows() != m.cols()) throw InvalidArgument("compound of a non-square matrix");
  const auto sets = subsets(n, k);
  PolyMatrix c(m.ring(), sets.size(), sets.size());
  if (k == 0) {
    c(0, 0) = Polynomial::constant(m.ring(), 1);
    return c;
  }
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < sets.size(); ++j) c(i, j) = minor_det(m, sets[i], sets[j]);
  return c;
}

std::string BasedFreeModule::label(std::size_t i) const {
  const auto& s = basis[i];
  std::string out;
  if (s.empty()) out = "1";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "^e" : "e") + std::to_string(s[k]);
  return dual ? out + "*" : out;
}

bool ChainComplex::is_complex() const {
  for (int k = 2; k <= top(); ++k)
    if (!(d[k - 1] * d[k]).is_zero()) return false;
  return true;
}

bool operator==(const ChainComplex& a, const ChainComplex& b) {
  if (!same_ring(a.ring, b.ring) || a.modules != b.modules) return false;
  for (int k = 1; k <= a.top(); ++k)
    if (a.d[k] != b.d[k]) return false;
  return true;
}

PolyMatrix ChainMap::defect(int k) const {
  return target.d[k] * f[k] - f[k - 1] * source.d[k];
}

bool ChainMap::commutes() const {
  for (int k = 1; k <= source.top(); ++k)
    if (!defect(k).is_zero()) return false;
  return true;
}

namespace {

void check_ring(const std::vector<Polynomial>& f) {
  if (f.empty()) throw InvalidArgument("koszul: empty sequence");
  for (const auto& p : f)
    if (!same_ring(p.ring(), f[0].ring())) throw InvalidArgument("koszul: generators live in different rings");
}

std::size_t index_of(const std::vector<std::vector<int>>& basis, const std::vector<int>& s) {
  auto it = std::lower_bound(basis.begin(), basis.end(), s);
  return static_cast<std::size_t>(it - basis.begin());
}

}  // namespace

ChainComplex koszul(const std::vector<Polynomial>& f) {
  check_ring(f);
  const int n = static_cast<int>(f.size());
  ChainComplex k;
  k.ring = f[0].ring();
  k.koszul_sequence = f;
  for (int r = 0; r <= n; ++r) k.modules.push_back({subsets(n, r), false});
  k.d.resize(n + 1);
  k.d[0] = PolyMatrix(k.ring, 0, k.rank(0));
  for (int r = 1; r <= n; ++r) {
    PolyMatrix m(k.ring, k.rank(r - 1), k.rank(r));
    const auto& src = k.modules[r].basis;
    const auto& dst = k.modules[r - 1].basis;
    for (std::size_t c = 0; c < src.size(); ++c) {
      for (int j = 0; j < r; ++j) {
        std::vector<int> t = src[c];
        const int i = t[j];
        t.erase(t.begin() + j);
        const Polynomial term = f[i - 1];
        m(index_of(dst, t), c) = j % 2 ? -term : term;
      }
    }
    k.d[r] = m;
  }
  return k;
}

ChainComplex dual(const ChainComplex& k) {
  const int n = k.top();
  ChainComplex out;
  out.ring = k.ring;
  for (int r = 0; r <= n; ++r) {
    BasedFreeModule m = k.modules[n - r];
    m.dual = !m.dual;
    out.modules.push_back(m);
  }
  out.d.resize(n + 1);
  out.d[0] = PolyMatrix(k.ring, 0, out.rank(0));
  for (int r = 1; r <= n; ++r) {
    PolyMatrix t = k.d[n - r + 1].transpose();
    out.d[r] = (r - 1) % 2 ? t.scaled(Polynomial::constant(k.ring, -1)) : t;
  }
  return out;
}

DualityResult koszul_duality(const ChainComplex& k, const FieldElem& chi) {
  if (k.koszul_sequence.empty()) throw InvalidArgument("koszul_duality: not a Koszul complex");
  if (chi.is_zero()) throw InvalidArgument("koszul_duality: chi must be a unit");
  const int n = k.top();
  DualityResult res;
  res.phi.source = k;
  res.phi.target = dual(k);
  const Polynomial c = Polynomial::constant(k.ring, chi);
  for (int r = 0; r <= n; ++r) {
    const auto& src = k.modules[r].basis;
    const auto& dst = res.phi.target.modules[r].basis;
    PolyMatrix m(k.ring, dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      const auto sc = complement(src[j], n);
      m(index_of(dst, sc), j) = shuffle_sign(src[j], sc) < 0 ? -c : c;
    }
    res.phi.f.push_back(m);
  }
  res.chain_map = res.phi.commutes();
  res.symmetric = true;
  for (int r = 0; r <= n; ++r) {
    PolyMatrix lhs = res.phi.f[n - r].transpose();
    PolyMatrix rhs = res.phi.f[r];
    if ((r * (n - r)) % 2) rhs = rhs.scaled(Polynomial::constant(k.ring, -1));
    if (lhs != rhs) res.symmetric = false;
  }
  return res;
}

ChainMap multiplication_map(const ChainComplex& k, const Polynomial& t) {
  ChainMap m;
  m.source = k;
  m.target = k;
  const Polynomial tt = convert(t, k.ring);
  for (int r = 0; r <= k.top(); ++r) m.f.push_back(PolyMatrix::identity(k.ring, k.rank(r)).scaled(tt));
  return m;
}

ChainComplex cone(const ChainMap& f) {
  if (!(f.source == f.target)) throw InvalidArgument("cone: source and target differ");
  const ChainComplex& k = f.source;
  const int n = k.top();
  const RingPtr& R = k.ring;
  const int newindex = static_cast<int>(k.koszul_sequence.size()) + 1;
  ChainComplex c;
  c.ring = R;
  for (int r = 0; r <= n + 1; ++r) {
    BasedFreeModule m;
    if (r <= n) m.basis = k.modules[r].basis;
    if (r >= 1)
      for (auto s : k.modules[r - 1].basis) {
        s.push_back(newindex);
        m.basis.push_back(s);
      }
    c.modules.push_back(m);
  }
  c.d.resize(n + 2);
  c.d[0] = PolyMatrix(R, 0, c.rank(0));
  for (int r = 1; r <= n + 1; ++r) {
    PolyMatrix m(R, c.rank(r - 1), c.rank(r));
    const std::size_t a_rows = k.rank(r - 1);  // K_{r-1} block of the target
    const std::size_t a_cols = k.rank(r);      // K_r block of the source
    if (r <= n)
      for (std::size_t i = 0; i < k.rank(r - 1); ++i)
        for (std::size_t j = 0; j < k.rank(r); ++j) m(i, j) = k.d[r](i, j);
    const bool negative = r % 2 == 0;
    for (std::size_t i = 0; i < k.rank(r - 1); ++i)
      for (std::size_t j = 0; j < k.rank(r - 1); ++j) {
        const Polynomial& x = f.f[r - 1](i, j);
        m(i, a_cols + j) = negative ? -x : x;
      }
    if (r >= 2)
      for (std::size_t i = 0; i < k.rank(r - 2); ++i)
        for (std::size_t j = 0; j < k.rank(r - 1); ++j) m(a_rows + i, a_cols + j) = k.d[r - 1](i, j);
    c.d[r] = m;
  }
  if (!k.koszul_sequence.empty() && f.f.size() > 0) {
    // The cone of multiplication by a scalar t on a Koszul complex is again Koszul.
    const Polynomial& t = f.f[0](0, 0);
    bool scalar = true;
    for (int r = 0; r <= n && scalar; ++r)
      if (f.f[r] != PolyMatrix::identity(R, k.rank(r)).scaled(t)) scalar = false;
    if (scalar) {
      c.koszul_sequence = k.koszul_sequence;
      c.koszul_sequence.push_back(t);
    }
  }
  return c;
}

ChainComplex reorder_lex(const ChainComplex& k) {
  ChainComplex out = k;
  std::vector<std::vector<std::size_t>> perm(k.modules.size());
  for (std::size_t r = 0; r < k.modules.size(); ++r) {
    auto& p = perm[r];
    p.resize(k.modules[r].rank());
    std::iota(p.begin(), p.end(), 0);
    const auto& b = k.modules[r].basis;
    std::sort(p.begin(), p.end(), [&](std::size_t x, std::size_t y) { return b[x] < b[y]; });
    for (std::size_t i = 0; i < p.size(); ++i) out.modules[r].basis[i] = b[p[i]];
  }
  for (int r = 1; r <= k.top(); ++r) {
    PolyMatrix m(k.ring, k.rank(r - 1), k.rank(r));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = k.d[r](perm[r - 1][i], perm[r][j]);
    out.d[r] = m;
  }
  return out;
}

ElementaryConjugation conjugate_by_elementary(const std::vector<Polynomial>& g,
                                              const std::vector<Polynomial>& g_prime,
                                              const PolyMatrix& delta, const FieldElem& chi) {
  const std::size_t n = g.size();
  if (g_prime.size() != n || delta.rows() != n || delta.cols() != n)
    throw InvalidArgument("conjugate_by_elementary: size mismatch");
  const RingPtr& R = g[0].ring();
  ElementaryConjugation out;
  out.delta = delta;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial s(R);
    for (std::size_t j = 0; j < n; ++j) s += delta(i, j) * g_prime[j];
    if (s != g[i])
      throw Rejected("Delta g' = g fails in row " + std::to_string(i + 1) + ": " + s.to_string() + " != " +
                     g[i].to_string());
  }
  out.det = determinant(delta);
  if (out.det != Polynomial::constant(R, 1)) throw Rejected("det Delta = " + out.det.to_string() + ", not 1");

  const PolyMatrix l1 = adjugate(delta).transpose();  // (Delta^-1)^T
  const ChainComplex kg = koszul(g);
  const ChainComplex kp = koszul(g_prime);
  out.lambda.source = kp;
  out.lambda.target = kg;
  for (int r = 0; r <= static_cast<int>(n); ++r) out.lambda.f.push_back(compound(l1, r));

  const DualityResult phi_g = koszul_duality(kg, chi);
  const DualityResult phi_p = koszul_duality(kp, chi);
  out.lambda_dual.source = phi_g.phi.target;
  out.lambda_dual.target = phi_p.phi.target;
  for (int r = 0; r <= static_cast<int>(n); ++r)
    out.lambda_dual.f.push_back(out.lambda.f[n - r].transpose());

  out.composite.source = kp;
  out.composite.target = phi_p.phi.target;
  for (int r = 0; r <= static_cast<int>(n); ++r) {
    out.composite.f.push_back(out.lambda_dual.f[r] * phi_g.phi.f[r] * out.lambda.f[r]);
    out.discrepancy.push_back(out.composite.f[r] - phi_p.phi.f[r]);
  }
  out.composite_is_chain_map = out.lambda.commutes() && out.lambda_dual.commutes() && out.composite.commutes();
  out.degree0_agrees = out.discrepancy[0].is_zero();
  return out;
}

}  // namespace cwkit
