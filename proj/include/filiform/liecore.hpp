#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <stdexcept>
#include <string>
#include <vector>

#include "filiform/linalg.hpp"

namespace filiform {

// Structure constants C_{i,j}^k of an n-dimensional algebra in a fixed basis
// X_0..X_{n-1}. Storage is dense and keeps both orientations, so C(j,i,k) = -C(i,j,k).
template <class S>
class StructureTable {
 public:
  StructureTable() = default;
  explicit StructureTable(int n) : n_(n), c_(static_cast<size_t>(n) * n * n, S(0)) {}

  int dim() const { return n_; }

  const S& operator()(int i, int j, int k) const { return c_[idx(i, j, k)]; }

  void set(int i, int j, int k, const S& v) {
    check(i, j, k);
    if (i == j) {
      if (!v.is_zero()) throw std::invalid_argument("bracket [X_i, X_i] must vanish");
      return;
    }
    c_[idx(i, j, k)] = v;
    c_[idx(j, i, k)] = -v;
  }
  void add(int i, int j, int k, const S& v) { set(i, j, k, (*this)(i, j, k) + v); }

  Vec<S> bracket_basis(int i, int j) const {
    Vec<S> v(n_);
    for (int k = 0; k < n_; ++k) v(k) = (*this)(i, j, k);
    return v;
  }

  bool pair_is_zero(int i, int j) const {
    for (int k = 0; k < n_; ++k)
      if (!(*this)(i, j, k).is_zero()) return false;
    return true;
  }

  // Pairs i < j with a nonzero bracket.
  std::vector<std::pair<int, int>> nonzero_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (!pair_is_zero(i, j)) out.emplace_back(i, j);
    return out;
  }

  friend bool operator==(const StructureTable& a, const StructureTable& b) { return a.n_ == b.n_ && a.c_ == b.c_; }
  friend bool operator!=(const StructureTable& a, const StructureTable& b) { return !(a == b); }

 private:
  size_t idx(int i, int j, int k) const { return (static_cast<size_t>(i) * n_ + j) * n_ + k; }
  void check(int i, int j, int k) const {
    if (i < 0 || j < 0 || k < 0 || i >= n_ || j >= n_ || k >= n_)
      throw std::out_of_range("structure constant index out of range");
  }
  int n_ = 0;
  std::vector<S> c_;
};

using QTable = StructureTable<Rational>;
using PTable = StructureTable<Poly>;

template <class S>
Vec<S> bracket(const StructureTable<S>& t, const Vec<S>& x, const Vec<S>& y) {
  int n = t.dim();
  if (x.size() != n || y.size() != n) throw std::invalid_argument("bracket: vector length mismatch");
  Vec<S> out = zero_vec<S>(n);
  for (int i = 0; i < n; ++i) {
    if (x(i).is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (i == j || y(j).is_zero()) continue;
      S xy = x(i) * y(j);
      for (int k = 0; k < n; ++k)
        if (!t(i, j, k).is_zero()) out(k) += xy * t(i, j, k);
    }
  }
  return out;
}

// [X_i, v] for a basis vector X_i.
template <class S>
Vec<S> bracket_with(const StructureTable<S>& t, int i, const Vec<S>& v) {
  int n = t.dim();
  Vec<S> out = zero_vec<S>(n);
  for (int j = 0; j < n; ++j) {
    if (v(j).is_zero() || j == i) continue;
    for (int k = 0; k < n; ++k)
      if (!t(i, j, k).is_zero()) out(k) += v(j) * t(i, j, k);
  }
  return out;
}

// Matrix of ad x: column j is [x, X_j].
template <class S>
Mat<S> ad(const StructureTable<S>& t, const Vec<S>& x) {
  int n = t.dim();
  Mat<S> m = zero_mat<S>(n, n);
  for (int j = 0; j < n; ++j) m.col(j) = bracket(t, x, unit_vec<S>(n, j));
  return m;
}

template <class S>
Mat<S> ad_basis(const StructureTable<S>& t, int i) {
  int n = t.dim();
  Mat<S> m = zero_mat<S>(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(k, j) = t(i, j, k);
  return m;
}

// J(X_i,X_j,X_k) = [[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j]
template <class S>
Vec<S> jacobi_residual(const StructureTable<S>& t, int i, int j, int k) {
  auto term = [&](int a, int b, int c) {
    // [[X_a,X_b],X_c] = -[X_c, [X_a,X_b]]
    Vec<S> ab = t.bracket_basis(a, b);
    Vec<S> r = bracket_with(t, c, ab);
    return Vec<S>(-r);
  };
  Vec<S> r = term(i, j, k);
  r += term(j, k, i);
  r += term(k, i, j);
  return r;
}

template <class S>
struct JacobiFailure {
  int i, j, k;
  Vec<S> residual;
};

// Empty result means the Jacobi identity holds (identically, for polynomial entries).
template <class S>
std::vector<JacobiFailure<S>> check_jacobi(const StructureTable<S>& t) {
  std::vector<JacobiFailure<S>> out;
  int n = t.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Vec<S> r = jacobi_residual(t, i, j, k);
        if (!all_zero(r)) out.push_back({i, j, k, std::move(r)});
      }
  return out;
}

template <class S, class F>
auto map_table(const StructureTable<S>& t, F f) {
  using R = decltype(f(std::declval<const S&>()));
  int n = t.dim();
  StructureTable<R> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!t(i, j, k).is_zero()) out.set(i, j, k, f(t(i, j, k)));
  return out;
}

QTable instantiate(const PTable& t, const std::map<VarId, Rational>& at);
PTable substitute(const PTable& t, const std::map<VarId, Poly>& at);
PTable to_poly(const QTable& t);
std::set<VarId> variables(const PTable& t);

QTable abelian(int n);
QTable heisenberg3();
// The model filiform algebra L_n: [X_0, X_i] = X_{i+1}, 1 <= i <= n-2.
QTable model_filiform(int n);

struct CentralSeries {
  std::vector<int> descending;  // dim C^0 = n, dim C^1 = dim [g,g], ... until stable
  std::vector<int> ascending;   // dim C_0 = 0, dim C_1 = dim Z, ... until stable
  std::vector<QMat> descending_bases;  // columns span C^i
  std::vector<QMat> ascending_bases;   // columns span C_i
  std::optional<int> nilindex;  // least i with C^i = 0
};

CentralSeries central_series(const QTable& t);
bool is_nilpotent(const QTable& t);
bool is_filiform(const QTable& t);

// Column space helpers.
QMat column_basis(const QMat& m);
bool same_span(const QMat& a, const QMat& b);
bool in_span(const QMat& basis, const QVec& v);

// Jordan block sizes of the nilpotent map ad x, decreasing.
std::vector<int> characteristic_sequence(const QTable& t, const QVec& x);

struct CharSeqProbe {
  std::vector<int> sequence;
  QVec witness;
  bool certified = false;  // reached (n-1, 1), which is the maximum possible
};
// Maximum over basis vectors, X_0 + c X_i on a small grid, and seeded random
// vectors outside the derived algebra.
CharSeqProbe characteristic_sequence_max(const QTable& t, std::uint64_t seed = 0, int random_probes = 20);

QMat center(const QTable& t);  // columns span Z(g)
// Requires Z(g) = span of the trailing basis vectors; throws otherwise.
QTable quotient_by_center(const QTable& t);
// [x,y]' = P^{-1}[Px,Py]; throws on singular P.
QTable change_basis(const QTable& t, const QMat& p);

}  // namespace filiform
