#pragma once

#include <cstdint>
#include <vector>

#include "filiform/forms.hpp"
#include "filiform/liecore.hpp"

namespace filiform {

// Bilinear product X_i . X_j = L_i X_j. No symmetry is assumed.
template <class S>
struct AffineProduct {
  int n = 0;
  std::vector<Mat<S>> L;

  AffineProduct() = default;
  explicit AffineProduct(int dim) : n(dim), L(dim, zero_mat<S>(dim, dim)) {}

  Vec<S> basis_product(int i, int j) const { return L[i].col(j); }

  Vec<S> operator()(const Vec<S>& x, const Vec<S>& y) const {
    Mat<S> lx = zero_mat<S>(n, n);
    for (int i = 0; i < n; ++i)
      if (!x(i).is_zero()) lx += L[i] * x(i);
    return lx * y;
  }

  // Column j is X_j . y.
  Mat<S> right_mult(const Vec<S>& y) const {
    Mat<S> r = zero_mat<S>(n, n);
    for (int j = 0; j < n; ++j) r.col(j) = L[j] * y;
    return r;
  }

  friend bool operator==(const AffineProduct& a, const AffineProduct& b) {
    if (a.n != b.n) return false;
    for (int i = 0; i < a.n; ++i)
      if (!all_zero(a.L[i] - b.L[i])) return false;
    return true;
  }
};

using QAffine = AffineProduct<Rational>;
using PAffine = AffineProduct<Poly>;

template <class S>
struct AffineFailure {
  int i, j, k;  // k = -1 for a bracket mismatch on the pair (i, j)
  Vec<S> residual;
};

template <class S>
struct AffineCheck {
  std::vector<AffineFailure<S>> bracket;      // X_i.X_j - X_j.X_i - [X_i,X_j]
  std::vector<AffineFailure<S>> associator;   // (X_i,X_j,X_k) - (X_j,X_i,X_k)
  bool ok() const { return bracket.empty() && associator.empty(); }
};

template <class S>
AffineCheck<S> check_left_symmetric(const AffineProduct<S>& p, const StructureTable<S>& t) {
  int n = t.dim();
  if (p.n != n || static_cast<int>(p.L.size()) != n) throw std::invalid_argument("affine product dimension mismatch");
  AffineCheck<S> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec<S> r = p.basis_product(i, j) - p.basis_product(j, i) - t.bracket_basis(i, j);
      if (!all_zero(r)) out.bracket.push_back({i, j, -1, std::move(r)});
    }
  // The associator is symmetric in its first two slots iff
  // [L_i, L_j] = L_{X_i.X_j - X_j.X_i}; column k of the difference is the residual on (i, j, k).
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat<S> d = commutator(p.L[i], p.L[j]);
      Vec<S> c = p.basis_product(i, j) - p.basis_product(j, i);
      for (int m = 0; m < n; ++m)
        if (!c(m).is_zero()) d -= p.L[m] * c(m);
      for (int k = 0; k < n; ++k)
        if (!all_zero(d.col(k))) out.associator.push_back({i, j, k, Vec<S>(d.col(k))});
    }
  return out;
}

// L_0 = ad X_0, L_i = [L_0, L_{i-1}] for i >= 2.
template <class S>
AffineProduct<S> adjoint_type_build(const StructureTable<S>& t, const Mat<S>& l1) {
  int n = t.dim();
  if (n < 2 || l1.rows() != n || l1.cols() != n) throw std::invalid_argument("adjoint_type_build: L1 has the wrong shape");
  AffineProduct<S> p(n);
  p.L[0] = ad_basis(t, 0);
  p.L[1] = l1;
  for (int i = 2; i < n; ++i) p.L[i] = commutator(p.L[0], p.L[i - 1]);
  return p;
}

// The two L_1 seeds on T^2_t(8) in the Vergne basis, symbols t and alpha1..alpha6.
PMat t2t8_affine_seed(int variant);

// X.Y = f(X)Y with theta(f(X)Y, Z) = -theta(Y, [X, Z]). Throws on degenerate theta.
QAffine affine_from_symplectic(const QTable& t, const QForm& theta);

struct CompletenessReport {
  bool complete = true;
  std::vector<Rational> traces;        // tr R_{X_j}
  std::vector<int> non_nilpotent;      // basis j with R_{X_j}^n != 0
  int random_failures = 0;             // random Y with R_Y^n != 0
};
CompletenessReport completeness(const QAffine& p, std::uint64_t seed = 0, int random_probes = 20);
inline bool is_complete(const QAffine& p) { return completeness(p).complete; }

// nabla = (s + mu)/2 with mu the commutator and s the symmetrisation.
struct PolarizationReport {
  std::vector<AffineFailure<Rational>> a_residuals;      // A(X_i, X_j, X_k) != 0
  std::vector<AffineFailure<Rational>> cyclic_residuals; // cyclic sum of A minus 2 * cyclic sum of mu(s(.,.),.)
  bool ok() const { return a_residuals.empty(); }
  bool cyclic_holds() const { return cyclic_residuals.empty(); }
};
PolarizationReport polarization_check(const QAffine& p);

QAffine instantiate(const PAffine& p, const std::map<VarId, Rational>& at);

}  // namespace filiform
