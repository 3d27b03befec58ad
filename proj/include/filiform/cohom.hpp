#pragma once

#include <optional>
#include <string>
#include <vector>

#include "filiform/families.hpp"
#include "filiform/forms.hpp"

namespace filiform {

// Flattened 2-cochain: one block of n coefficients per pair i < j, pairs in lexicographic order.
int pair_count(int n);
int pair_index(int n, int i, int j);
template <class S>
Vec<S> flatten(const StructureTable<S>& t) {
  int n = t.dim();
  Vec<S> v = zero_vec<S>(pair_count(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) v(pair_index(n, i, j) * n + k) = t(i, j, k);
  return v;
}
template <class S>
StructureTable<S> unflatten(int n, const Vec<S>& v) {
  StructureTable<S> t(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const S& c = v(pair_index(n, i, j) * n + k);
        if (!(c == S(0))) t.set(i, j, k, c);
      }
  return t;
}

// Name of the deformation coordinate attached to a family parameter: a5 -> u5, t -> u_t.
std::string coordinate_name(const std::string& prefix, const std::string& param);

// Derivative of the family pattern along one parameter, evaluated at `at` (constant for linear patterns).
PTable pattern_direction(const FamilyDescriptor& f, const std::string& param);

struct CochainSpace {
  std::string family_id;
  Point base;
  std::vector<std::string> coords;  // u-names, parallel to the family parameters
  QMat directions;                  // column c: flattened cochain for a unit step in coords[c]
  QMat conditions;                  // rows: constraint gradients at the base point
  QMat basis;                       // columns: kernel of `conditions`, in u-coordinates
  int dim() const { return static_cast<int>(basis.cols()); }
  QTable cochain(const QVec& u) const;  // u in coordinate space
};

// Slice families (t9, t1alpha, ...) are handled in their ambient family throughout.
// Zariski tangent space of the family at the base point. Throws ConstraintViolation when the
// base point violates a constraint.
CochainSpace cocycle_space(const FamilyDescriptor& f, const Point& base);

struct DeformationCondition {
  std::string constraint;
  int degree;  // power of t
  Poly poly;   // in the a's and u's
};
// c(a + t u) for every constraint, split by powers of t (degree 0 is the constraint itself).
std::vector<DeformationCondition> deformation_conditions(const FamilyDescriptor& f);

// delta f for the endomorphism fixed by f(X_0) = sum alpha_i X_i, f(X_1) = sum_{i>=1} beta_i X_i and
// f(X_{i+1}) = [f(X_0), X_i] + [X_0, f(X_i)]; uses delta f(X,Y) = [fX,Y] + [X,fY] - f[X,Y].
// Entries are linear in the symbols alpha0.., beta1...
std::vector<std::string> endomorphism_symbols(int n);
PTable coboundary_table(const PTable& mu);

class CochainEscape : public std::runtime_error {
 public:
  CochainEscape(const std::string& what, int i, int j) : std::runtime_error(what), i(i), j(j) {}
  int i, j;
};

struct CoboundaryMap {
  std::vector<std::string> coords;   // v-names parallel to the family parameters
  std::vector<Poly> v;               // coordinates of delta f in the pattern directions
  std::vector<std::string> unknowns; // alpha0.., beta1..
  std::optional<QMat> matrix;        // rows v, columns unknowns; only at numeric base points
};

// Symbolic in the family parameters; needs a pattern that is linear in them and at most one
// constraint. Off-pattern residuals are accepted when they lie in the ideal of that constraint.
CoboundaryMap coboundary_symbolic(const FamilyDescriptor& f);
// At a rational base point.
CoboundaryMap coboundary_space(const FamilyDescriptor& f, const Point& base);

struct H2Result {
  int dim_z = 0;
  int rank_b = 0;
  int dim_h = 0;
};
H2Result h2_dim(const FamilyDescriptor& f, const Point& base);

struct DeformationFailure {
  int i, j, k;
  int degree;
  QVec residual;
};
// mu0 + t psi satisfies Jacobi identically in t; returns the failing t-coefficients.
std::vector<DeformationFailure> check_linear_deformation(const QTable& mu0, const QTable& psi);

struct SymplecticDeformation {
  bool ok = false;
  std::string reason;
};
// Both witnesses are checked symplectic; ok when ext(g1, theta1) = ext(g0, theta0) + psi, psi keeps
// the new central vector central, and psi is a linear deformation of ext(g0, theta0).
SymplecticDeformation symplectic_deformation_check(const QTable& g0, const QForm& theta0, const QTable& g1,
                                                   const QForm& theta1, const QTable& psi);

}  // namespace filiform
