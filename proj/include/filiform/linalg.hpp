#pragma once

#include <Eigen/Core>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "filiform/poly.hpp"
#include "filiform/rational.hpp"

namespace filiform {

template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using QVec = Vec<Rational>;
using QMat = Mat<Rational>;
using PVec = Vec<Poly>;
using PMat = Mat<Poly>;
using Index = Eigen::Index;

template <class S>
Vec<S> zero_vec(Index n) {
  return Vec<S>::Constant(n, S(0));
}
template <class S>
Mat<S> zero_mat(Index r, Index c) {
  return Mat<S>::Constant(r, c, S(0));
}
template <class S>
Vec<S> unit_vec(Index n, Index i) {
  Vec<S> v = zero_vec<S>(n);
  v(i) = S(1);
  return v;
}

template <class Derived>
bool all_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

struct Echelon {
  Index rank = 0;
  std::vector<Index> pivots;     // pivot column per echelon row
  std::vector<QVec> kernel;      // basis of the right null space
};

// Fraction-free (Bareiss) row echelon on integer-scaled rows, exact back substitution
// for the kernel basis. Kernel vectors have a 1 in their free column.
Echelon echelon(const QMat& m);
inline Index rank(const QMat& m) { return echelon(m).rank; }
inline std::vector<QVec> kernel(const QMat& m) { return echelon(m).kernel; }

Rational det(const QMat& m);
Poly det(const PMat& m);
Poly pfaffian(const PMat& skew);
std::optional<QMat> inverse(const QMat& m);

// Row indices forming a basis of the row space (first independent rows in order).
std::vector<Index> independent_rows(const QMat& m);

QMat eval(const PMat& m, const std::map<VarId, Rational>& at);
QVec eval(const PVec& v, const std::map<VarId, Rational>& at);

template <class S>
Mat<S> commutator(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> out = a * b;
  out -= b * a;
  return out;
}

// Lift a rational matrix into polynomial entries.
template <class Derived>
PMat to_poly(const Eigen::MatrixBase<Derived>& m) {
  PMat out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = Poly(m(i, j));
  return out;
}

}  // namespace filiform
