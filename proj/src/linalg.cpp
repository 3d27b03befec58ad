#include "filiform/linalg.hpp"

#include <bit>

namespace filiform {

namespace {

using ZRow = std::vector<mpz_class>;

std::vector<ZRow> integer_rows(const QMat& m) {
  std::vector<ZRow> a(m.rows(), ZRow(m.cols()));
  for (Index i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (Index j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).raw().get_den_mpz_t());
    for (Index j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).raw().get_num() * (l / m(i, j).raw().get_den());
  }
  return a;
}

// In-place fraction-free elimination. Returns pivot columns; the sign of row swaps in *swaps.
std::vector<Index> bareiss(std::vector<ZRow>& a, Index cols, int* swaps) {
  std::vector<Index> piv;
  Index rows = static_cast<Index>(a.size());
  mpz_class prev = 1;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      if (swaps) *swaps = -*swaps;
    }
    for (Index i = r + 1; i < rows; ++i) {
      for (Index j = c + 1; j < cols; ++j) {
        a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

Echelon echelon(const QMat& m) {
  Echelon e;
  auto a = integer_rows(m);
  Index cols = m.cols();
  e.pivots = bareiss(a, cols, nullptr);
  e.rank = static_cast<Index>(e.pivots.size());
  std::vector<bool> is_pivot(cols, false);
  for (Index c : e.pivots) is_pivot[c] = true;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVec x = zero_vec<Rational>(cols);
    x(f) = Rational(1);
    for (Index r = e.rank - 1; r >= 0; --r) {
      Index pc = e.pivots[r];
      mpq_class s = 0;
      for (Index j = pc + 1; j < cols; ++j)
        if (a[r][j] != 0 && !x(j).is_zero()) s += mpq_class(a[r][j]) * x(j).raw();
      x(pc) = Rational(mpq_class(-s / a[r][pc]));
    }
    e.kernel.push_back(std::move(x));
  }
  return e;
}

Rational det(const QMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of a non-square matrix");
  Index n = m.rows();
  if (n == 0) return Rational(1);
  auto a = integer_rows(m);
  mpz_class scale = 1;
  for (Index i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (Index j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).raw().get_den_mpz_t());
    scale *= l;
  }
  int sign = 1;
  auto piv = bareiss(a, n, &sign);
  if (static_cast<Index>(piv.size()) < n) return Rational(0);
  return Rational(mpq_class(sign * a[n - 1][n - 1], scale));
}

Poly det(const PMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of a non-square matrix");
  Index n = m.rows();
  if (n == 0) return Poly(1);
  if (n > 24) throw std::invalid_argument("symbolic determinant too large");
  // Laplace along rows, memoised on the set of still-available columns.
  std::unordered_map<std::uint32_t, Poly> memo;
  auto rec = [&](auto& self, Index row, std::uint32_t cols) -> Poly {
    if (row == n) return Poly(1);
    auto it = memo.find(cols);
    if (it != memo.end()) return it->second;
    Poly sum;
    int k = 0;
    for (Index c = 0; c < n; ++c) {
      if (!(cols >> c & 1u)) continue;
      if (!m(row, c).is_zero()) {
        Poly minor = self(self, row + 1, cols & ~(1u << c));
        if (!minor.is_zero()) {
          Poly t = m(row, c) * minor;
          if (k % 2) sum -= t; else sum += t;
        }
      }
      ++k;
    }
    memo.emplace(cols, sum);
    return sum;
  };
  return rec(rec, 0, n == 32 ? ~0u : ((1u << n) - 1));
}

Poly pfaffian(const PMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("pfaffian of a non-square matrix");
  Index n = a.rows();
  if (n % 2) return Poly(0);
  if (n == 0) return Poly(1);
  if (n > 30) throw std::invalid_argument("symbolic pfaffian too large");
  std::unordered_map<std::uint32_t, Poly> memo;
  auto rec = [&](auto& self, std::uint32_t set) -> Poly {
    if (set == 0) return Poly(1);
    auto it = memo.find(set);
    if (it != memo.end()) return it->second;
    int i = std::countr_zero(set);
    std::uint32_t rest = set & ~(1u << i);
    Poly sum;
    int k = 0;
    for (int j = i + 1; j < n; ++j) {
      if (!(rest >> j & 1u)) continue;
      if (!a(i, j).is_zero()) {
        Poly sub = self(self, rest & ~(1u << j));
        if (!sub.is_zero()) {
          Poly t = a(i, j) * sub;
          if (k % 2) sum -= t; else sum += t;
        }
      }
      ++k;
    }
    memo.emplace(set, sum);
    return sum;
  };
  return rec(rec, (1u << n) - 1);
}

std::optional<QMat> inverse(const QMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  Index n = m.rows();
  QMat aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = QMat::Identity(n, n);
  for (Index c = 0; c < n; ++c) {
    Index p = c;
    while (p < n && aug(p, c).is_zero()) ++p;
    if (p == n) return std::nullopt;
    if (p != c) aug.row(p).swap(aug.row(c));
    Rational inv = Rational(1) / aug(c, c);
    for (Index j = 0; j < 2 * n; ++j) aug(c, j) *= inv;
    for (Index i = 0; i < n; ++i) {
      if (i == c || aug(i, c).is_zero()) continue;
      Rational f = aug(i, c);
      for (Index j = 0; j < 2 * n; ++j)
        if (!aug(c, j).is_zero()) aug(i, j) -= f * aug(c, j);
    }
  }
  return QMat(aug.rightCols(n));
}

std::vector<Index> independent_rows(const QMat& m) {
  // Pivots of the transpose's echelon form are the independent rows of m.
  return echelon(m.transpose()).pivots;
}

QMat eval(const PMat& m, const std::map<VarId, Rational>& at) {
  QMat out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).eval(at);
  return out;
}

QVec eval(const PVec& v, const std::map<VarId, Rational>& at) {
  QVec out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = v(i).eval(at);
  return out;
}

}  // namespace filiform
