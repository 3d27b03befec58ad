#include "filiform/liecore.hpp"

#include <algorithm>
#include <random>

namespace filiform {

QTable instantiate(const PTable& t, const std::map<VarId, Rational>& at) {
  return map_table(t, [&](const Poly& p) { return p.eval(at); });
}

PTable substitute(const PTable& t, const std::map<VarId, Poly>& at) {
  return map_table(t, [&](const Poly& p) { return p.subs(at); });
}

PTable to_poly(const QTable& t) {
  return map_table(t, [](const Rational& r) { return Poly(r); });
}

std::set<VarId> variables(const PTable& t) {
  std::set<VarId> out;
  int n = t.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (VarId v : t(i, j, k).variables()) out.insert(v);
  return out;
}

QTable abelian(int n) { return QTable(n); }

QTable heisenberg3() {
  QTable t(3);
  t.set(0, 1, 2, 1);
  return t;
}

QTable model_filiform(int n) {
  QTable t(n);
  for (int i = 1; i + 1 < n; ++i) t.set(0, i, i + 1, 1);
  return t;
}

QMat column_basis(const QMat& m) {
  auto rows = independent_rows(m.transpose());
  QMat out(m.rows(), static_cast<Index>(rows.size()));
  for (size_t c = 0; c < rows.size(); ++c) out.col(static_cast<Index>(c)) = m.col(rows[c]);
  return out;
}

bool in_span(const QMat& basis, const QVec& v) {
  if (basis.cols() == 0) return all_zero(v);
  QMat aug(basis.rows(), basis.cols() + 1);
  aug << basis, v;
  return rank(aug) == rank(basis);
}

bool same_span(const QMat& a, const QMat& b) {
  Index ra = a.cols() ? rank(a) : 0, rb = b.cols() ? rank(b) : 0;
  if (ra != rb) return false;
  if (ra == 0) return true;
  QMat aug(a.rows(), a.cols() + b.cols());
  aug << a, b;
  return rank(aug) == ra;
}

namespace {

QMat hstack(const std::vector<QVec>& cols, Index n) {
  QMat m(n, static_cast<Index>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c) m.col(static_cast<Index>(c)) = cols[c];
  return m;
}

// Rows spanning the annihilator of the column space of b (b has n rows).
QMat annihilator(const QMat& b, Index n) {
  if (b.cols() == 0) return QMat(QMat::Identity(n, n));
  auto k = kernel(QMat(b.transpose()));
  QMat out(static_cast<Index>(k.size()), n);
  for (size_t r = 0; r < k.size(); ++r) out.row(static_cast<Index>(r)) = k[r].transpose();
  return out;
}

}  // namespace

CentralSeries central_series(const QTable& t) {
  CentralSeries cs;
  int n = t.dim();
  std::vector<QMat> ads;
  for (int i = 0; i < n; ++i) ads.push_back(ad_basis(t, i));

  QMat cur = QMat::Identity(n, n);
  cs.descending.push_back(n);
  cs.descending_bases.push_back(cur);
  if (n == 0) cs.nilindex = 0;
  while (cur.cols() > 0) {
    std::vector<QVec> gens;
    for (int i = 0; i < n; ++i)
      for (Index c = 0; c < cur.cols(); ++c) {
        QVec v = ads[i] * cur.col(c);
        if (!all_zero(v)) gens.push_back(v);
      }
    QMat next = gens.empty() ? QMat(n, 0) : column_basis(hstack(gens, n));
    if (next.cols() == cur.cols()) break;
    cur = next;
    cs.descending.push_back(static_cast<int>(cur.cols()));
    cs.descending_bases.push_back(cur);
    if (cur.cols() == 0) cs.nilindex = static_cast<int>(cs.descending.size()) - 1;
  }

  // C_{i+1} = { x : [x, X_j] in C_i for all j }, i.e. Q ad(X_j) x = 0 with Q the annihilator of C_i.
  QMat up(n, 0);
  cs.ascending.push_back(0);
  cs.ascending_bases.push_back(up);
  for (;;) {
    QMat q = annihilator(up, n);
    QMat sys(q.rows() * n, n);
    for (int j = 0; j < n; ++j) sys.middleRows(q.rows() * j, q.rows()) = q * ads[j];
    auto ker = sys.rows() ? kernel(sys) : std::vector<QVec>{};
    QMat next = sys.rows() ? hstack(ker, n) : QMat(QMat::Identity(n, n));
    if (next.cols() == up.cols()) break;
    up = next;
    cs.ascending.push_back(static_cast<int>(up.cols()));
    cs.ascending_bases.push_back(up);
    if (up.cols() == n) break;
  }
  return cs;
}

bool is_nilpotent(const QTable& t) { return central_series(t).nilindex.has_value(); }

bool is_filiform(const QTable& t) {
  int n = t.dim();
  auto cs = central_series(t);
  if (!cs.nilindex) return false;
  for (int i = 0; i <= n - 2; ++i) {
    if (i >= static_cast<int>(cs.ascending.size())) return false;
    if (cs.ascending[i] != i) return false;
  }
  return true;
}

std::vector<int> characteristic_sequence(const QTable& t, const QVec& x) {
  int n = t.dim();
  QMat a = ad(t, x);
  std::vector<Index> ranks{n};
  QMat power = QMat::Identity(n, n);
  for (int k = 1; k <= n; ++k) {
    power = QMat(power * a);
    ranks.push_back(rank(power));
    if (ranks.back() == 0) break;
  }
  if (ranks.back() != 0) throw std::invalid_argument("ad x is not nilpotent");
  // blocks of size >= k: r_{k-1} - r_k; of size exactly k: that minus the next count.
  std::vector<int> parts;
  for (size_t k = 1; k < ranks.size(); ++k) {
    Index at_least = ranks[k - 1] - ranks[k];
    Index at_least_next = (k + 1 < ranks.size()) ? ranks[k] - ranks[k + 1] : 0;
    for (Index c = 0; c < at_least - at_least_next; ++c) parts.push_back(static_cast<int>(k));
  }
  std::sort(parts.rbegin(), parts.rend());
  return parts;
}

CharSeqProbe characteristic_sequence_max(const QTable& t, std::uint64_t seed, int random_probes) {
  int n = t.dim();
  CharSeqProbe best;
  if (n == 0) return best;
  auto cs = central_series(t);
  QMat derived = cs.descending_bases.size() > 1 ? cs.descending_bases[1] : QMat(n, 0);

  std::vector<QVec> probes;
  for (int i = 0; i < n; ++i) probes.push_back(unit_vec<Rational>(n, i));
  for (int i = 1; i < n; ++i)
    for (long c : {-1L, 1L, 2L}) {
      QVec v = unit_vec<Rational>(n, 0);
      v(i) += Rational(c);
      probes.push_back(v);
    }
  std::mt19937_64 rng(seed);
  for (int r = 0; r < random_probes; ++r) {
    QVec v(n);
    for (int i = 0; i < n; ++i) v(i) = Rational(static_cast<long>(rng() % 7) - 3);
    probes.push_back(v);
  }
  for (auto& v : probes) {
    if (all_zero(v) || in_span(derived, v)) continue;
    auto seq = characteristic_sequence(t, v);
    if (best.sequence.empty() || seq > best.sequence) {
      best.sequence = seq;
      best.witness = v;
    }
  }
  best.certified = best.sequence == std::vector<int>{n - 1, 1} || (n == 1 && best.sequence == std::vector<int>{1});
  return best;
}

QMat center(const QTable& t) {
  int n = t.dim();
  QMat sys(n * n, n);
  for (int j = 0; j < n; ++j) sys.middleRows(n * j, n) = ad_basis(t, j);
  return hstack(kernel(sys), n);
}

QTable quotient_by_center(const QTable& t) {
  int n = t.dim();
  QMat z = center(t);
  Index d = z.cols();
  QMat trailing = QMat::Zero(n, d);
  for (Index c = 0; c < d; ++c) trailing(n - d + c, c) = Rational(1);
  if (!same_span(z, trailing))
    throw std::domain_error("center is not spanned by the trailing basis vectors");
  int m = n - static_cast<int>(d);
  QTable q(m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = 0; k < m; ++k)
        if (!t(i, j, k).is_zero()) q.set(i, j, k, t(i, j, k));
  return q;
}

QTable change_basis(const QTable& t, const QMat& p) {
  int n = t.dim();
  auto pinv = inverse(p);
  if (!pinv) throw std::invalid_argument("change_basis: singular matrix");
  QTable out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      QVec v = *pinv * bracket(t, QVec(p.col(i)), QVec(p.col(j)));
      for (int k = 0; k < n; ++k)
        if (!v(k).is_zero()) out.set(i, j, k, v(k));
    }
  return out;
}

}  // namespace filiform
