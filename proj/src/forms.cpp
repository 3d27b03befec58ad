#include "filiform/forms.hpp"

#include <random>

namespace filiform {

bool is_contact_form(const QTable& t, const QForm& w) {
  if (w.degree() != 1) throw std::invalid_argument("contact test expects a nonzero 1-form");
  return !contact_volume(t, w).is_zero();
}

bool is_contact_form_by_rank(const QTable& t, const QForm& w) {
  int n = t.dim();
  if (n % 2 == 0) throw std::invalid_argument("contact forms need odd dimension");
  if (w.degree() != 1) throw std::invalid_argument("contact test expects a nonzero 1-form");
  QMat row = QMat::Zero(1, n);
  for (auto& [m, c] : w.terms()) row(0, std::countr_zero(m)) = c;
  auto ker = kernel(row);
  QMat b(n, static_cast<Index>(ker.size()));
  for (size_t c = 0; c < ker.size(); ++c) b.col(static_cast<Index>(c)) = ker[c];
  QMat g = gram(d_one_form(t, w));
  return rank(QMat(b.transpose() * g * b)) == n - 1;
}

bool is_contact_algebra(const QTable& t) {
  int n = t.dim();
  if (n % 2 == 0) throw std::invalid_argument("contact algebra test needs odd dimension");
  if (!is_filiform(t)) throw std::invalid_argument("contact algebra test needs a filiform algebra");
  return is_contact_form(t, one_form<Rational>(n, n - 1));
}

std::vector<QForm> closed_two_form_basis(const QTable& t) {
  int n = t.dim();
  std::vector<std::pair<int, int>> pairs;
  std::map<std::pair<int, int>, Index> col;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      col[{i, j}] = static_cast<Index>(pairs.size());
      pairs.emplace_back(i, j);
    }
  auto slot = [&](int a, int b, Rational c, QVec& row) {
    if (a == b || c.is_zero()) return;
    if (a < b)
      row(col[{a, b}]) += c;
    else
      row(col[{b, a}]) -= c;
  };
  std::vector<QVec> rows;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        QVec row = zero_vec<Rational>(static_cast<Index>(pairs.size()));
        int trip[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
        for (auto& tr : trip)
          for (int m = 0; m < n; ++m) slot(m, tr[2], t(tr[0], tr[1], m), row);
        if (!all_zero(row)) rows.push_back(row);
      }
  QMat sys(static_cast<Index>(rows.size()), static_cast<Index>(pairs.size()));
  for (size_t r = 0; r < rows.size(); ++r) sys.row(static_cast<Index>(r)) = rows[r].transpose();
  std::vector<QVec> ker;
  if (rows.empty()) {
    for (size_t c = 0; c < pairs.size(); ++c) ker.push_back(unit_vec<Rational>(static_cast<Index>(pairs.size()), static_cast<Index>(c)));
  } else {
    ker = kernel(sys);
  }
  std::vector<QForm> out;
  for (auto& v : ker) {
    QForm f(n);
    for (size_t c = 0; c < pairs.size(); ++c)
      f.add((Mask(1) << pairs[c].first) | (Mask(1) << pairs[c].second), v(static_cast<Index>(c)));
    out.push_back(f);
  }
  return out;
}

bool is_nondegenerate(const QForm& theta) {
  if (theta.dim() % 2) return false;
  return !det(gram(theta)).is_zero();
}

SymplecticResult symplectic_exists(const QTable& t, std::uint64_t seed, int random_points) {
  SymplecticResult res;
  int n = t.dim();
  if (n % 2) throw std::invalid_argument("symplectic test needs even dimension");
  auto basis = closed_two_form_basis(t);
  res.closed_dim = static_cast<int>(basis.size());
  if (n == 0) {
    res.exists = true;
    res.witness = QForm(0);
    res.method = "random";
    return res;
  }
  auto combine = [&](const std::vector<Rational>& c) {
    QForm f(n);
    for (size_t r = 0; r < basis.size(); ++r) f += c[r] * basis[r];
    return f;
  };
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < random_points && !basis.empty(); ++trial) {
    std::vector<Rational> c;
    for (size_t r = 0; r < basis.size(); ++r) c.emplace_back(static_cast<long>(rng() % 7) - 3);
    QForm f = combine(c);
    if (is_nondegenerate(f)) {
      res.exists = true;
      res.witness = f;
      res.method = "random";
      return res;
    }
  }
  // Exact fallback: Pfaffian of the generic closed form.
  res.method = "symbolic";
  std::vector<VarId> vars;
  PMat g = zero_mat<Poly>(n, n);
  for (size_t r = 0; r < basis.size(); ++r) {
    vars.push_back(intern("_c" + std::to_string(r)));
    QMat gr = gram(basis[r]);
    Poly x = Poly::var(vars.back());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!gr(i, j).is_zero()) g(i, j) += x * Poly(gr(i, j));
  }
  Poly pf = pfaffian(g);
  res.pfaffian = pf;
  if (pf.is_zero()) return res;
  // A nonzero polynomial of degree d in a variable has at most d roots, so one of
  // 0..d keeps it nonzero; fixing variables one at a time yields an exact witness.
  std::vector<Rational> c(basis.size(), Rational(0));
  Poly rest = pf;
  for (size_t r = 0; r < vars.size(); ++r) {
    unsigned d = rest.degree_in(vars[r]);
    for (unsigned v = 0; v <= d + 1; ++v) {
      Poly next = rest.subs(vars[r], Poly(Rational(static_cast<long>(v))));
      if (!next.is_zero()) {
        c[r] = Rational(static_cast<long>(v));
        rest = next;
        break;
      }
    }
  }
  QForm f = combine(c);
  if (!is_nondegenerate(f)) throw std::logic_error("symplectic witness construction failed");
  res.exists = true;
  res.witness = f;
  return res;
}

QTable central_extension(const QTable& t, const QForm& theta) {
  int n = t.dim();
  if (theta.dim() != n) throw std::invalid_argument("central_extension: dimension mismatch");
  if (!is_closed_two_form(t, theta)) throw std::invalid_argument("central_extension: 2-form is not closed");
  QTable out(n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < n; ++k)
        if (!t(i, j, k).is_zero()) out.set(i, j, k, t(i, j, k));
      out.set(i, j, n, theta.value(i, j));
    }
  return out;
}

std::string form_key(Mask m) {
  std::string s;
  for (int i : mask_indices(m)) {
    if (!s.empty()) s += ",";
    s += std::to_string(i);
  }
  return s;
}

}  // namespace filiform
