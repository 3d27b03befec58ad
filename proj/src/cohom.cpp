#include "filiform/cohom.hpp"

#include <algorithm>
#include <cctype>

namespace filiform {

int pair_count(int n) { return n * (n - 1) / 2; }

int pair_index(int n, int i, int j) {
  if (i < 0 || j >= n || i >= j) throw std::out_of_range("pair_index: need 0 <= i < j < n");
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::string coordinate_name(const std::string& prefix, const std::string& param) {
  if (param.size() > 1 && param[0] == 'a' &&
      std::all_of(param.begin() + 1, param.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return prefix + param.substr(1);
  return prefix + "_" + param;
}

PTable pattern_direction(const FamilyDescriptor& f, const std::string& param) {
  VarId v = intern(param);
  return map_table(f.pattern, [&](const Poly& p) { return p.derivative(v); });
}

QTable CochainSpace::cochain(const QVec& u) const {
  int n = 0;
  while (pair_count(n) * n < directions.rows()) ++n;
  return unflatten<Rational>(n, QVec(directions * u));
}

namespace {

void require_constraints(const FamilyDescriptor& f, const Point& base) {
  for (auto& r : evaluate_constraints(f, base))
    if (!r.ok && r.name.rfind("nonzero", 0) != 0)
      throw ConstraintViolation("constraint violated at base point: " + r.poly.str() + " = " + r.value.str(), r.poly,
                                r.value);
}

QMat directions_at(const FamilyDescriptor& f, const std::map<VarId, Rational>& at) {
  int n = f.dim;
  QMat d = zero_mat<Rational>(pair_count(n) * n, static_cast<Index>(f.params.size()));
  for (size_t c = 0; c < f.params.size(); ++c) d.col(c) = flatten(instantiate(pattern_direction(f, f.params[c]), at));
  return d;
}

// Rows of the flattened cochain, top-grade components C_{ij}^{n-1} first.
std::vector<Index> preferred_rows(const QMat& dirs, int n) {
  std::vector<Index> order;
  for (Index r = 0; r < dirs.rows(); ++r)
    if (r % n == n - 1) order.push_back(r);
  for (Index r = 0; r < dirs.rows(); ++r)
    if (r % n != n - 1) order.push_back(r);
  QMat reordered(dirs.rows(), dirs.cols());
  for (size_t r = 0; r < order.size(); ++r) reordered.row(r) = dirs.row(order[r]);
  std::vector<Index> picked;
  for (Index r : independent_rows(reordered)) picked.push_back(order[r]);
  return picked;
}

std::pair<int, int> pair_of(int n, Index row) {
  int pair = static_cast<int>(row / n), i = 0;
  while (pair >= n - 1 - i) pair -= n - 1 - i++;
  return {i, i + 1 + pair};
}

// Writes delta in the pattern directions; a residual is accepted when `accept` says it vanishes on
// the family. Throws CochainEscape naming the first pair off the pattern.
template <class Accept>
std::vector<Poly> project(const QMat& dirs, const PVec& delta, int n, Accept accept) {
  auto rows = preferred_rows(dirs, n);
  if (static_cast<Index>(rows.size()) != dirs.cols())
    throw std::logic_error("family pattern directions are linearly dependent");
  QMat sub(rows.size(), dirs.cols());
  PVec rhs(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    sub.row(r) = dirs.row(rows[r]);
    rhs(r) = delta(rows[r]);
  }
  PVec v = to_poly(*inverse(sub)) * rhs;
  PVec back = to_poly(dirs) * v;
  for (Index r = 0; r < delta.size(); ++r)
    if (back(r) != delta(r) && !accept(back(r) - delta(r))) {
      auto [i, j] = pair_of(n, r);
      throw CochainEscape("coboundary leaves the family pattern at (" + std::to_string(i) + "," + std::to_string(j) +
                              ")",
                          i, j);
    }
  return {v.begin(), v.end()};
}

template <class Accept>
CoboundaryMap assemble(const FamilyDescriptor& f, const QMat& dirs, const PTable& mu, Accept accept) {
  CoboundaryMap m;
  for (auto& p : f.params) m.coords.push_back(coordinate_name("v", p));
  m.unknowns = endomorphism_symbols(f.dim);
  m.v = project(dirs, flatten(coboundary_table(mu)), f.dim, accept);
  return m;
}

}  // namespace

CochainSpace cocycle_space(const FamilyDescriptor& family_in, const Point& base) {
  auto [f, full] = ambient_of(family_in, base);
  require_constraints(f, full);
  auto at = to_var_point(full);
  CochainSpace s;
  s.family_id = f.id;
  s.base = full;
  for (auto& p : f.params) s.coords.push_back(coordinate_name("u", p));
  s.directions = directions_at(f, at);
  Index m = static_cast<Index>(f.params.size());
  s.conditions = zero_mat<Rational>(static_cast<Index>(f.constraints.size()), m);
  for (size_t r = 0; r < f.constraints.size(); ++r)
    for (Index c = 0; c < m; ++c) s.conditions(r, c) = f.constraints[r].derivative(intern(f.params[c])).eval(at);
  auto ker = kernel(s.conditions.rows() ? s.conditions : zero_mat<Rational>(1, m));
  s.basis = zero_mat<Rational>(m, static_cast<Index>(ker.size()));
  for (size_t c = 0; c < ker.size(); ++c) s.basis.col(c) = ker[c];
  return s;
}

std::vector<DeformationCondition> deformation_conditions(const FamilyDescriptor& f) {
  VarId t = intern("t");
  std::map<VarId, Poly> shift;
  for (auto& p : f.params) shift[intern(p)] = Poly::var(p) + Poly::var(t) * Poly::var(coordinate_name("u", p));
  std::vector<DeformationCondition> out;
  for (size_t c = 0; c < f.constraints.size(); ++c) {
    Poly e = f.constraints[c].subs(shift);
    for (unsigned k = 0; k <= e.degree_in(t); ++k) {
      Poly part = e.coeff(t, k);
      if (!part.is_zero()) out.push_back({f.constraint_names.at(c), static_cast<int>(k), part});
    }
  }
  return out;
}

std::vector<std::string> endomorphism_symbols(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("alpha" + std::to_string(i));
  for (int i = 1; i < n; ++i) out.push_back("beta" + std::to_string(i));
  return out;
}

PTable coboundary_table(const PTable& mu) {
  int n = mu.dim();
  std::vector<PVec> img(n, zero_vec<Poly>(n));
  for (int i = 0; i < n; ++i) img[0](i) = Poly::var("alpha" + std::to_string(i));
  if (n > 1)
    for (int i = 1; i < n; ++i) img[1](i) = Poly::var("beta" + std::to_string(i));
  PVec x0 = unit_vec<Poly>(n, 0);
  for (int i = 1; i + 1 < n; ++i) img[i + 1] = bracket(mu, img[0], unit_vec<Poly>(n, i)) + bracket(mu, x0, img[i]);
  auto apply = [&](const PVec& v) {
    PVec out = zero_vec<Poly>(n);
    for (int k = 0; k < n; ++k)
      if (!v(k).is_zero()) out += img[k] * v(k);
    return out;
  };
  PTable d(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      PVec ej = unit_vec<Poly>(n, j), ei = unit_vec<Poly>(n, i);
      PVec r = bracket(mu, img[i], ej) + bracket(mu, ei, img[j]) - apply(bracket(mu, ei, ej));
      for (int k = 0; k < n; ++k)
        if (!r(k).is_zero()) d.set(i, j, k, r(k));
    }
  return d;
}

CoboundaryMap coboundary_symbolic(const FamilyDescriptor& f) {
  std::map<VarId, Rational> zero;
  for (auto& p : f.params) zero[intern(p)] = Rational(0);
  for (auto& p : f.params) {
    PTable d = pattern_direction(f, p);
    for (int i = 0; i < f.dim; ++i)
      for (int j = i + 1; j < f.dim; ++j)
        for (int k = 0; k < f.dim; ++k)
          if (!d(i, j, k).is_constant()) throw std::invalid_argument("family " + f.id + " is not linear in its parameters");
  }
  if (f.constraints.size() > 1)
    throw std::invalid_argument("symbolic coboundaries support at most one constraint, " + f.id + " has " +
                                std::to_string(f.constraints.size()));
  std::optional<VarId> pivot;
  if (!f.constraints.empty())
    for (auto& p : f.params)
      if (f.constraints[0].degree_in(intern(p)) == 1) {
        pivot = intern(p);
        break;
      }
  if (!f.constraints.empty() && !pivot) throw std::invalid_argument("constraint of " + f.id + " has no linear variable");
  auto accept = [&](const Poly& r) { return pivot && eliminate_linear(r, f.constraints[0], *pivot).is_zero(); };
  return assemble(f, directions_at(f, zero), f.pattern, accept);
}

CoboundaryMap coboundary_space(const FamilyDescriptor& family_in, const Point& base) {
  auto [f, full] = ambient_of(family_in, base);
  require_constraints(f, full);
  auto at = to_var_point(full);
  CoboundaryMap m =
      assemble(f, directions_at(f, at), to_poly(instantiate(f.pattern, at)), [](const Poly&) { return false; });
  QMat mat = zero_mat<Rational>(static_cast<Index>(m.v.size()), static_cast<Index>(m.unknowns.size()));
  for (size_t r = 0; r < m.v.size(); ++r)
    for (size_t c = 0; c < m.unknowns.size(); ++c) {
      Poly lin = m.v[r].coeff(intern(m.unknowns[c]), 1);
      mat(r, c) = lin.constant_value();
    }
  m.matrix = mat;
  return m;
}

H2Result h2_dim(const FamilyDescriptor& f, const Point& base) {
  CochainSpace z = cocycle_space(f, base);
  CoboundaryMap b = coboundary_space(f, base);
  if (z.conditions.rows() > 0 && !all_zero(QMat(z.conditions * *b.matrix)))
    throw std::logic_error("coboundaries leave the cocycle space of " + f.id);
  H2Result r;
  r.dim_z = z.dim();
  r.rank_b = static_cast<int>(rank(*b.matrix));
  r.dim_h = r.dim_z - r.rank_b;
  return r;
}

std::vector<DeformationFailure> check_linear_deformation(const QTable& mu0, const QTable& psi) {
  if (mu0.dim() != psi.dim()) throw std::invalid_argument("check_linear_deformation: dimension mismatch");
  int n = mu0.dim();
  VarId t = intern("t");
  Poly tp = Poly::var(t);
  PTable sum = to_poly(mu0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!psi(i, j, k).is_zero()) sum.add(i, j, k, tp * Poly(psi(i, j, k)));
  std::vector<DeformationFailure> out;
  for (auto& fail : check_jacobi(sum))
    for (int deg = 0; deg <= 2; ++deg) {
      QVec r = zero_vec<Rational>(n);
      for (int m = 0; m < n; ++m) r(m) = fail.residual(m).coeff(t, static_cast<unsigned>(deg)).constant_value();
      if (!all_zero(r)) out.push_back({fail.i, fail.j, fail.k, deg, r});
    }
  return out;
}

SymplecticDeformation symplectic_deformation_check(const QTable& g0, const QForm& theta0, const QTable& g1,
                                                   const QForm& theta1, const QTable& psi) {
  for (auto [g, th] : {std::pair{&g0, &theta0}, std::pair{&g1, &theta1}})
    if (!is_closed_two_form(*g, *th) || !is_nondegenerate(*th))
      throw std::invalid_argument("symplectic_deformation_check: witness is not symplectic");
  QTable e0 = central_extension(g0, theta0), e1 = central_extension(g1, theta1);
  if (quotient_by_center(e0) != g0 || quotient_by_center(e1) != g1)
    throw std::logic_error("symplectic_deformation_check: quotient does not recover the algebra");
  int n = e0.dim();
  if (psi.dim() != n) throw std::invalid_argument("symplectic_deformation_check: cochain has the wrong dimension");
  for (int j = 0; j < n - 1; ++j)
    for (int k = 0; k < n; ++k)
      if (!psi(j, n - 1, k).is_zero()) return {false, "cochain does not keep the central vector central"};
  QTable sum(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Rational c = e0(i, j, k) + psi(i, j, k);
        if (!c.is_zero()) sum.set(i, j, k, c);
      }
  if (sum != e1) return {false, "extension of the target differs from extension of the source plus the cochain"};
  if (!check_linear_deformation(e0, psi).empty()) return {false, "source plus t times the cochain fails Jacobi"};
  return {true, "linear deformation of the extensions"};
}

}  // namespace filiform
