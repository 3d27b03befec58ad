#include "filiform/affine.hpp"

#include <random>

namespace filiform {

PMat t2t8_affine_seed(int variant) {
  const char* first[8][8] = {
      {"0", "alpha1", "0", "alpha2", "0", "0", "0", "0"},
      {"0", "0", "0", "0", "0", "0", "0", "0"},
      {"0", "0", "0", "0", "0", "0", "0", "0"},
      {"0", "-1/5", "0", "0", "0", "0", "0", "0"},
      {"0", "0", "0", "0", "0", "0", "0", "0"},
      {"0", "2/375*(70*alpha6 - 25*t - 42)", "0", "0", "0", "0", "0", "0"},
      {"0", "2*alpha3", "1/375*(70*alpha6 - 25*t - 42)", "-2/25*(5*alpha6 - 3)", "1/5", "0", "0", "0"},
      {"0", "alpha4", "alpha3", "alpha5", "1/2*t - 3/25*(5*alpha6 - 3)", "alpha6", "-1/2", "0"}};
  const char* second[8][8] = {
      {"0", "alpha1", "0", "alpha2", "0", "0", "0", "0"},
      {"0", "0", "0", "0", "0", "0", "0", "0"},
      {"0", "0", "0", "0", "0", "0", "0", "0"},
      {"0", "3/5", "0", "0", "0", "0", "0", "0"},
      {"0", "0", "2/5", "0", "0", "0", "0", "0"},
      {"0", "2/375*(-210*alpha6 + 125*t - 42)", "0", "-2/5", "0", "0", "0", "0"},
      {"0", "2/375*(-210*alpha6 + 125*t - 42)", "1/375*(-210*alpha6 + 125*t - 42)", "-14/25*(5*alpha6 + 1)",
       "-3/5", "0", "0", "0"},
      {"0", "alpha4", "alpha3", "alpha5", "1/2*t - 21/25*(5*alpha6 + 1)", "alpha6", "-1/2", "0"}};
  if (variant != 1 && variant != 2) throw std::invalid_argument("affine seed variant must be 1 or 2");
  auto& src = variant == 1 ? first : second;
  PMat m(8, 8);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) m(r, c) = Poly::parse(src[r][c]);
  return m;
}

QAffine affine_from_symplectic(const QTable& t, const QForm& theta) {
  int n = t.dim();
  if (theta.dim() != n) throw std::invalid_argument("form and algebra dimensions differ");
  QMat g = gram(theta);
  auto gi = inverse(g);
  if (!gi) throw std::invalid_argument("degenerate 2-form");
  // L_i^T G = -G ad_i
  QAffine p(n);
  for (int i = 0; i < n; ++i) p.L[i] = QMat(-(g * ad_basis(t, i) * *gi).transpose());
  return p;
}

namespace {

bool nilpotent(const QMat& r) {
  QMat pw = r;
  for (Index k = 1; k < r.rows() && !all_zero(pw); ++k) pw = pw * r;
  return all_zero(pw);
}

}  // namespace

CompletenessReport completeness(const QAffine& p, std::uint64_t seed, int random_probes) {
  CompletenessReport out;
  int n = p.n;
  for (int j = 0; j < n; ++j) {
    QMat r = p.right_mult(unit_vec<Rational>(n, j));
    out.traces.push_back(r.trace());
    if (!nilpotent(r)) out.non_nilpotent.push_back(j);
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int s = 0; s < random_probes; ++s) {
    QVec y(n);
    for (int i = 0; i < n; ++i) y(i) = Rational(coef(rng));
    if (!nilpotent(p.right_mult(y))) ++out.random_failures;
  }
  out.complete = out.non_nilpotent.empty() && out.random_failures == 0;
  for (auto& tr : out.traces) out.complete = out.complete && tr.is_zero();
  return out;
}

PolarizationReport polarization_check(const QAffine& p) {
  int n = p.n;
  auto nab = [&](const QVec& x, const QVec& y) { return p(x, y); };
  auto mu = [&](const QVec& x, const QVec& y) { return QVec(nab(x, y) - nab(y, x)); };
  auto s = [&](const QVec& x, const QVec& y) { return QVec(nab(x, y) + nab(y, x)); };
  auto A = [&](const QVec& x, const QVec& y, const QVec& z) {
    QVec a = mu(mu(x, y), z) + mu(s(y, z), x) - mu(s(z, x), y) + s(mu(x, y), z) * Rational(2) - s(mu(y, z), x) +
             s(mu(x, z), y) - s(s(y, z), x) + s(s(x, z), y);
    return a;
  };
  PolarizationReport out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        QVec x = unit_vec<Rational>(n, i), y = unit_vec<Rational>(n, j), z = unit_vec<Rational>(n, k);
        QVec a = A(x, y, z);
        if (!all_zero(a)) out.a_residuals.push_back({i, j, k, a});
        if (i <= j && j <= k) {
          QVec c = A(x, y, z) + A(y, z, x) + A(z, x, y) -
                   (mu(s(x, y), z) + mu(s(y, z), x) + mu(s(z, x), y)) * Rational(2);
          if (!all_zero(c)) out.cyclic_residuals.push_back({i, j, k, c});
        }
      }
  return out;
}

QAffine instantiate(const PAffine& p, const std::map<VarId, Rational>& at) {
  QAffine out(p.n);
  for (int i = 0; i < p.n; ++i) out.L[i] = eval(p.L[i], at);
  return out;
}

}  // namespace filiform
