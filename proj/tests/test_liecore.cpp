#include <doctest.h>

#include <random>

#include "filiform/families.hpp"
#include "filiform/liecore.hpp"

using namespace filiform;

namespace {

QVec random_vec(int n, std::mt19937_64& rng) {
  QVec v = zero_vec<Rational>(n);
  for (int i = 0; i < n; ++i) v(i) = Rational(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 3) + 1);
  return v;
}

QMat random_invertible(int n, std::mt19937_64& rng) {
  for (;;) {
    QMat p = zero_mat<Rational>(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p(i, j) = Rational(static_cast<long>(rng() % 7) - 3);
    if (!det(p).is_zero()) return p;
  }
}

QTable fil8_at(std::initializer_list<std::pair<const char*, long>> vals) {
  PTable t = family("fil8").pattern;
  std::map<VarId, Rational> at;
  for (auto& v : family("fil8").params) at[intern(v)] = Rational(0);
  for (auto& [k, v] : vals) at[intern(k)] = Rational(v);
  return instantiate(t, at);
}

QTable fil9_at(Rational a2, Rational a4, Rational a6) {
  auto f = family("fil9");
  std::map<VarId, Rational> at;
  for (auto& v : f.params) at[intern(v)] = Rational(0);
  at[intern("a2")] = a2;
  at[intern("a4")] = a4;
  at[intern("a6")] = a6;
  return instantiate(f.pattern, at);
}

std::vector<QTable> sample_filiform(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const char* ids[] = {"fil8", "fil9", "fil10", "fil11", "fil8c1", "t2t8"};
  std::vector<QTable> out;
  for (int c = 0; c < count; ++c) {
    auto f = family(ids[c % 6]);
    out.push_back(instantiate(f, sample_point(f, rng)));
  }
  return out;
}

}  // namespace

TEST_CASE("table storage") {
  QTable t(4);
  t.set(1, 2, 3, Rational(5));
  CHECK(t(1, 2, 3) == Rational(5));
  CHECK(t(2, 1, 3) == Rational(-5));
  CHECK_THROWS(t.set(1, 1, 2, Rational(1)));
  CHECK_THROWS(t.set(0, 4, 1, Rational(1)));
  t.set(2, 1, 3, Rational(2));
  CHECK(t(1, 2, 3) == Rational(-2));
}

TEST_CASE("bracket examples") {
  QTable l9 = model_filiform(9);
  CHECK(bracket(l9, unit_vec<Rational>(9, 0), unit_vec<Rational>(9, 3)) == unit_vec<Rational>(9, 4));
  QTable t = fil8_at({{"a4", 1}});
  CHECK(bracket(t, unit_vec<Rational>(8, 2), unit_vec<Rational>(8, 4)) == unit_vec<Rational>(8, 7));
  std::mt19937_64 rng(3);
  for (int c = 0; c < 20; ++c) {
    QVec x = random_vec(8, rng);
    CHECK(all_zero(bracket(t, x, x)));
  }
  CHECK_THROWS(bracket(t, zero_vec<Rational>(7), zero_vec<Rational>(8)));
}

TEST_CASE("jacobi verdicts") {
  CHECK(check_jacobi(heisenberg3()).empty());
  CHECK_FALSE(check_jacobi(fil8_at({{"a1", 1}, {"a2", 1}})).empty());
  CHECK(check_jacobi(fil8_at({{"a1", 1}, {"a2", 5}, {"a4", -2}})).empty());
  CHECK(check_jacobi(fil9_at(0, 1, 1)).empty());
  CHECK_FALSE(check_jacobi(fil9_at(Rational(1, 2), 1, 1)).empty());
  CHECK_FALSE(check_jacobi(fil9_at(0, 1, Rational(3, 2))).empty());
  CHECK_FALSE(check_jacobi(fil9_at(1, 1, 1)).empty());
}

TEST_CASE("polynomial jacobi residuals are the constraint") {
  auto fails = check_jacobi(family("fil8").pattern);
  REQUIRE(!fails.empty());
  Poly c = Poly::parse("a1*(5*a4 + 2*a2)");
  for (auto& f : fails)
    for (int m = 0; m < 8; ++m)
      if (!f.residual(m).is_zero()) CHECK(equal_up_to_unit(f.residual(m), c));
}

TEST_CASE("jacobi holds on random vector triples") {
  std::mt19937_64 rng(11);
  for (auto& t : sample_filiform(12, 5)) {
    int n = t.dim();
    for (int c = 0; c < 20; ++c) {
      QVec x = random_vec(n, rng), y = random_vec(n, rng), z = random_vec(n, rng);
      QVec r = bracket(t, bracket(t, x, y), z) + bracket(t, bracket(t, y, z), x) + bracket(t, bracket(t, z, x), y);
      CHECK(all_zero(r));
    }
  }
}

TEST_CASE("central series") {
  auto ab = central_series(abelian(4));
  CHECK(ab.descending == std::vector<int>{4, 0});
  CHECK(ab.nilindex == 1);
  auto l9 = central_series(model_filiform(9));
  CHECK(l9.descending == std::vector<int>{9, 7, 6, 5, 4, 3, 2, 1, 0});
  CHECK(l9.nilindex == 8);
  for (auto& t : sample_filiform(12, 7)) {
    auto cs = central_series(t);
    int n = t.dim();
    REQUIRE(cs.nilindex.has_value());
    CHECK(*cs.nilindex == n - 1);
    for (int i = 0; i <= n - 1; ++i) CHECK(same_span(cs.ascending_bases[i], cs.descending_bases[n - 1 - i]));
  }
}

TEST_CASE("filiform predicate") {
  for (int n = 3; n <= 12; ++n) CHECK(is_filiform(model_filiform(n)));
  CHECK_FALSE(is_filiform(abelian(3)));
  CHECK_FALSE(is_filiform(abelian(6)));
  CHECK(is_filiform(fil9_at(0, 1, 1)));
  for (auto& t : sample_filiform(12, 9)) CHECK(is_filiform(t));
}

TEST_CASE("characteristic sequence") {
  QTable l9 = model_filiform(9);
  CHECK(characteristic_sequence(l9, unit_vec<Rational>(9, 0)) == std::vector<int>{8, 1});
  std::mt19937_64 rng(2);
  CHECK(characteristic_sequence(abelian(3), random_vec(3, rng)) == std::vector<int>{1, 1, 1});
  for (auto& t : sample_filiform(12, 13)) {
    auto probe = characteristic_sequence_max(t, 0);
    CHECK(probe.certified);
    CHECK(probe.sequence.front() == t.dim() - 1);
  }
  auto ab = characteristic_sequence_max(abelian(4), 0);
  CHECK_FALSE(ab.certified);
}

TEST_CASE("characteristic sequence needs nilpotent ad") {
  QTable t(2);
  t.set(0, 1, 1, Rational(1));
  CHECK_THROWS(characteristic_sequence(t, unit_vec<Rational>(2, 0)));
}

TEST_CASE("center and quotient") {
  for (auto& t : sample_filiform(12, 17)) {
    QMat z = center(t);
    REQUIRE(z.cols() == 1);
    CHECK(same_span(z, unit_vec<Rational>(t.dim(), t.dim() - 1)));
  }
  CHECK(center(abelian(5)).cols() == 5);

  // The dim-9 contact model over (a2, a4, a6) = (0, 1, 1) drops to the b-pattern with b2 = 1, b4 = 2.
  QTable q = quotient_by_center(fil9_at(0, 1, 1));
  QTable b = instantiate(family("sympl8model"), {{"b2", 1}, {"b4", 2}});
  CHECK(q == b);
}

TEST_CASE("change of basis") {
  std::mt19937_64 rng(19);
  QTable t = fil9_at(0, 1, 1);
  CHECK(change_basis(t, QMat::Identity(9, 9)) == t);
  QTable s = change_basis(t, QMat::Identity(9, 9) * Rational(3));
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      for (int k = 0; k < 9; ++k) CHECK(s(i, j, k) == t(i, j, k) * Rational(3));
  for (auto& u : sample_filiform(6, 23)) {
    QMat p = random_invertible(u.dim(), rng);
    QTable v = change_basis(u, p);
    CHECK(check_jacobi(v).empty());
    CHECK(central_series(v).descending == central_series(u).descending);
    CHECK(central_series(v).ascending == central_series(u).ascending);
    CHECK(is_filiform(v));
    CHECK(change_basis(v, *inverse(p)) == u);
  }
  QMat singular = zero_mat<Rational>(9, 9);
  CHECK_THROWS(change_basis(t, singular));
}
