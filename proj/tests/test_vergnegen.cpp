#include <doctest.h>

#include <random>

#include "filiform/families.hpp"
#include "filiform/vergnegen.hpp"

using namespace filiform;

namespace {

// Family parameter names for the canonical top constants.
std::map<VarId, Poly> canonical_to_family(const FamilyDescriptor& f) {
  std::map<VarId, Poly> sub;
  for (auto& [k, v] : f.aliases)
    if (k.rfind("a_", 0) == 0) sub[intern(k)] = v;
  return sub;
}

std::vector<Poly> component_polys(const std::vector<JacobiEquation>& eqs, const std::map<VarId, Poly>& sub) {
  std::vector<Poly> out;
  for (auto& e : eqs)
    for (auto& p : e.polys()) out.push_back(p.subs(sub));
  return out;
}

bool matches_some(const Poly& c, const std::vector<Poly>& pool) {
  for (auto& p : pool)
    if (equal_up_to_unit(p, c)) return true;
  return false;
}

}  // namespace

TEST_CASE("generic bracket matches the named families") {
  for (auto [n, id] : std::vector<std::pair<int, const char*>>{{8, "fil8"}, {9, "fil9"}, {10, "fil10"}, {11, "fil11"}}) {
    auto g = generic_filiform(n);
    auto f = family(id);
    CHECK(substitute(g.table, canonical_to_family(f)) == f.pattern);
  }
}

TEST_CASE("generic bracket satisfies the shift recursion") {
  for (int n = 5; n <= 13; ++n) {
    auto g = generic_filiform(n);
    const PTable& t = g.table;
    for (int i = 1; i < n; ++i)
      for (int j = i + 1; j + 1 < n; ++j)
        for (int m = 1; m < n; ++m) {
          Poly lhs = t(i + 1, j, m) + t(i, j + 1, m);
          CHECK(lhs == t(i, j, m - 1));
        }
  }
}

TEST_CASE("small dimension") {
  auto g = generic_filiform(5);
  CHECK(g.free_pairs == std::vector<std::pair<int, int>>{{1, 2}});
  CHECK(g.table(1, 2, 4) == Poly::var(top_param_name(1, 2)));
  CHECK(g.table(1, 2, 3).is_zero());
  for (int i = 1; i <= 3; ++i) CHECK(g.table(0, i, i + 1) == Poly(1));
  CHECK(g.table(0, 4, 4).is_zero());
}

TEST_CASE("free parameter count in odd dimension") {
  for (int p = 3; p <= 7; ++p) CHECK(generic_filiform(2 * p + 1).free_pairs.size() == size_t((p - 1) * (p - 1)));
}

TEST_CASE("jacobi ideal reproduces the family constraints") {
  for (auto [n, id] : std::vector<std::pair<int, const char*>>{{8, "fil8"}, {9, "fil9"}, {10, "fil10"}, {11, "fil11"}}) {
    auto f = family(id);
    auto pool = component_polys(jacobi_ideal(generic_filiform(n)), canonical_to_family(f));
    for (auto& c : f.constraints) CHECK_MESSAGE(matches_some(c, pool), id << ": " << c.str());
    // and nothing beyond them: every component vanishes on sampled family points
    std::mt19937_64 rng(n);
    for (int s = 0; s < 50; ++s) {
      auto pt = to_var_point(sample_point(f, rng));
      for (auto& p : pool) CHECK(p.eval(pt).is_zero());
    }
  }
}

TEST_CASE("dim 11 triples") {
  auto eqs = jacobi_ideal(generic_filiform(11));
  std::vector<std::array<int, 3>> triples;
  for (auto& e : eqs) triples.push_back({e.i, e.j, e.k});
  CHECK(triples == std::vector<std::array<int, 3>>{{1, 2, 3}, {1, 2, 4}, {1, 2, 5}, {1, 3, 4}});
  for (auto& e : eqs) {
    CHECK(e.weight == e.i + e.j + e.k);
    for (auto& p : e.polys()) CHECK(p.is_homogeneous());
  }
}

TEST_CASE("reduction") {
  auto red11 = reduce_ideal(jacobi_ideal(generic_filiform(11)), 11);
  REQUIRE(red11.generators.size() == 2);
  CHECK(red11.generators[0].i == 1);
  CHECK(red11.generators[0].j == 2);
  CHECK(red11.generators[0].k == 3);
  CHECK(red11.generators[1].j == 3);
  CHECK(red11.generators[1].k == 4);
  CHECK(red11.certificates.size() == 2);
  for (auto& c : red11.certificates) CHECK(c.verified);

  auto red8 = reduce_ideal(jacobi_ideal(generic_filiform(8)), 8);
  CHECK(red8.generators.size() == 1);
}

TEST_CASE("shift of a jacobi vector is the sum of shifted triples") {
  int n = 11;
  auto g = generic_filiform(n);
  for (auto [i, j, k] : std::vector<std::array<int, 3>>{{1, 2, 3}, {1, 2, 4}, {2, 3, 4}, {1, 3, 5}}) {
    PVec lhs = shift_vector(jacobi_residual(g.table, i, j, k));
    PVec rhs = zero_vec<Poly>(n);
    for (auto& s : shift_terms(n, i, j, k)) rhs += jacobi_residual(g.table, s.i, s.j, s.k) * Poly(s.sign);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("the dim-15 model does not reduce to (1,2,3) alone") {
  int n = 15;
  auto g = generic_filiform(n);
  PTable model = restrict_bracket(g, antidiagonal_pairs(n));
  auto eqs = jacobi_ideal(model);
  REQUIRE(eqs.front().i == 1);
  REQUIRE(eqs.front().j == 2);
  REQUIRE(eqs.front().k == 3);
  Poly first = eqs.front().polys().front();
  VarId lead = top_param(1, n - 3);
  Poly lin = first.coeff(lead, 1), rest = first.coeff(lead, 0);
  REQUIRE(first.degree_in(lead) == 1);

  // Points on the (1,2,3) hypersurface with every C_{1,k}^{k+2} nonzero still violate other equations.
  std::mt19937_64 rng(15);
  int tried = 0, violated = 0;
  while (tried < 10) {
    std::map<VarId, Rational> pt;
    for (auto& [i, j] : antidiagonal_pairs(n))
      if (i != 1) pt[top_param(i, j)] = Rational(static_cast<long>(rng() % 11) - 5);
    pt[lead] = Rational(0);
    Rational l = lin.eval(pt);
    if (l.is_zero()) continue;
    pt[lead] = -rest.eval(pt) / l;
    bool guarded = true;
    for (int k = 2; k <= n - 3; ++k) guarded = guarded && !model(1, k, k + 2).eval(pt).is_zero();
    if (!guarded) continue;
    ++tried;
    REQUIRE(first.eval(pt).is_zero());
    bool other = false;
    for (auto& e : eqs)
      for (auto& p : e.polys()) other = other || !p.eval(pt).is_zero();
    violated += other;
  }
  CHECK(violated == tried);
}

TEST_CASE("equation counts") {
  CHECK(equation_count(5).series == 4);
  auto p3 = equation_count(3);
  CHECK(p3.used_epsilon);
  CHECK(p3.series == 2);
  for (int p = 4; p <= 6; ++p)
    CHECK(equation_count(p).series == long(jacobi_ideal(restrict_bracket(generic_filiform(2 * p + 1),
                                                                         antidiagonal_pairs(2 * p + 1)))
                                               .size()));
  // brute force at p = 3 has no equations at all
  CHECK(jacobi_ideal(generic_filiform(7)).empty());
}

TEST_CASE("reduced counts") {
  CHECK(reduced_count(4, 2) == 10);
  CHECK(reduced_count(4, 0) == 7);
  CHECK(reduced_count(3, 1) == 6);
  CHECK(reduced_count(1, 1) == 0);
  CHECK_THROWS(reduced_count(3, 0));
  CHECK_THROWS(reduced_count(4, 1));
}

TEST_CASE("alternating model") {
  for (int p = 3; p <= 6; ++p) {
    QTable t = alternating_model(p);
    CHECK(check_jacobi(t).empty());
    CHECK(is_filiform(t));
    CHECK(contact_shortcut(t));
  }
}
