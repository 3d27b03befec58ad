#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "filiform/rational.hpp"

namespace filiform {

using VarId = std::uint32_t;

// Process-wide name table. Interning is thread safe; ids are stable for the
// lifetime of the process.
VarId intern(const std::string& name);
const std::string& var_name(VarId id);

// Orders names so that embedded digit runs compare numerically: a2 < a10.
bool natural_less(const std::string& a, const std::string& b);

// Sorted (variable, exponent) pairs, exponents > 0.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(VarId v, unsigned e = 1);

  unsigned degree() const;
  unsigned degree_in(VarId v) const;
  const std::vector<std::pair<VarId, unsigned>>& factors() const { return f_; }
  bool is_one() const { return f_.empty(); }

  Monomial operator*(const Monomial& o) const;
  Monomial without(VarId v) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }
  friend bool operator<(const Monomial& a, const Monomial& b);

  std::string str() const;

 private:
  std::vector<std::pair<VarId, unsigned>> f_;
};

// Sparse multivariate polynomial with rational coefficients.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(int c) : Poly(Rational(c)) {}   // NOLINT(google-explicit-constructor)

  static Poly var(const std::string& name) { return var(intern(name)); }
  static Poly var(VarId v);
  static Poly term(const Rational& c, const Monomial& m);
  // Grammar: sums/products/powers of rationals and identifiers, with parentheses.
  static Poly parse(const std::string& s);

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // coefficient of 1
  unsigned degree() const;
  unsigned degree_in(VarId v) const;
  std::set<VarId> variables() const;
  bool is_homogeneous() const;
  size_t size() const { return t_.size(); }

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  Poly& operator/=(const Rational& c);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator/(Poly a, const Rational& c) { return a /= c; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Errors with std::out_of_range naming the first unassigned variable.
  Rational eval(const std::map<std::string, Rational>& at) const;
  Rational eval(const std::map<VarId, Rational>& at) const;
  // Partial substitution, unassigned variables stay symbolic.
  Poly subs(const std::map<VarId, Poly>& at) const;
  Poly subs(VarId v, const Poly& value) const { return subs(std::map<VarId, Poly>{{v, value}}); }
  Poly derivative(VarId v) const;
  // Coefficient of v^k, as a polynomial in the remaining variables.
  Poly coeff(VarId v, unsigned k) const;

  // Scaled to integer coprime coefficients with a positive leading term.
  Poly primitive() const;
  Rational leading_coefficient() const;

  // Terms ordered by decreasing degree then lexicographically by natural name order.
  std::vector<std::pair<Monomial, Rational>> ordered_terms() const;
  std::string str() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms t_;
};

Poly pow(const Poly& p, unsigned e);

// p = c·q for a nonzero rational c; returns c, or zero when no such unit exists.
Rational unit_ratio(const Poly& p, const Poly& q);
inline bool equal_up_to_unit(const Poly& p, const Poly& q) { return !unit_ratio(p, q).is_zero(); }

// Nonzero linear polynomial?
bool is_linear(const Poly& p);

// For c = A*v + B of degree 1 in v, returns A^d * r(v = -B/A) with d = degree of r in v.
// When c is irreducible and A is not a multiple of c, r lies in the ideal (c) iff this is zero.
Poly eliminate_linear(const Poly& r, const Poly& c, VarId v);

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

}  // namespace filiform

namespace Eigen {
template <>
struct NumTraits<filiform::Poly> : GenericNumTraits<filiform::Poly> {
  using Real = filiform::Poly;
  using NonInteger = filiform::Poly;
  using Nested = filiform::Poly;
  using Literal = filiform::Poly;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 500,
    MulCost = 1000
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
