#pragma once

#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "filiform/liecore.hpp"

namespace filiform {

using Point = std::map<std::string, Rational>;

struct FamilyDescriptor {
  std::string id;
  int dim = 0;
  PTable pattern;                        // entries are polynomials in the parameters
  std::vector<std::string> params;       // free parameter names, in display order
  std::vector<Poly> constraints;         // must vanish
  std::vector<std::string> constraint_names;
  std::vector<Poly> nonvanishing;        // must not vanish
  std::map<std::string, Poly> aliases;   // auxiliary names (b_i, z_i, canonical a_ij) as polynomials in params
  // Slices of a larger family name it here, with its parameters as polynomials in ours.
  std::string ambient;
  std::map<std::string, Poly> ambient_params;
};

class ConstraintViolation : public std::runtime_error {
 public:
  ConstraintViolation(const std::string& what, Poly p, Rational v)
      : std::runtime_error(what), poly(std::move(p)), value(std::move(v)) {}
  Poly poly;
  Rational value;
};

std::vector<std::string> family_ids();

// `shape` carries dimension-type arguments for the model families: n for modelL,
// p (and optionally lambda) for model2p1. Unknown ids throw std::invalid_argument.
FamilyDescriptor family(const std::string& id, const Point& shape = {});

// Missing parameters default to 0; unknown names, violated constraints and vanishing
// open conditions throw.
Point complete_point(const FamilyDescriptor& f, const Point& params);
QTable instantiate(const FamilyDescriptor& f, const Point& params);
QTable instantiate(const std::string& id, const Point& params);

struct ConstraintReport {
  std::string name;
  Poly poly;
  Rational value;
  bool ok;
};
std::vector<ConstraintReport> evaluate_constraints(const FamilyDescriptor& f, const Point& params);

std::map<VarId, Rational> to_var_point(const Point& p);

// The ambient family and the image of the point in it; the family itself when it has no ambient.
std::pair<FamilyDescriptor, Point> ambient_of(const FamilyDescriptor& f, const Point& params);

// A random point of the family satisfying all of its constraints, free coordinates drawn
// from {-range..range}. Nonlinear constraints are solved for one variable; draws that would
// divide by zero or land on a vanishing open condition are retried. fil8 and fil10 pick a
// component at random.
Point sample_point(const FamilyDescriptor& f, std::mt19937_64& rng, int range = 3);

// Membership flags for the components of fil8 (ids "fil8(1)", "fil8(2)") and fil10
// ("fil10(1)".."fil10(3)"); the point is in the ambient family's parameters.
std::map<std::string, bool> component_of(const std::string& variety, const Point& params);
std::map<std::string, std::vector<Poly>> component_equations(const std::string& variety);

struct Representative {
  std::vector<Rational> tuple;
  Point params;
  QTable table;
};
// list_id "fil8_1" (tuples over a2,a4,a5,a6,a7,a8) or "fil8_2" (over a1,a2,a5,a6,a7,a8);
// lambda is sampled from `lambdas`.
std::vector<Representative> representatives(const std::string& list_id,
                                            const std::vector<Rational>& lambdas = {0, 1, 2, -1});

// Product of the top antidiagonal constants C_{i,n-2-i}^{n-1}, i = 1..p-1, nonzero (n = 2p+1).
bool contact_shortcut(const QTable& t);
Rational antidiagonal_product(const QTable& t);

}  // namespace filiform
