#include "filiform/families.hpp"

#include <algorithm>
#include <functional>

#include "filiform/vergnegen.hpp"

namespace filiform {

namespace {

// Coefficients of [X_i, X_j] on X_first, X_first+1, ... as polynomial text.
struct Row {
  int i, j, first;
  std::vector<const char*> coeffs;
};

PTable build_pattern(int n, const std::vector<Row>& rows, int shift_to = -1) {
  PTable t(n);
  int last = shift_to < 0 ? n - 2 : shift_to;
  for (int i = 1; i <= last; ++i) t.set(0, i, i + 1, Poly(1));
  for (auto& r : rows)
    for (size_t c = 0; c < r.coeffs.size(); ++c) {
      int k = r.first + static_cast<int>(c);
      if (k >= n) continue;
      Poly p = Poly::parse(r.coeffs[c]);
      if (!p.is_zero()) t.set(r.i, r.j, k, p);
    }
  return t;
}

std::vector<std::string> names(std::initializer_list<const char*> l) { return {l.begin(), l.end()}; }

Poly P(const char* s) { return Poly::parse(s); }

std::map<std::string, Poly> canonical_aliases(int n, const std::vector<std::pair<const char*, std::pair<int, int>>>& m) {
  std::map<std::string, Poly> out;
  for (auto& [name, pr] : m) out[top_param_name(pr.first, pr.second)] = P(name);
  return out;
}

const std::vector<Row>& fil8_rows() {
  static const std::vector<Row> rows = {
      {2, 5, 7, {"a1"}},
      {1, 5, 6, {"a1", "a2"}},
      {3, 4, 7, {"-a1"}},
      {2, 4, 7, {"a4"}},
      {1, 4, 5, {"a1", "a2+a4", "a5"}},
      {2, 3, 6, {"a4", "a6"}},
      {1, 3, 4, {"a1", "a2+2*a4", "a5+a6", "a7"}},
      {1, 2, 3, {"a1", "a2+2*a4", "a5+a6", "a7", "a8"}},
  };
  return rows;
}

const std::vector<Row>& fil9_rows() {
  static const std::vector<Row> rows = {
      {1, 6, 8, {"a2"}},
      {2, 5, 8, {"a4"}},
      {1, 5, 7, {"a2+a4", "a5"}},
      {3, 4, 8, {"a6"}},
      {2, 4, 7, {"a4+a6", "a7"}},
      {1, 4, 6, {"a2+2*a4+a6", "a5+a7", "a8"}},
      {2, 3, 6, {"a4+a6", "a7", "a9"}},
      {1, 3, 5, {"a2+3*a4+2*a6", "a5+2*a7", "a8+a9", "a10"}},
      {1, 2, 4, {"a2+3*a4+2*a6", "a5+2*a7", "a8+a9", "a10", "a11"}},
  };
  return rows;
}

const std::vector<Row>& fil10_rows() {
  static const std::vector<Row> rows = {
      {2, 7, 9, {"a1"}},
      {1, 7, 8, {"a1", "a2"}},
      {3, 6, 9, {"-a1"}},
      {2, 6, 9, {"a4"}},
      {1, 6, 7, {"a1", "a2+a4", "a5"}},
      {4, 5, 9, {"a1"}},
      {3, 5, 9, {"a7"}},
      {2, 5, 8, {"a4+a7", "a8"}},
      {1, 5, 6, {"a1", "a2+2*a4+a7", "a5+a8", "a9"}},
      {3, 4, 8, {"a7", "a10"}},
      {2, 4, 7, {"a4+2*a7", "a8+a10", "a11"}},
      {1, 4, 5, {"a1", "a2+3*a4+3*a7", "a5+2*a8+a10", "a9+a11", "a12"}},
      {2, 3, 6, {"a4+2*a7", "a8+a10", "a11", "a13"}},
      {1, 3, 4, {"a1", "a2+4*a4+5*a7", "a5+3*a8+2*a10", "a9+2*a11", "a12+a13", "a14"}},
      {1, 2, 3, {"a1", "a2+4*a4+5*a7", "a5+3*a8+2*a10", "a9+2*a11", "a12+a13", "a14", "a15"}},
  };
  return rows;
}

const std::vector<Row>& fil11_rows() {
  static const std::vector<Row> rows = {
      {1, 8, 10, {"a2"}},
      {2, 7, 10, {"a4"}},
      {1, 7, 9, {"a2+a4", "a5"}},
      {3, 6, 10, {"a7"}},
      {2, 6, 9, {"a4+a7", "a8"}},
      {1, 6, 8, {"a2+2*a4+a7", "a5+a8", "a9"}},
      {4, 5, 10, {"a10"}},
      {3, 5, 9, {"a7+a10", "a11"}},
      {2, 5, 8, {"a4+2*a7+a10", "a8+a11", "a12"}},
      {1, 5, 7, {"a2+3*a4+3*a7+a10", "a5+2*a8+a11", "a9+a12", "a13"}},
      {3, 4, 8, {"a7+a10", "a11", "a14"}},
      {2, 4, 7, {"a4+3*a7+2*a10", "a8+2*a11", "a12+a14", "a15"}},
      {1, 4, 6, {"a2+4*a4+6*a7+3*a10", "a5+3*a8+3*a11", "a9+2*a12+a14", "a13+a15", "a16"}},
      {2, 3, 6, {"a4+3*a7+2*a10", "a8+2*a11", "a12+a14", "a15", "a17"}},
      {1, 3, 5, {"a2+5*a4+9*a7+5*a10", "a5+4*a8+5*a11", "a9+3*a12+2*a14", "a13+2*a15", "a16+a17", "a18"}},
      {1, 2, 4, {"a2+5*a4+9*a7+5*a10", "a5+4*a8+5*a11", "a9+3*a12+2*a14", "a13+2*a15", "a16+a17", "a18", "a19"}},
  };
  return rows;
}

const char* kFil9Constraint = "-3*a4^2 + 2*a6^2 + 2*a2*a6 + a4*a6";

std::map<std::string, Poly> z_aliases() {
  return {{"z1", P("a2+a4")},  {"z2", P("a4+a7")},   {"z3", P("a7+a10")}, {"z4", P("a10")},
          {"z5", P("a5+a11")}, {"z6", P("a8+a11")},  {"z7", P("a11")},    {"z8", P("a9+a12")},
          {"z9", P("a12+a14")}, {"z10", P("a14")}};
}

std::vector<Poly> fil11_constraints_in_z() {
  return {P("3*z2^2 + 3*z2*z3 - 2*z1*z3"),
          P("z7*(2*z1 + 2*z2 + z3) + z3*(3*z5 + z6) - 7*z2*z6"),
          P("z4*(2*z1 + 7*(z2 + z3)) - 2*z3*(2*z2 + z3)"),
          P("z4*(2*z8 + 5*z9) - z10*(2*z1 + 9*z2 + 12*z3) - z7*(3*z5 + 7*z6 - z7) + 4*z6^2"
            " - 2*z3*(2*z8 + 7*z9) + 8*z9*(z2 + 2*z3)")};
}

Poly in_a(const Poly& zpoly) {
  std::map<VarId, Poly> sub;
  for (auto& [name, value] : z_aliases()) sub[intern(name)] = value;
  return zpoly.subs(sub);
}

// Drops every X_{n-1} component and the last [X_0, X_{n-2}].
PTable drop_top(const PTable& t) {
  int n = t.dim();
  PTable q(n - 1);
  for (int i = 0; i < n - 1; ++i)
    for (int j = i + 1; j < n - 1; ++j)
      for (int k = 0; k < n - 1; ++k)
        if (!t(i, j, k).is_zero()) q.set(i, j, k, t(i, j, k));
  return q;
}

PTable fix_params(const PTable& t, const std::map<std::string, Poly>& values) {
  std::map<VarId, Poly> sub;
  for (auto& [k, v] : values) sub[intern(k)] = v;
  return substitute(t, sub);
}

FamilyDescriptor make_fil8() {
  FamilyDescriptor f;
  f.id = "fil8";
  f.dim = 8;
  f.pattern = build_pattern(8, fil8_rows());
  f.params = names({"a1", "a2", "a4", "a5", "a6", "a7", "a8"});
  f.constraints = {P("a1*(5*a4 + 2*a2)")};
  f.constraint_names = {"jacobi"};
  f.aliases = canonical_aliases(8, {{"a1", {2, 5}}, {"a2", {1, 5}}, {"a4", {2, 4}}, {"a5", {1, 4}},
                                    {"a6", {2, 3}}, {"a7", {1, 3}}, {"a8", {1, 2}}});
  return f;
}

FamilyDescriptor make_fil8c1() {
  FamilyDescriptor f = make_fil8();
  f.id = "fil8c1";
  f.pattern = fix_params(f.pattern, {{"a1", Poly()}});
  f.params = names({"a2", "a4", "a5", "a6", "a7", "a8"});
  f.constraints.clear();
  f.constraint_names.clear();
  f.aliases.erase(top_param_name(2, 5));
  return f;
}

FamilyDescriptor make_fil8c2() {
  FamilyDescriptor f = make_fil8();
  f.id = "fil8c2";
  f.pattern = fix_params(f.pattern, {{"a4", P("-2/5*a2")}});
  f.params = names({"a1", "a2", "a5", "a6", "a7", "a8"});
  f.constraints.clear();
  f.constraint_names.clear();
  f.aliases[top_param_name(2, 4)] = P("-2/5*a2");
  return f;
}

FamilyDescriptor make_fil9() {
  FamilyDescriptor f;
  f.id = "fil9";
  f.dim = 9;
  f.pattern = build_pattern(9, fil9_rows());
  f.params = names({"a2", "a4", "a5", "a6", "a7", "a8", "a9", "a10", "a11"});
  f.constraints = {P(kFil9Constraint)};
  f.constraint_names = {"jacobi"};
  f.aliases = canonical_aliases(9, {{"a2", {1, 6}}, {"a4", {2, 5}}, {"a5", {1, 5}}, {"a6", {3, 4}},
                                    {"a7", {2, 4}}, {"a8", {1, 4}}, {"a9", {2, 3}}, {"a10", {1, 3}},
                                    {"a11", {1, 2}}});
  return f;
}

FamilyDescriptor make_fil10() {
  FamilyDescriptor f;
  f.id = "fil10";
  f.dim = 10;
  f.pattern = build_pattern(10, fil10_rows());
  f.params = names({"a1", "a2", "a4", "a5", "a7", "a8", "a9", "a10", "a11", "a12", "a13", "a14", "a15"});
  f.constraints = {P("a1*(2*a2 + 7*a4 + 7*a7)"), P("3*a4^2 + 3*a4*a7 - 2*a2*a7"),
                   P("a1*(2*a9 + 5*a11) - 2*a2*a10 + a4*(7*a8 - 2*a10) + a7*(-3*a5 + 2*a8 - 7*a10)")};
  f.constraint_names = {"c1", "c2", "c3"};
  f.aliases = canonical_aliases(10, {{"a1", {2, 7}}, {"a2", {1, 7}}, {"a4", {2, 6}}, {"a5", {1, 6}},
                                     {"a7", {3, 5}}, {"a8", {2, 5}}, {"a9", {1, 5}}, {"a10", {3, 4}},
                                     {"a11", {2, 4}}, {"a12", {1, 4}}, {"a13", {2, 3}}, {"a14", {1, 3}},
                                     {"a15", {1, 2}}});
  return f;
}

FamilyDescriptor make_fil11() {
  FamilyDescriptor f;
  f.id = "fil11";
  f.dim = 11;
  f.pattern = build_pattern(11, fil11_rows());
  f.params = names({"a2", "a4", "a5", "a7", "a8", "a9", "a10", "a11", "a12", "a13", "a14", "a15", "a16", "a17",
                    "a18", "a19"});
  for (auto& j : fil11_constraints_in_z()) f.constraints.push_back(in_a(j));
  f.constraint_names = {"J1", "J2", "J3", "J4"};
  f.aliases = canonical_aliases(11, {{"a2", {1, 8}}, {"a4", {2, 7}}, {"a5", {1, 7}}, {"a7", {3, 6}},
                                     {"a8", {2, 6}}, {"a9", {1, 6}}, {"a10", {4, 5}}, {"a11", {3, 5}},
                                     {"a12", {2, 5}}, {"a13", {1, 5}}, {"a14", {3, 4}}, {"a15", {2, 4}},
                                     {"a16", {1, 4}}, {"a17", {2, 3}}, {"a18", {1, 3}}, {"a19", {1, 2}}});
  for (auto& [k, v] : z_aliases()) f.aliases[k] = v;
  return f;
}

FamilyDescriptor make_t1alpha() {
  FamilyDescriptor f;
  f.id = "t1alpha";
  f.dim = 8;
  f.pattern = fix_params(make_fil8c1().pattern, {{"a2", P("alpha")}, {"a4", Poly(1)}, {"a5", Poly(1)},
                                                 {"a6", Poly()}, {"a7", Poly()}, {"a8", Poly()}});
  f.params = names({"alpha"});
  f.ambient = "fil8c1";
  f.ambient_params = {{"a2", P("alpha")}, {"a4", P("1")}, {"a5", P("1")}, {"a6", P("0")}, {"a7", P("0")}, {"a8", P("0")}};
  return f;
}

FamilyDescriptor make_t2t8() {
  FamilyDescriptor f;
  f.id = "t2t8";
  f.dim = 8;
  f.pattern = fix_params(make_fil8c2().pattern, {{"a1", Poly(1)}, {"a2", Poly(1)}, {"a5", P("t")},
                                                 {"a6", P("-t")}, {"a7", Poly()}, {"a8", Poly()}});
  f.params = names({"t"});
  f.ambient = "fil8c2";
  f.ambient_params = {{"a1", P("1")}, {"a2", P("1")}, {"a5", P("t")}, {"a6", P("-t")}, {"a7", P("0")}, {"a8", P("0")}};
  return f;
}

FamilyDescriptor make_t9() {
  FamilyDescriptor f;
  f.id = "t9";
  f.dim = 9;
  // a7 is not fixed by the family's definition; it is taken to be 0.
  f.pattern = fix_params(make_fil9().pattern,
                         {{"a2", P("(3*t^2 - t - 2)/2")}, {"a4", P("t")}, {"a5", Poly(1)}, {"a6", Poly(1)},
                          {"a7", Poly()}, {"a8", P("u")}, {"a9", Poly()}, {"a10", Poly()}, {"a11", Poly()}});
  f.params = names({"t", "u"});
  f.nonvanishing = {P("t"), P("t+1"), P("2*t+1")};
  f.ambient = "fil9";
  f.ambient_params = {{"a2", P("(3*t^2 - t - 2)/2")}, {"a4", P("t")}, {"a5", P("1")}, {"a6", P("1")}, {"a7", P("0")}, {"a8", P("u")}, {"a9", P("0")}, {"a10", P("0")}, {"a11", P("0")}};
  return f;
}

FamilyDescriptor make_contact9() {
  FamilyDescriptor f = make_fil9();
  f.id = "contact9";
  f.nonvanishing = {P("a2*a4*a6")};
  return f;
}

FamilyDescriptor make_contact9model() {
  FamilyDescriptor f = make_contact9();
  f.id = "contact9model";
  f.pattern = fix_params(f.pattern, {{"a5", Poly()}, {"a7", Poly()}, {"a8", Poly()}, {"a9", Poly()},
                                     {"a10", Poly()}, {"a11", Poly()}});
  f.params = names({"a2", "a4", "a6"});
  f.aliases = {{"b2", P("a2+a4")}, {"b4", P("a4+a6")}};
  f.ambient = "fil9";
  f.ambient_params = {{"a2", P("a2")}, {"a4", P("a4")}, {"a6", P("a6")}};
  return f;
}

FamilyDescriptor make_contact11() {
  FamilyDescriptor f = make_fil11();
  f.id = "contact11";
  f.nonvanishing = {P("a2*a4*a7*a10")};
  return f;
}

FamilyDescriptor make_contact11model() {
  FamilyDescriptor f = make_fil11();
  f.id = "contact11model";
  std::map<std::string, Poly> zero;
  for (const char* a : {"a5", "a8", "a9", "a11", "a12", "a13", "a14", "a15", "a16", "a17", "a18", "a19"})
    zero[a] = Poly();
  f.pattern = fix_params(f.pattern, zero);
  f.params = names({"a2", "a4", "a7", "a10"});
  std::map<VarId, Poly> zsub;
  for (auto& [k, v] : zero) zsub[intern(k)] = v;
  f.constraints = {f.constraints[0].subs(zsub), f.constraints[2].subs(zsub)};
  f.constraint_names = {"J1", "J3"};
  f.nonvanishing = {P("a2*a4*a7*a10")};
  f.aliases = {{"z1", P("a2+a4")}, {"z2", P("a4+a7")}, {"z3", P("a7+a10")}, {"z4", P("a10")}};
  f.ambient = "fil11";
  f.ambient_params = {{"a2", P("a2")}, {"a4", P("a4")}, {"a7", P("a7")}, {"a10", P("a10")}};
  return f;
}

FamilyDescriptor make_sympl8() {
  FamilyDescriptor f = make_fil9();
  f.id = "sympl8";
  f.dim = 8;
  f.pattern = drop_top(f.pattern);
  f.params = names({"a2", "a4", "a5", "a6", "a7", "a8", "a9", "a10"});
  f.nonvanishing = {P("a2*a4*a6")};
  f.aliases = {{"b2", P("a2+a4")}, {"b4", P("a4+a6")}, {"b5", P("a5+a7")},
               {"b6", P("a7")},    {"b7", P("a8+a9")}, {"b8", P("a10")}};
  return f;
}

FamilyDescriptor make_sympl8b() {
  FamilyDescriptor f;
  f.id = "sympl8b";
  f.dim = 8;
  f.pattern = fix_params(make_fil8c1().pattern, {{"a2", P("b2")}, {"a4", P("b4")}, {"a5", P("b5")},
                                                 {"a6", P("b6")}, {"a7", P("b7")}, {"a8", P("b8")}});
  f.params = names({"b2", "b4", "b5", "b6", "b7", "b8"});
  return f;
}

FamilyDescriptor make_sympl8model() {
  FamilyDescriptor f = make_sympl8b();
  f.id = "sympl8model";
  f.pattern = fix_params(f.pattern, {{"b5", Poly()}, {"b6", Poly()}, {"b7", Poly()}, {"b8", Poly()}});
  f.params = names({"b2", "b4"});
  f.ambient = "sympl8b";
  f.ambient_params = {{"b2", P("b2")}, {"b4", P("b4")}};
  return f;
}

FamilyDescriptor make_sympl10() {
  FamilyDescriptor f = make_fil11();
  f.id = "sympl10";
  f.dim = 10;
  f.pattern = drop_top(f.pattern);
  f.params = names({"a2", "a4", "a5", "a7", "a8", "a9", "a10", "a11", "a12", "a13", "a14", "a15", "a16", "a17",
                    "a18"});
  // a19 only reaches the dropped X_10, so it leaves the constraints.
  std::map<VarId, Poly> z19{{intern("a19"), Poly()}};
  for (auto& c : f.constraints) c = c.subs(z19);
  f.nonvanishing = {P("a2*a4*a7*a10")};
  return f;
}

FamilyDescriptor make_sympl10model() {
  FamilyDescriptor f = make_contact11model();
  f.id = "sympl10model";
  f.dim = 10;
  f.pattern = drop_top(f.pattern);
  f.ambient = "sympl10";
  f.ambient_params = {{"a2", P("a2")}, {"a4", P("a4")}, {"a7", P("a7")}, {"a10", P("a10")}};
  return f;
}

FamilyDescriptor make_modelL(const Point& shape) {
  auto it = shape.find("n");
  if (it == shape.end() || !it->second.is_integer() || it->second < Rational(2))
    throw std::invalid_argument("modelL needs an integer n >= 2");
  int n = static_cast<int>(it->second.num().get_si());
  FamilyDescriptor f;
  f.id = "modelL";
  f.dim = n;
  f.pattern = to_poly(model_filiform(n));
  return f;
}

FamilyDescriptor make_model2p1(const Point& shape) {
  auto it = shape.find("p");
  if (it == shape.end() || !it->second.is_integer() || it->second < Rational(2))
    throw std::invalid_argument("model2p1 needs an integer p >= 2");
  int p = static_cast<int>(it->second.num().get_si());
  int n = 2 * p + 1;
  FamilyDescriptor f;
  f.id = "model2p1";
  f.dim = n;
  auto g = generic_filiform(n);
  auto pairs = antidiagonal_pairs(n);
  std::map<VarId, Poly> sub;
  for (auto& [i, j] : pairs) sub[top_param(i, j)] = (i % 2 == 1) ? P("lambda") : P("-lambda");
  f.pattern = substitute(restrict_bracket(g, pairs), sub);
  f.params = names({"lambda"});
  return f;
}

using Maker = std::function<FamilyDescriptor(const Point&)>;

const std::vector<std::pair<std::string, Maker>>& registry() {
  static const std::vector<std::pair<std::string, Maker>> r = {
      {"fil8", [](const Point&) { return make_fil8(); }},
      {"fil8c1", [](const Point&) { return make_fil8c1(); }},
      {"fil8c2", [](const Point&) { return make_fil8c2(); }},
      {"t1alpha", [](const Point&) { return make_t1alpha(); }},
      {"t2t8", [](const Point&) { return make_t2t8(); }},
      {"fil9", [](const Point&) { return make_fil9(); }},
      {"t9", [](const Point&) { return make_t9(); }},
      {"fil10", [](const Point&) { return make_fil10(); }},
      {"fil11", [](const Point&) { return make_fil11(); }},
      {"contact9", [](const Point&) { return make_contact9(); }},
      {"contact9model", [](const Point&) { return make_contact9model(); }},
      {"contact11", [](const Point&) { return make_contact11(); }},
      {"contact11model", [](const Point&) { return make_contact11model(); }},
      {"sympl8", [](const Point&) { return make_sympl8(); }},
      {"sympl8b", [](const Point&) { return make_sympl8b(); }},
      {"sympl8model", [](const Point&) { return make_sympl8model(); }},
      {"sympl10", [](const Point&) { return make_sympl10(); }},
      {"sympl10model", [](const Point&) { return make_sympl10model(); }},
      {"modelL", make_modelL},
      {"model2p1", make_model2p1},
  };
  return r;
}

}  // namespace

std::vector<std::string> family_ids() {
  std::vector<std::string> out;
  for (auto& [id, m] : registry()) out.push_back(id);
  return out;
}

FamilyDescriptor family(const std::string& id, const Point& shape) {
  for (auto& [name, make] : registry())
    if (name == id) return make(shape);
  throw std::invalid_argument("unknown family id '" + id + "'");
}

std::map<VarId, Rational> to_var_point(const Point& p) {
  std::map<VarId, Rational> out;
  for (auto& [k, v] : p) out[intern(k)] = v;
  return out;
}

Point complete_point(const FamilyDescriptor& f, const Point& params) {
  Point full;
  for (auto& name : f.params) full[name] = Rational(0);
  for (auto& [k, v] : params) {
    if (!full.count(k)) throw std::invalid_argument("family " + f.id + " has no parameter '" + k + "'");
    full[k] = v;
  }
  return full;
}

std::vector<ConstraintReport> evaluate_constraints(const FamilyDescriptor& f, const Point& params) {
  auto at = to_var_point(complete_point(f, params));
  std::vector<ConstraintReport> out;
  for (size_t c = 0; c < f.constraints.size(); ++c) {
    Rational v = f.constraints[c].eval(at);
    std::string name = c < f.constraint_names.size() ? f.constraint_names[c] : "c" + std::to_string(c + 1);
    out.push_back({name, f.constraints[c], v, v.is_zero()});
  }
  for (size_t c = 0; c < f.nonvanishing.size(); ++c) {
    Rational v = f.nonvanishing[c].eval(at);
    out.push_back({"nonzero" + std::to_string(c + 1), f.nonvanishing[c], v, !v.is_zero()});
  }
  return out;
}

std::pair<FamilyDescriptor, Point> ambient_of(const FamilyDescriptor& f, const Point& params) {
  if (f.ambient.empty()) return {f, complete_point(f, params)};
  auto at = to_var_point(complete_point(f, params));
  FamilyDescriptor a = family(f.ambient);
  Point p;
  for (auto& [k, v] : f.ambient_params) p[k] = v.eval(at);
  return {a, complete_point(a, p)};
}

QTable instantiate(const FamilyDescriptor& f, const Point& params) {
  for (auto& r : evaluate_constraints(f, params)) {
    if (r.ok) continue;
    std::string kind = r.name.rfind("nonzero", 0) == 0 ? "open condition vanishes: " : "constraint violated: ";
    throw ConstraintViolation(kind + r.poly.str() + " = " + r.value.str(), r.poly, r.value);
  }
  QTable t = instantiate(f.pattern, to_var_point(complete_point(f, params)));
  if (!check_jacobi(t).empty())
    throw std::logic_error("family " + f.id + " instantiated at a constraint-satisfying point fails Jacobi");
  return t;
}

QTable instantiate(const std::string& id, const Point& params) {
  Point shape, rest;
  for (auto& [k, v] : params) (k == "n" || k == "p" ? shape : rest)[k] = v;
  return instantiate(family(id, shape), rest);
}

std::map<std::string, std::vector<Poly>> component_equations(const std::string& variety) {
  if (variety == "fil8") return {{"fil8(1)", {P("a1")}}, {"fil8(2)", {P("5*a4 + 2*a2")}}};
  if (variety == "fil10")
    return {{"fil10(1)",
             {P("a1"), P("3*a4^2 + 3*a4*a7 - 2*a2*a7"),
              P("-2*a2*a10 + a4*(7*a8 - 2*a10) + a7*(-3*a5 + 2*a8 - 7*a10)")}},
            {"fil10(2)", {P("a2"), P("a4 + a7"), P("a1*(2*a9 + 5*a11) + a4*(3*a5 + 5*a8 + 5*a10)")}},
            {"fil10(3)", {P("a2 + 2*a4"), P("3*a4 + 7*a7"), P("a1*(2*a9 + 5*a11) + a4*(9/7*a5 + 43/7*a8 + 5*a10)")}}};
  throw std::invalid_argument("unknown variety '" + variety + "'");
}

std::map<std::string, bool> component_of(const std::string& variety, const Point& params) {
  FamilyDescriptor f = family(variety);
  auto at = to_var_point(complete_point(f, params));
  std::map<std::string, bool> out;
  for (auto& [name, eqs] : component_equations(variety)) {
    bool in = true;
    for (auto& e : eqs) in = in && e.eval(at).is_zero();
    out[name] = in;
  }
  return out;
}

std::vector<Representative> representatives(const std::string& list_id, const std::vector<Rational>& lambdas) {
  // 99 marks the free parameter lambda.
  const long L = 99;
  std::vector<std::vector<long>> tuples;
  std::string fam;
  std::vector<std::string> keys;
  if (list_id == "fil8_1") {
    fam = "fil8c1";
    keys = names({"a2", "a4", "a5", "a6", "a7", "a8"});
    tuples = {{L, 1, -1, 1, 0, 0}, {L, 1, 0, 0, 0, 0}, {-2, 1, 1, 0, 0, 0}, {1, 0, -1, 1, L, 0}, {0, 0, L, 1, 1, 0},
              {0, 0, L, 1, 0, 0},  {L, 0, 0, 0, 1, 1}, {1, 0, 0, 0, 1, 0},  {1, 0, 0, 0, 0, 1},  {1, 0, 0, 0, 0, 0},
              {0, 0, 1, 0, 1, 0},  {0, 0, 1, 0, 0, 0}, {0, 0, 0, 0, 1, 0},  {0, 0, 0, 0, 0, 1},  {0, 0, 0, 0, 0, 0}};
  } else if (list_id == "fil8_2") {
    fam = "fil8c2";
    keys = names({"a1", "a2", "a5", "a6", "a7", "a8"});
    tuples = {{1, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 1, 0}, {1, 0, 1, 0, L, 0}, {1, 1, L, -2, 0, 0}};
  } else {
    throw std::invalid_argument("unknown representative list '" + list_id + "'");
  }
  FamilyDescriptor f = family(fam);
  std::vector<Representative> out;
  for (auto& tup : tuples) {
    bool has_lambda = std::find(tup.begin(), tup.end(), L) != tup.end();
    std::vector<Rational> values = has_lambda ? lambdas : std::vector<Rational>{0};
    for (auto& lam : values) {
      Representative r;
      for (size_t c = 0; c < tup.size(); ++c) {
        Rational v = tup[c] == L ? lam : Rational(tup[c]);
        r.tuple.push_back(v);
        r.params[keys[c]] = v;
      }
      r.table = instantiate(f, r.params);
      out.push_back(std::move(r));
    }
  }
  return out;
}

Rational antidiagonal_product(const QTable& t) {
  int n = t.dim();
  if (n % 2 == 0) throw std::invalid_argument("contact shortcut needs odd dimension");
  Rational prod(1);
  for (int i = 1; i <= (n - 1) / 2 - 1; ++i) prod *= t(i, n - 2 - i, n - 1);
  return prod;
}

bool contact_shortcut(const QTable& t) { return !antidiagonal_product(t).is_zero(); }

}  // namespace filiform

namespace filiform {

namespace {

Rational draw(std::mt19937_64& rng, int range) {
  return Rational(static_cast<long>(rng() % (2 * range + 1)) - range);
}

Rational draw_nonzero(std::mt19937_64& rng, int range) {
  for (;;) {
    Rational r = draw(rng, range);
    if (!r.is_zero()) return r;
  }
}

using Solver = std::function<bool(Point&, std::mt19937_64&, int)>;

bool solve_fil9(Point& p, std::mt19937_64& rng, int range) {
  Rational a4 = draw(rng, range), a6 = draw_nonzero(rng, range);
  p["a4"] = a4;
  p["a6"] = a6;
  p["a2"] = (a4 - a6) * (a4 * 3 + a6 * 2) / (a6 * 2);
  return true;
}

bool solve_fil8(Point& p, std::mt19937_64& rng, int) {
  if (rng() % 2) p["a1"] = Rational(0);
  else p["a4"] = Rational(-2, 5) * p["a2"];
  return true;
}

bool solve_fil10(Point& p, std::mt19937_64& rng, int range) {
  switch (rng() % 3) {
    case 0: {
      p["a1"] = Rational(0);
      Rational a7 = draw_nonzero(rng, range), a4 = p["a4"];
      p["a7"] = a7;
      p["a2"] = a4 * (a4 + a7) * 3 / (a7 * 2);
      Rational a2 = p["a2"], a8 = p["a8"], a10 = p["a10"];
      p["a5"] = (-a2 * a10 * 2 + a4 * (a8 * 7 - a10 * 2) + a7 * (a8 * 2 - a10 * 7)) / (a7 * 3);
      return true;
    }
    case 1: {
      Rational a1 = draw_nonzero(rng, range), a4 = p["a4"];
      p["a1"] = a1;
      p["a2"] = Rational(0);
      p["a7"] = -a4;
      p["a9"] = (-a1 * p["a11"] * 5 - a4 * (p["a5"] * 3 + p["a8"] * 5 + p["a10"] * 5)) / (a1 * 2);
      return true;
    }
    default: {
      Rational a1 = draw_nonzero(rng, range), a4 = p["a4"];
      p["a1"] = a1;
      p["a2"] = -a4 * 2;
      p["a7"] = -a4 * 3 / 7;
      p["a9"] = (-a1 * p["a11"] * 5 -
                 a4 * (p["a5"] * Rational(9, 7) + p["a8"] * Rational(43, 7) + p["a10"] * 5)) / (a1 * 2);
      return true;
    }
  }
}

// Works in the z-coordinates, then maps back. Needs z3 != 0 and nonzero pivots for J3, J4.
bool solve_fil11(Point& p, std::mt19937_64& rng, int range) {
  Rational z2 = draw(rng, range), z3 = draw_nonzero(rng, range);
  Rational z6 = draw(rng, range), z7 = draw(rng, range), z8 = draw(rng, range), z9 = draw(rng, range);
  Rational z1 = z2 * (z2 + z3) * 3 / (z3 * 2);
  Rational c4 = z1 * 2 + (z2 + z3) * 7;
  if (c4.is_zero()) return false;
  Rational z4 = z3 * (z2 * 2 + z3) * 2 / c4;
  Rational z5 = (z2 * z6 * 7 - z3 * z6 - z7 * (z1 * 2 + z2 * 2 + z3)) / (z3 * 3);
  Rational c10 = z1 * 2 + z2 * 9 + z3 * 12;
  if (c10.is_zero()) return false;
  Rational z10 = (z4 * (z8 * 2 + z9 * 5) - z7 * (z5 * 3 + z6 * 7 - z7) + z6 * z6 * 4 - z3 * (z8 * 2 + z9 * 7) * 2 +
                  z9 * (z2 + z3 * 2) * 8) / c10;
  p["a10"] = z4;
  p["a7"] = z3 - z4;
  p["a4"] = z2 - p["a7"];
  p["a2"] = z1 - p["a4"];
  p["a11"] = z7;
  p["a8"] = z6 - z7;
  p["a5"] = z5 - z7;
  p["a14"] = z10;
  p["a12"] = z9 - z10;
  p["a9"] = z8 - p["a12"];
  return true;
}

bool solve_contact11model(Point& p, std::mt19937_64& rng, int range) {
  Rational z2 = draw(rng, range), z3 = draw_nonzero(rng, range);
  Rational z1 = z2 * (z2 + z3) * 3 / (z3 * 2);
  Rational c4 = z1 * 2 + (z2 + z3) * 7;
  if (c4.is_zero()) return false;
  Rational z4 = z3 * (z2 * 2 + z3) * 2 / c4;
  p["a10"] = z4;
  p["a7"] = z3 - z4;
  p["a4"] = z2 - p["a7"];
  p["a2"] = z1 - p["a4"];
  return true;
}

Solver solver_for(const std::string& id) {
  if (id == "fil8") return solve_fil8;
  if (id == "fil9" || id == "contact9" || id == "sympl8" || id == "contact9model") return solve_fil9;
  if (id == "fil10") return solve_fil10;
  if (id == "fil11" || id == "contact11" || id == "sympl10") return solve_fil11;
  if (id == "contact11model" || id == "sympl10model") return solve_contact11model;
  return [](Point&, std::mt19937_64&, int) { return true; };
}

}  // namespace

Point sample_point(const FamilyDescriptor& f, std::mt19937_64& rng, int range) {
  auto solve = solver_for(f.id);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Point p;
    for (auto& name : f.params) p[name] = draw(rng, range);
    if (!solve(p, rng, range)) continue;
    Point out;
    for (auto& name : f.params) out[name] = p.count(name) ? p[name] : Rational(0);
    bool ok = true;
    for (auto& r : evaluate_constraints(f, out)) ok = ok && r.ok;
    if (ok) return out;
  }
  throw std::runtime_error("could not sample a point of family " + f.id);
}

}  // namespace filiform
