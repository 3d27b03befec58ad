#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "filiform/cohom.hpp"
#include "filiform/vergnegen.hpp"
#include "io.hpp"

using namespace filiform;
using io::json;

namespace {

constexpr size_t kMaxListed = 20;

struct Source {
  QTable table;
  std::optional<FamilyDescriptor> fam;
  Point params;
  std::string hash_input;
  json constraints = json::array();
};

struct SourceOpts {
  std::string algebra, family, params;
};

void add_source(CLI::App* app, SourceOpts& o, bool required = true) {
  auto* a = app->add_option("--algebra", o.algebra, "algebra JSON file, - for stdin");
  auto* f = app->add_option("--family", o.family, "family id");
  app->add_option("--params", o.params, "family parameters k=v,...");
  a->excludes(f);
  if (required) app->require_option(1, 3);
}

std::pair<FamilyDescriptor, Point> family_with_params(const std::string& id, const std::string& params) {
  Point all = io::parse_params(params), shape, rest;
  for (auto& [k, v] : all) (k == "n" || k == "p" ? shape : rest)[k] = v;
  return {family(id, shape), rest};
}

json constraint_json(const FamilyDescriptor& f, const Point& p) {
  json out = json::array();
  for (auto& c : evaluate_constraints(f, p))
    out.push_back({{"name", c.name}, {"poly", c.poly.str()}, {"value", c.value.str()}, {"ok", c.ok}});
  return out;
}

std::string point_string(const Point& p) {
  std::string s;
  for (auto& [k, v] : p) s += k + "=" + v.str() + ",";
  return s;
}

Source load(const SourceOpts& o) {
  Source s;
  if (!o.algebra.empty()) {
    std::string text = io::read_text(o.algebra);
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw io::InputError("malformed_json", o.algebra + ": " + e.what());
    }
    auto file = io::parse_algebra(j);
    s.table = file.table;
    s.params = file.params;
    s.hash_input = text;
    return s;
  }
  if (o.family.empty()) throw io::InputError("missing_input", "give --algebra or --family");
  auto [f, p] = family_with_params(o.family, o.params);
  s.params = complete_point(f, p);
  s.constraints = constraint_json(f, s.params);
  s.table = instantiate(f, p);
  s.fam = f;
  s.hash_input = "family=" + o.family + ";params=" + point_string(io::parse_params(o.params));
  return s;
}

json vec_json(const QVec& v) {
  json out = json::object();
  for (Index k = 0; k < v.size(); ++k)
    if (!v(k).is_zero()) out[std::to_string(k)] = v(k).str();
  return out;
}

json int_list(const std::vector<int>& v) { return json(v); }

json verify_report(const QTable& t) {
  auto fails = check_jacobi(t);
  json f = json::array();
  for (size_t i = 0; i < std::min(fails.size(), kMaxListed); ++i)
    f.push_back({{"triple", {fails[i].i, fails[i].j, fails[i].k}}, {"residual", vec_json(fails[i].residual)}});
  json out{{"dim", t.dim()}, {"jacobi", {{"ok", fails.empty()}, {"failure_count", fails.size()}, {"failures", f}}}};
  out["nilpotent"] = fails.empty() && is_nilpotent(t);
  out["filiform"] = fails.empty() && is_filiform(t);
  return out;
}

json invariants_report(const QTable& t, std::uint64_t seed) {
  if (!check_jacobi(t).empty()) throw std::invalid_argument("not a Lie algebra: Jacobi fails");
  auto cs = central_series(t);
  json out{{"dim", t.dim()},
           {"descending_central_series", int_list(cs.descending)},
           {"ascending_central_series", int_list(cs.ascending)},
           {"center_dim", center(t).cols()},
           {"nilpotent", cs.nilindex.has_value()},
           {"filiform", is_filiform(t)}};
  out["nilindex"] = cs.nilindex ? json(*cs.nilindex) : json(nullptr);
  if (cs.nilindex) {
    auto probe = characteristic_sequence_max(t, seed);
    out["characteristic_sequence"] = {
        {"sequence", int_list(probe.sequence)}, {"certified", probe.certified}, {"witness", vec_json(probe.witness)}};
  }
  return out;
}

json contact_report(const QTable& t) {
  int n = t.dim();
  bool c = is_contact_algebra(t);
  QForm w = one_form<Rational>(n, n - 1);
  json out{{"contact", c}, {"form", io::form_json(w)}, {"volume", contact_volume(t, w).str()}};
  if (n >= 5) {
    out["antidiagonal_product"] = antidiagonal_product(t).str();
    out["shortcut"] = contact_shortcut(t);
  }
  return out;
}

json symplectic_report(const QTable& t, std::uint64_t seed) {
  auto r = symplectic_exists(t, seed);
  json out{{"symplectic", r.exists}, {"method", r.method}, {"closed_dim", r.closed_dim}};
  out["witness"] = r.witness ? io::form_json(*r.witness) : json(nullptr);
  if (r.pfaffian) out["pfaffian"] = r.pfaffian->str();
  return out;
}

json h2_report(const FamilyDescriptor& f, const Point& p) {
  auto h = h2_dim(f, p);
  return {{"dimZ2", h.dim_z}, {"rankB2", h.rank_b}, {"dimH2", h.dim_h}};
}

std::vector<Point> grid_points(const json& g) {
  if (!g.is_object()) throw io::InputError("bad_grid", "grid must map parameter names to value lists");
  std::vector<Point> pts{Point{}};
  for (auto& [k, vals] : g.items()) {
    if (!vals.is_array() || vals.empty()) throw io::InputError("bad_grid", "grid." + k + " must be a nonempty array");
    std::vector<Point> next;
    for (auto& p : pts)
      for (auto& v : vals) {
        Point q = p;
        q[k] = io::parse_rational(v, "grid." + k);
        next.push_back(q);
      }
    pts = std::move(next);
  }
  return pts;
}

json error_json(const std::string& code, const std::string& msg) { return {{"code", code}, {"message", msg}}; }

template <class F>
json guarded(F f) {
  try {
    return f();
  } catch (const ConstraintViolation& e) {
    return {{"error", error_json("constraint_violation", e.what())}};
  } catch (const std::invalid_argument& e) {
    return {{"error", error_json("precondition", e.what())}};
  } catch (const std::domain_error& e) {
    return {{"error", error_json("precondition", e.what())}};
  }
}

// Per-point work fans out over a bounded pool; results land in grid order.
json sweep(const FamilyDescriptor& f, const Point& fixed, const std::vector<Point>& grid, const std::string& verb,
           std::uint64_t seed, unsigned jobs) {
  std::vector<json> results(grid.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i; (i = next++) < grid.size();) {
      Point p = fixed;
      for (auto& [k, v] : grid[i]) p[k] = v;
      json r = guarded([&]() -> json {
        if (verb == "cohomology") return h2_report(f, p);
        QTable t = instantiate(f, p);
        if (verb == "contact") return contact_report(t);
        if (verb == "symplectic") return symplectic_report(t, seed);
        return verify_report(t);
      });
      r["params"] = io::point_json(p);
      results[i] = std::move(r);
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(grid.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < jobs; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return json(results);
}

void render(std::ostream& os, const json& j, int indent) {
  std::string pad(indent, ' ');
  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [](const json& v) {
    return v.is_primitive() || (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); }));
  };
  if (j.is_object()) {
    for (auto& [k, v] : j.items()) {
      if (flat(v) && !v.is_array()) {
        os << pad << k << ": " << scalar(v) << "\n";
      } else if (flat(v)) {
        os << pad << k << ": " << v.dump() << "\n";
      } else {
        os << pad << k << ":\n";
        render(os, v, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (auto& v : j) {
      if (flat(v)) {
        os << pad << "- " << scalar(v) << "\n";
      } else {
        os << pad << "-\n";
        render(os, v, indent + 2);
      }
    }
  } else {
    os << pad << scalar(j) << "\n";
  }
}

std::uint64_t default_seed() {
  const char* env = std::getenv("FILIFORM_SEED");
  if (!env || !*env) return 0;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw io::InputError("bad_seed", "FILIFORM_SEED must be a non-negative integer");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on filiform nilpotent Lie algebras"};
  app.require_subcommand(1);
  bool pretty = false;
  std::optional<std::uint64_t> seed_flag;
  app.add_flag("--pretty", pretty, "human-readable output");
  app.add_option("--seed", seed_flag, "random seed (default FILIFORM_SEED or 0)");

  SourceOpts src;
  auto* verify = app.add_subcommand("verify", "Jacobi, nilpotency and filiform checks");
  add_source(verify, src);
  auto* invariants = app.add_subcommand("invariants", "central series, center, characteristic sequence");
  add_source(invariants, src);

  auto* fam = app.add_subcommand("family", "instantiate a named family");
  std::string fam_id, fam_params;
  bool fam_list = false;
  fam->add_option("--id", fam_id, "family id");
  fam->add_option("--params", fam_params, "parameters k=v,...");
  fam->add_flag("--list", fam_list, "list family ids");

  auto* contact = app.add_subcommand("contact", "contact structure test");
  add_source(contact, src);
  auto* sympl = app.add_subcommand("symplectic", "symplectic structure search");
  add_source(sympl, src);

  auto* extend = app.add_subcommand("extend", "central extension by a closed 2-form");
  add_source(extend, src);
  std::string form_path;
  extend->add_option("--form", form_path, "2-form JSON (default: a symplectic witness)");

  auto* quotient = app.add_subcommand("quotient", "quotient by the center");
  add_source(quotient, src);

  auto* cohom = app.add_subcommand("cohomology", "restricted deformation cohomology H^2");
  std::string sweep_path;
  cohom->add_option("--family", src.family, "family id")->required();
  cohom->add_option("--params", src.params, "parameters k=v,...");
  cohom->add_option("--sweep", sweep_path, "grid JSON {name: [values]}");

  auto* jgen = app.add_subcommand("jacobi-gen", "Jacobi ideal of the generic filiform bracket");
  int jdim = 0;
  bool reduce = false;
  jgen->add_option("--dim", jdim, "dimension")->required()->check(CLI::Range(5, 31));
  jgen->add_flag("--reduce", reduce, "reduce by X_0-shift relations");
  jgen->add_flag("--json", [](std::int64_t) {}, "JSON output (default)");

  auto* affine = app.add_subcommand("affine", "left-symmetric products");
  affine->require_subcommand(1);
  auto* aff_verify = affine->add_subcommand("verify", "check a product against an algebra");
  std::string product_path;
  add_source(aff_verify, src);
  aff_verify->add_option("--product", product_path, "product JSON")->required();
  auto* aff_sym = affine->add_subcommand("from-symplectic", "product from a symplectic form");
  add_source(aff_sym, src);
  aff_sym->add_option("--form", form_path, "2-form JSON (default: a symplectic witness)");
  auto* aff_seed = affine->add_subcommand("seed", "adjoint-type product on t2t8 from a reference L1");
  int variant = 1;
  std::string seed_params;
  aff_seed->add_option("--variant", variant, "1 or 2")->check(CLI::Range(1, 2));
  aff_seed->add_option("--params", seed_params, "t, alpha1..alpha6 (default 0)");

  auto* sw = app.add_subcommand("sweep", "evaluate a verb over a parameter grid");
  std::string sweep_verb = "verify";
  unsigned jobs = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  sw->add_option("--family", src.family, "family id")->required();
  sw->add_option("--params", src.params, "fixed parameters k=v,...");
  sw->add_option("--grid", sweep_path, "grid JSON {name: [values]}")->required();
  sw->add_option("--verb", sweep_verb, "verify, contact, symplectic or cohomology")
      ->check(CLI::IsMember({"verify", "contact", "symplectic", "cohomology"}));
  sw->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 64));

  CLI11_PARSE(app, argc, argv);

  json report;
  int status = 0;
  try {
    std::uint64_t seed = seed_flag ? *seed_flag : default_seed();
    report["seed"] = seed;
    auto with_source = [&](auto body) {
      Source s = load(src);
      report["input_hash"] = io::content_hash(s.hash_input);
      report["constraints"] = s.constraints;
      if (!s.params.empty()) report["params"] = io::point_json(s.params);
      body(s);
    };
    auto witness_or_file = [&](const QTable& t) {
      if (!form_path.empty()) return io::parse_form(io::read_json_file(form_path), t.dim());
      auto r = symplectic_exists(t, seed);
      if (!r.witness) throw std::invalid_argument("no symplectic form found; pass --form");
      return *r.witness;
    };

    if (*verify) {
      report["verb"] = "verify";
      with_source([&](Source& s) { report["result"] = verify_report(s.table); });
    } else if (*invariants) {
      report["verb"] = "invariants";
      with_source([&](Source& s) { report["result"] = invariants_report(s.table, seed); });
    } else if (*fam) {
      report["verb"] = "family";
      if (fam_list) {
        report["result"] = {{"families", family_ids()}};
      } else {
        if (fam_id.empty()) throw io::InputError("missing_input", "give --id or --list");
        src.family = fam_id;
        src.params = fam_params;
        with_source([&](Source& s) {
          json r{{"id", s.fam->id}, {"dim", s.fam->dim}, {"free_params", s.fam->params}, {"algebra", io::algebra_json(s.table)}};
          if (fam_id == "fil8" || fam_id == "fil10") r["components"] = component_of(fam_id, s.params);
          json aliases = json::object();
          auto at = to_var_point(s.params);
          for (auto& [k, v] : s.fam->aliases) aliases[k] = {{"poly", v.str()}, {"value", v.eval(at).str()}};
          r["aliases"] = aliases;
          report["result"] = r;
        });
      }
    } else if (*contact) {
      report["verb"] = "contact";
      with_source([&](Source& s) { report["result"] = contact_report(s.table); });
    } else if (*sympl) {
      report["verb"] = "symplectic";
      with_source([&](Source& s) { report["result"] = symplectic_report(s.table, seed); });
    } else if (*extend) {
      report["verb"] = "extend";
      with_source([&](Source& s) {
        QForm theta = witness_or_file(s.table);
        QTable e = central_extension(s.table, theta);
        int n = e.dim();
        QForm w = one_form<Rational>(n, n - 1);
        bool fil = is_filiform(e);
        report["result"] = {{"form", io::form_json(theta)},
                            {"nondegenerate", is_nondegenerate(theta)},
                            {"extension", io::algebra_json(e)},
                            {"filiform", fil},
                            {"contact_form", n % 2 == 1 && is_contact_form(e, w)},
                            {"quotient_round_trip", quotient_by_center(e) == s.table}};
      });
    } else if (*quotient) {
      report["verb"] = "quotient";
      with_source([&](Source& s) {
        report["result"] = {{"center_dim", center(s.table).cols()}, {"quotient", io::algebra_json(quotient_by_center(s.table))}};
      });
    } else if (*cohom) {
      report["verb"] = "cohomology";
      auto [f, p] = family_with_params(src.family, src.params);
      if (sweep_path.empty()) {
        with_source([&](Source& s) { report["result"] = h2_report(*s.fam, s.params); });
      } else {
        std::string grid_text = io::read_text(sweep_path);
        report["input_hash"] = io::content_hash("family=" + src.family + ";params=" + src.params + ";grid=" + grid_text);
        report["constraints"] = json::array();
        for (size_t i = 0; i < f.constraints.size(); ++i)
          report["constraints"].push_back({{"name", f.constraint_names[i]}, {"poly", f.constraints[i].str()}});
        report["result"] = sweep(f, p, grid_points(io::read_json_file(sweep_path)), "cohomology", seed, jobs);
      }
    } else if (*jgen) {
      report["verb"] = "jacobi-gen";
      report["input_hash"] = io::content_hash("jacobi-gen;dim=" + std::to_string(jdim) + (reduce ? ";reduce" : ""));
      auto g = generic_filiform(jdim);
      auto eqs = jacobi_ideal(g);
      auto eq_json = [](const JacobiEquation& e) {
        json polys = json::array();
        for (auto& p : e.polys()) polys.push_back(p.str());
        return json{{"triple", {e.i, e.j, e.k}}, {"weight", e.weight}, {"polys", polys}};
      };
      json pairs = json::array();
      for (auto [i, j] : g.free_pairs) pairs.push_back(top_param_name(i, j));
      json r{{"dim", jdim}, {"free_parameters", pairs}, {"equations", json::array()}};
      for (auto& e : eqs) r["equations"].push_back(eq_json(e));
      report["constraints"] = json::array();
      for (auto& e : eqs)
        for (auto& p : e.polys()) report["constraints"].push_back(p.str());
      if (jdim % 2 == 1) {
        auto c = equation_count((jdim - 1) / 2);
        r["equation_count"] = {{"series", c.series}, {"epsilon", c.epsilon}, {"used_epsilon", c.used_epsilon}, {"brute_force", eqs.size()}};
      }
      if (reduce) {
        auto red = reduce_ideal(eqs, jdim);
        r["generators"] = json::array();
        for (auto& e : red.generators) r["generators"].push_back(eq_json(e));
        r["certificates"] = json::array();
        for (auto& c : red.certificates) {
          json others = json::array();
          for (auto& t : c.others) others.push_back({{"sign", t.sign}, {"triple", {t.i, t.j, t.k}}});
          r["certificates"].push_back({{"triple", {c.i, c.j, c.k}},
                                       {"source", {c.source[0], c.source[1], c.source[2]}},
                                       {"sign", c.sign},
                                       {"others", others},
                                       {"verified", c.verified}});
        }
        r["notes"] = red.notes;
      }
      report["result"] = r;
    } else if (*affine) {
      if (*aff_verify) {
        report["verb"] = "affine verify";
        with_source([&](Source& s) {
          std::string text = io::read_text(product_path);
          report["input_hash"] = io::content_hash(s.hash_input + "\n" + text);
          QAffine p = io::parse_product(json::parse(text));
          auto c = check_left_symmetric(p, s.table);
          auto fail_json = [](const auto& list) {
            json out = json::array();
            for (size_t i = 0; i < std::min(list.size(), kMaxListed); ++i) {
              json idx = list[i].k < 0 ? json{list[i].i, list[i].j} : json{list[i].i, list[i].j, list[i].k};
              out.push_back({{"indices", idx}, {"residual", vec_json(list[i].residual)}});
            }
            return out;
          };
          json r{{"left_symmetric", c.ok()},
                 {"bracket_failures", fail_json(c.bracket)},
                 {"associator_failures", fail_json(c.associator)}};
          auto comp = completeness(p, seed);
          auto pol = polarization_check(p);
          r["complete"] = comp.complete;
          r["polarization"] = {{"A_vanishes", pol.ok()}, {"cyclic_identity", pol.cyclic_holds()}};
          report["result"] = r;
        });
      } else if (*aff_sym) {
        report["verb"] = "affine from-symplectic";
        with_source([&](Source& s) {
          QForm theta = witness_or_file(s.table);
          QAffine p = affine_from_symplectic(s.table, theta);
          report["result"] = {{"form", io::form_json(theta)},
                              {"product", io::product_json(p)},
                              {"left_symmetric", check_left_symmetric(p, s.table).ok()},
                              {"complete", completeness(p, seed).complete}};
        });
      } else {
        report["verb"] = "affine seed";
        Point at = io::parse_params(seed_params);
        report["input_hash"] = io::content_hash("affine seed;variant=" + std::to_string(variant) + ";" + point_string(at));
        std::map<VarId, Rational> vars{{intern("t"), 0}};
        for (int i = 1; i <= 6; ++i) vars[intern("alpha" + std::to_string(i))] = 0;
        for (auto& [k, v] : at) {
          if (!vars.count(intern(k))) throw io::InputError("bad_params", "unknown symbol " + k);
          vars[intern(k)] = v;
        }
        auto f = family("t2t8");
        QTable t = instantiate(f, {{"t", vars[intern("t")]}});
        report["constraints"] = json::array();
        QAffine p = adjoint_type_build(t, eval(t2t8_affine_seed(variant), vars));
        auto c = check_left_symmetric(p, t);
        json br = json::array();
        for (auto& b : c.bracket) br.push_back({{"indices", {b.i, b.j}}, {"residual", vec_json(b.residual)}});
        report["result"] = {{"product", io::product_json(p)},
                            {"left_symmetric", c.ok()},
                            {"bracket_failures", br},
                            {"associator_failure_count", c.associator.size()},
                            {"complete", completeness(p, seed).complete},
                            {"last_left_multiplication_zero", all_zero(p.L[7])}};
      }
    } else if (*sw) {
      report["verb"] = "sweep";
      auto [f, p] = family_with_params(src.family, src.params);
      std::string grid_text = io::read_text(sweep_path);
      json grid;
      try {
        grid = json::parse(grid_text);
      } catch (const json::parse_error& e) {
        throw io::InputError("malformed_json", sweep_path + ": " + e.what());
      }
      report["input_hash"] = io::content_hash("family=" + src.family + ";params=" + src.params + ";verb=" + sweep_verb + ";grid=" + grid_text);
      report["constraints"] = json::array();
      for (size_t i = 0; i < f.constraints.size(); ++i)
        report["constraints"].push_back({{"name", f.constraint_names[i]}, {"poly", f.constraints[i].str()}});
      report["sweep_verb"] = sweep_verb;
      report["result"] = sweep(f, p, grid_points(grid), sweep_verb, seed, jobs);
    }
  } catch (const io::InputError& e) {
    report["error"] = error_json(e.code, e.what());
    status = e.code == "io" || e.code == "malformed_json" ? 1 : 2;
  } catch (const ConstraintViolation& e) {
    report["error"] = error_json("constraint_violation", e.what());
    report["error"]["poly"] = e.poly.str();
    report["error"]["value"] = e.value.str();
    status = 2;
  } catch (const std::exception& e) {
    report["error"] = error_json("precondition", e.what());
    status = 2;
  }

  std::ostream& os = status == 0 ? std::cout : std::cerr;
  if (pretty)
    render(os, report, 0);
  else
    os << report.dump() << "\n";
  return status;
}
