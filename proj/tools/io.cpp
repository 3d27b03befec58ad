#include "io.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace filiform::io {

Rational parse_rational(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
  } catch (const std::exception&) {
  }
  throw InputError("bad_rational", where + ": expected a rational \"p/q\", got " + v.dump());
}

json rational_json(const Rational& r) { return r.str(); }

namespace {

int index_field(const json& e, const char* key, int n, const std::string& where) {
  if (!e.contains(key) || !e[key].is_number_integer()) throw InputError("bad_index", where + ": missing integer \"" + key + "\"");
  int v = e[key].get<int>();
  if (v < 0 || v >= n) throw InputError("index_out_of_range", where + ": index " + std::to_string(v) + " outside 0.." + std::to_string(n - 1));
  return v;
}

int dim_field(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer())
    throw InputError("bad_algebra", "expected an object with integer \"dim\"");
  int n = j["dim"].get<int>();
  if (n < 1 || n > 31) throw InputError("bad_dim", "dim must be in 1..31");
  return n;
}

template <class F>
void for_entries(const json& j, const char* key, int n, F f) {
  if (!j.contains(key)) return;
  if (!j[key].is_array()) throw InputError("bad_algebra", std::string("\"") + key + "\" must be an array");
  for (size_t e = 0; e < j[key].size(); ++e) {
    const json& entry = j[key][e];
    std::string where = std::string(key) + "[" + std::to_string(e) + "]";
    int i = index_field(entry, "i", n, where), jj = index_field(entry, "j", n, where);
    if (!entry.contains("coeffs") || !entry["coeffs"].is_object()) throw InputError("bad_algebra", where + ": missing \"coeffs\"");
    for (auto& [k, v] : entry["coeffs"].items()) {
      int kk;
      try {
        size_t used = 0;
        kk = std::stoi(k, &used);
        if (used != k.size()) throw std::invalid_argument(k);
      } catch (const std::exception&) {
        throw InputError("bad_index", where + ": coefficient key \"" + k + "\" is not an index");
      }
      if (kk < 0 || kk >= n) throw InputError("index_out_of_range", where + ": index " + k + " outside 0.." + std::to_string(n - 1));
      f(i, jj, kk, parse_rational(v, where));
    }
  }
}

Point parse_param_object(const json& j) {
  Point p;
  if (!j.contains("params")) return p;
  if (!j["params"].is_object()) throw InputError("bad_algebra", "\"params\" must be an object");
  for (auto& [k, v] : j["params"].items()) p[k] = parse_rational(v, "params." + k);
  return p;
}

}  // namespace

AlgebraFile parse_algebra(const json& j) {
  int n = dim_field(j);
  AlgebraFile out{QTable(n), parse_param_object(j)};
  for_entries(j, "brackets", n, [&](int i, int jj, int k, const Rational& v) {
    if (i >= jj) throw InputError("bad_order", "brackets must be listed with i < j");
    out.table.set(i, jj, k, v);
  });
  return out;
}

json algebra_json(const QTable& t, const Point& params) {
  json out{{"dim", t.dim()}, {"brackets", json::array()}};
  for (auto [i, j] : t.nonzero_pairs()) {
    json coeffs = json::object();
    for (int k = 0; k < t.dim(); ++k)
      if (!t(i, j, k).is_zero()) coeffs[std::to_string(k)] = t(i, j, k).str();
    out["brackets"].push_back({{"i", i}, {"j", j}, {"coeffs", coeffs}});
  }
  if (!params.empty()) out["params"] = point_json(params);
  return out;
}

QForm parse_form(const json& j, int n) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_object()) throw InputError("bad_form", "expected {\"degree\": d, \"terms\": {...}}");
  QForm f(n);
  int degree = j.value("degree", -1);
  for (auto& [k, v] : j["terms"].items()) {
    std::vector<int> idx;
    std::stringstream ss(k);
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        idx.push_back(std::stoi(part));
      } catch (const std::exception&) {
        throw InputError("bad_form", "form key \"" + k + "\" is not an index list");
      }
      if (idx.back() < 0 || idx.back() >= n) throw InputError("index_out_of_range", "form key \"" + k + "\" out of range");
    }
    if (degree >= 0 && static_cast<int>(idx.size()) != degree) throw InputError("bad_form", "form key \"" + k + "\" has the wrong degree");
    f = f + QForm::basis(n, idx, parse_rational(v, "terms." + k));
  }
  return f;
}

json form_json(const QForm& f) {
  json terms = json::object();
  int degree = 0;
  for (auto& [m, c] : f.terms()) {
    terms[form_key(m)] = c.str();
    degree = static_cast<int>(mask_indices(m).size());
  }
  return {{"degree", degree}, {"terms", terms}};
}

QAffine parse_product(const json& j) {
  int n = dim_field(j);
  QAffine p(n);
  for_entries(j, "products", n, [&](int i, int jj, int k, const Rational& v) { p.L[i](k, jj) = v; });
  return p;
}

json product_json(const QAffine& p) {
  json out{{"dim", p.n}, {"products", json::array()}};
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j) {
      json coeffs = json::object();
      for (int k = 0; k < p.n; ++k)
        if (!p.L[i](k, j).is_zero()) coeffs[std::to_string(k)] = p.L[i](k, j).str();
      if (!coeffs.empty()) out["products"].push_back({{"i", i}, {"j", j}, {"coeffs", coeffs}});
    }
  return out;
}

Point parse_params(const std::string& s) {
  Point p;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("bad_params", "expected name=value, got \"" + item + "\"");
    p[item.substr(0, eq)] = parse_rational(item.substr(eq + 1), "params." + item.substr(0, eq));
  }
  return p;
}

json point_json(const Point& p) {
  json out = json::object();
  for (auto& [k, v] : p) out[k] = v.str();
  return out;
}

std::string read_text(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("io", "cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

json read_json_file(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw InputError("malformed_json", path + ": " + e.what());
  }
}

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace filiform::io
