#pragma once

#include <string>

#include <json.hpp>

#include "filiform/affine.hpp"
#include "filiform/families.hpp"
#include "filiform/forms.hpp"

namespace filiform::io {

using nlohmann::json;

// Malformed input; `code` is a short machine-readable tag.
class InputError : public std::runtime_error {
 public:
  InputError(std::string code, const std::string& what) : std::runtime_error(what), code(std::move(code)) {}
  std::string code;
};

Rational parse_rational(const json& v, const std::string& where);
json rational_json(const Rational& r);

struct AlgebraFile {
  QTable table;
  Point params;
};
AlgebraFile parse_algebra(const json& j);
json algebra_json(const QTable& t, const Point& params = {});

QForm parse_form(const json& j, int n);
json form_json(const QForm& f);

QAffine parse_product(const json& j);
json product_json(const QAffine& p);

// "a2=1,a4=-1/2"
Point parse_params(const std::string& s);
json point_json(const Point& p);

json read_json_file(const std::string& path);  // "-" reads stdin
std::string read_text(const std::string& path);

// 64-bit FNV-1a, hex.
std::string content_hash(const std::string& bytes);

}  // namespace filiform::io
