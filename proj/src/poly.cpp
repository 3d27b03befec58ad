#include "filiform/poly.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace filiform {

namespace {

struct Registry {
  std::mutex mu;
  std::vector<std::string> names;
  std::unordered_map<std::string, VarId> ids;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

VarId intern(const std::string& name) {
  auto& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  auto it = r.ids.find(name);
  if (it != r.ids.end()) return it->second;
  VarId id = static_cast<VarId>(r.names.size());
  r.names.push_back(name);
  r.ids.emplace(name, id);
  return id;
}

const std::string& var_name(VarId id) {
  auto& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  if (id >= r.names.size()) throw std::out_of_range("unknown variable id");
  return r.names[id];
}

bool natural_less(const std::string& a, const std::string& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      std::string x = a.substr(i, ie - i), y = b.substr(j, je - j);
      x.erase(0, std::min(x.find_first_not_of('0'), x.size()));
      y.erase(0, std::min(y.find_first_not_of('0'), y.size()));
      if (x.size() != y.size()) return x.size() < y.size();
      if (x != y) return x < y;
      if (ie - i != je - j) return ie - i < je - j;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

// ---- Monomial

Monomial::Monomial(VarId v, unsigned e) {
  if (e > 0) f_.emplace_back(v, e);
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (auto& [v, e] : f_) d += e;
  return d;
}

unsigned Monomial::degree_in(VarId v) const {
  for (auto& [w, e] : f_)
    if (w == v) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  m.f_.reserve(f_.size() + o.f_.size());
  size_t i = 0, j = 0;
  while (i < f_.size() || j < o.f_.size()) {
    if (j == o.f_.size() || (i < f_.size() && f_[i].first < o.f_[j].first)) {
      m.f_.push_back(f_[i++]);
    } else if (i == f_.size() || o.f_[j].first < f_[i].first) {
      m.f_.push_back(o.f_[j++]);
    } else {
      m.f_.emplace_back(f_[i].first, f_[i].second + o.f_[j].second);
      ++i;
      ++j;
    }
  }
  return m;
}

Monomial Monomial::without(VarId v) const {
  Monomial m;
  for (auto& p : f_)
    if (p.first != v) m.f_.push_back(p);
  return m;
}

bool operator<(const Monomial& a, const Monomial& b) {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.f_ < b.f_;
}

std::string Monomial::str() const {
  std::vector<std::pair<std::string, unsigned>> parts;
  for (auto& [v, e] : f_) parts.emplace_back(var_name(v), e);
  std::sort(parts.begin(), parts.end(),
            [](const auto& x, const auto& y) { return natural_less(x.first, y.first); });
  std::string s;
  for (auto& [name, e] : parts) {
    if (!s.empty()) s += "*";
    s += name;
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

// ---- Poly

Poly::Poly(const Rational& c) {
  if (!c.is_zero()) t_.emplace(Monomial(), c);
}

Poly Poly::var(VarId v) {
  Poly p;
  p.t_.emplace(Monomial(v), Rational(1));
  return p;
}

Poly Poly::term(const Rational& c, const Monomial& m) {
  Poly p;
  if (!c.is_zero()) p.t_.emplace(m, c);
  return p;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }

Rational Poly::constant_value() const {
  auto it = t_.find(Monomial());
  return it == t_.end() ? Rational(0) : it->second;
}

unsigned Poly::degree() const { return t_.empty() ? 0 : t_.rbegin()->first.degree(); }

unsigned Poly::degree_in(VarId v) const {
  unsigned d = 0;
  for (auto& [m, c] : t_) d = std::max(d, m.degree_in(v));
  return d;
}

std::set<VarId> Poly::variables() const {
  std::set<VarId> s;
  for (auto& [m, c] : t_)
    for (auto& [v, e] : m.factors()) s.insert(v);
  return s;
}

bool Poly::is_homogeneous() const {
  return t_.empty() || t_.begin()->first.degree() == t_.rbegin()->first.degree();
}

Poly& Poly::operator+=(const Poly& o) {
  for (auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (auto& [m, c] : o.t_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  if (a.is_zero() || b.is_zero()) return out;
  for (auto& [ma, ca] : a.t_)
    for (auto& [mb, cb] : b.t_) out.add_term(ma * mb, ca * cb);
  return out;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [m, v] : t_) v *= c;
  return *this;
}

Poly& Poly::operator/=(const Rational& c) {
  if (c.is_zero()) throw std::domain_error("division by zero");
  for (auto& [m, v] : t_) v /= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& [m, v] : p.t_) v = -v;
  return p;
}

Rational Poly::eval(const std::map<VarId, Rational>& at) const {
  Rational sum(0);
  for (auto& [m, c] : t_) {
    Rational v = c;
    for (auto& [x, e] : m.factors()) {
      auto it = at.find(x);
      if (it == at.end()) throw std::out_of_range("missing value for variable " + var_name(x));
      v *= pow(it->second, e);
    }
    sum += v;
  }
  return sum;
}

Rational Poly::eval(const std::map<std::string, Rational>& at) const {
  std::map<VarId, Rational> ids;
  for (auto& [name, v] : at) ids.emplace(intern(name), v);
  return eval(ids);
}

Poly Poly::subs(const std::map<VarId, Poly>& at) const {
  Poly out;
  for (auto& [m, c] : t_) {
    Monomial rest;
    Poly factor(c);
    for (auto& [x, e] : m.factors()) {
      auto it = at.find(x);
      if (it == at.end())
        rest = rest * Monomial(x, e);
      else
        factor *= pow(it->second, e);
    }
    for (auto& [fm, fc] : factor.t_) out.add_term(fm * rest, fc);
  }
  return out;
}

Poly Poly::derivative(VarId v) const {
  Poly out;
  for (auto& [m, c] : t_) {
    unsigned e = m.degree_in(v);
    if (e == 0) continue;
    out.add_term(m.without(v) * Monomial(v, e - 1), c * Rational(static_cast<long>(e)));
  }
  return out;
}

Poly Poly::coeff(VarId v, unsigned k) const {
  Poly out;
  for (auto& [m, c] : t_)
    if (m.degree_in(v) == k) out.add_term(m.without(v), c);
  return out;
}

std::vector<std::pair<Monomial, Rational>> Poly::ordered_terms() const {
  using Key = std::vector<std::pair<std::string, unsigned>>;
  std::vector<std::tuple<unsigned, Key, Monomial, Rational>> rows;
  for (auto& [m, c] : t_) {
    Key k;
    for (auto& [v, e] : m.factors()) k.emplace_back(var_name(v), e);
    std::sort(k.begin(), k.end(), [](const auto& x, const auto& y) { return natural_less(x.first, y.first); });
    rows.emplace_back(m.degree(), std::move(k), m, c);
  }
  // Lex: the first variable (in name order) where exponents differ decides; larger exponent first.
  auto lex_greater = [](const Key& a, const Key& b) {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i].first == b[j].first) {
        if (a[i].second != b[j].second) return a[i].second > b[j].second;
        ++i;
        ++j;
      } else {
        return natural_less(a[i].first, b[j].first);
      }
    }
    return i < a.size();
  };
  std::sort(rows.begin(), rows.end(), [&](const auto& x, const auto& y) {
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) > std::get<0>(y);
    return lex_greater(std::get<1>(x), std::get<1>(y));
  });
  std::vector<std::pair<Monomial, Rational>> out;
  for (auto& r : rows) out.emplace_back(std::get<2>(r), std::get<3>(r));
  return out;
}

Rational Poly::leading_coefficient() const {
  if (t_.empty()) return Rational(0);
  return ordered_terms().front().second;
}

Poly Poly::primitive() const {
  if (t_.empty()) return *this;
  mpz_class g = 0, l = 1;
  for (auto& [m, c] : t_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.raw().get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.raw().get_den_mpz_t());
  }
  Rational scale(mpq_class(l, abs(g)));
  if (leading_coefficient().sign() < 0) scale = -scale;
  Poly p = *this;
  p *= scale;
  return p;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [m, c] : ordered_terms()) {
    Rational a = c;
    if (first) {
      if (a.sign() < 0) {
        s += "-";
        a = -a;
      }
    } else {
      s += a.sign() < 0 ? " - " : " + ";
      if (a.sign() < 0) a = -a;
    }
    first = false;
    if (m.is_one()) {
      s += a.str();
    } else {
      if (!a.is_one()) s += a.str() + "*";
      s += m.str();
    }
  }
  return s;
}

Poly pow(const Poly& p, unsigned e) {
  Poly out(1);
  for (unsigned i = 0; i < e; ++i) out *= p;
  return out;
}

Rational unit_ratio(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero() || p.size() != q.size()) return Rational(0);
  Rational c(0);
  auto it = q.terms().begin();
  for (auto& [m, a] : p.terms()) {
    if (!(it->first == m)) return Rational(0);
    Rational r = a / it->second;
    if (c.is_zero())
      c = r;
    else if (r != c)
      return Rational(0);
    ++it;
  }
  return c;
}

bool is_linear(const Poly& p) { return !p.is_zero() && p.degree() == 1; }

// ---- parser

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("polynomial parse error at " + std::to_string(pos_) + " in '" + s_ + "': " + why);
  }

  Poly expr() {
    Poly p = term();
    for (;;) {
      if (eat('+'))
        p += term();
      else if (eat('-'))
        p -= term();
      else
        return p;
    }
  }

  Poly term() {
    Poly p = unary();
    for (;;) {
      if (eat('*')) {
        p *= unary();
      } else if (eat('/')) {
        Poly d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        p /= d.constant_value();
      } else {
        return p;
      }
    }
  }

  Poly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    Poly base = primary();
    if (eat('^')) {
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = pow(base, static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  Poly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Poly(Rational(mpz_class(s_.substr(start, pos_ - start), 10)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return Poly::var(s_.substr(start, pos_ - start));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(const std::string& s) { return Parser(s).parse(); }

}  // namespace filiform

namespace filiform {

Poly eliminate_linear(const Poly& r, const Poly& c, VarId v) {
  if (c.degree_in(v) != 1) throw std::invalid_argument("eliminate_linear: constraint is not linear in the variable");
  Poly a = c.coeff(v, 1), b = -c.coeff(v, 0);
  unsigned d = r.degree_in(v);
  Poly out;
  for (unsigned k = 0; k <= d; ++k) out += r.coeff(v, k) * pow(b, k) * pow(a, d - k);
  return out;
}

}  // namespace filiform
