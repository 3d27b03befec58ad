#include "filiform/vergnegen.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <set>

namespace filiform {

std::string top_param_name(int i, int j) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "a_%02d_%02d", i, j);
  return buf;
}

VarId top_param(int i, int j) { return intern(top_param_name(i, j)); }

namespace {

// p = c * L^d with L linear, normalized so the coefficient of `pivot` is 1.
std::optional<Poly> linear_root(const Poly& p, VarId pivot) {
  if (p.is_zero() || !p.is_homogeneous()) return std::nullopt;
  unsigned d = p.degree();
  if (d == 0) return std::nullopt;
  Rational c = p.coeff(pivot, d).constant_value();
  if (c.is_zero()) return std::nullopt;
  Poly l = Poly::var(pivot);
  if (d == 1) {
    l = p / c;
  } else {
    Poly below = p.coeff(pivot, d - 1);  // c*d*sum l_y y
    l += below / (c * Rational(static_cast<long>(d)));
  }
  if (!is_linear(l)) return std::nullopt;
  if (pow(l, d) * Poly(c) != p) return std::nullopt;
  return l;
}

}  // namespace

GenericBracket generic_filiform(int n) {
  if (n < 5) throw std::invalid_argument("generic_filiform needs n >= 5");
  GenericBracket g;
  g.dim = n;
  PTable t(n);
  for (int i = 1; i + 1 < n; ++i) t.set(0, i, i + 1, Poly(1));
  std::map<VarId, std::pair<int, int>> pair_of;
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j <= n - 2; ++j) {
      if (i + j > n - 1 || (i == 1 && j == n - 2)) continue;
      g.initial_pairs.emplace_back(i, j);
      pair_of[top_param(i, j)] = {i, j};
      t.set(i, j, n - 1, Poly::var(top_param(i, j)));
    }
  for (int k = n - 1; k >= 2; --k)
    for (int i = 1; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Poly v = (i + 1 < j) ? t(i + 1, j, k) : Poly();
        if (j + 1 < n) v += t(i, j + 1, k);
        if (!v.is_zero()) t.set(i, j, k - 1, v);
      }

  std::set<std::pair<int, int>> alive(g.initial_pairs.begin(), g.initial_pairs.end());
  for (bool progress = true; progress;) {
    progress = false;
    for (int i = 1; i < n && !progress; ++i)
      for (int j = i + 1; j < n && !progress; ++j)
        for (int k = j + 1; k < n && !progress; ++k) {
          PVec r = jacobi_residual(t, i, j, k);
          for (int m = 0; m < n && !progress; ++m) {
            if (r(m).is_zero()) continue;
            VarId best = 0;
            std::pair<int, int> best_pair{-1, -1};
            for (VarId v : r(m).variables())
              if (pair_of.count(v) && pair_of[v] > best_pair) {
                best_pair = pair_of[v];
                best = v;
              }
            if (best_pair.first < 0) continue;
            auto root = linear_root(r(m), best);
            if (!root) continue;
            Poly value = Poly::var(best) - *root;  // best = value
            t = substitute(t, {{best, value}});
            alive.erase(best_pair);
            g.eliminated.push_back({best_pair.first, best_pair.second, value, {i, j, k}, m});
            progress = true;
          }
        }
  }
  g.table = t;
  g.free_pairs.assign(alive.begin(), alive.end());
  return g;
}

PTable restrict_bracket(const GenericBracket& g, const std::vector<std::pair<int, int>>& keep) {
  std::set<std::pair<int, int>> k(keep.begin(), keep.end());
  std::map<VarId, Poly> zero;
  for (auto& pr : g.free_pairs)
    if (!k.count(pr)) zero[top_param(pr.first, pr.second)] = Poly();
  return substitute(g.table, zero);
}

std::vector<std::pair<int, int>> antidiagonal_pairs(int n) {
  if (n % 2 == 0) throw std::invalid_argument("antidiagonal constants need odd dimension");
  std::vector<std::pair<int, int>> out;
  int p = (n - 1) / 2;
  for (int i = 1; i <= p - 1; ++i) out.emplace_back(i, n - 2 - i);
  return out;
}

QTable alternating_model(int p, const Rational& lambda) {
  int n = 2 * p + 1;
  auto g = generic_filiform(n);
  auto pairs = antidiagonal_pairs(n);
  PTable t = restrict_bracket(g, pairs);
  std::map<VarId, Rational> at;
  for (auto& [i, j] : pairs) at[top_param(i, j)] = (i % 2 == 1) ? lambda : -lambda;
  return instantiate(t, at);
}

std::vector<Poly> JacobiEquation::polys() const {
  std::vector<Poly> out;
  for (Index m = 0; m < residual.size(); ++m)
    if (!residual(m).is_zero()) out.push_back(residual(m));
  return out;
}

std::vector<JacobiEquation> jacobi_ideal(const PTable& t) {
  std::vector<JacobiEquation> out;
  for (auto& f : check_jacobi(t)) out.push_back({f.i, f.j, f.k, f.i + f.j + f.k, f.residual});
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.weight < b.weight; });
  return out;
}

std::vector<ShiftTerm> shift_terms(int n, int i, int j, int k) {
  std::vector<ShiftTerm> out;
  std::array<std::array<int, 3>, 3> raw{{{i + 1, j, k}, {i, j + 1, k}, {i, j, k + 1}}};
  for (auto tr : raw) {
    if (tr[0] >= n || tr[1] >= n || tr[2] >= n) continue;
    if (tr[0] == tr[1] || tr[1] == tr[2] || tr[0] == tr[2]) continue;
    int sign = 1;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b + 1 < 3 - a; ++b)
        if (tr[b] > tr[b + 1]) {
          std::swap(tr[b], tr[b + 1]);
          sign = -sign;
        }
    out.push_back({sign, tr[0], tr[1], tr[2]});
  }
  return out;
}

PVec shift_vector(const PVec& v) {
  Index n = v.size();
  PVec out = zero_vec<Poly>(n);
  for (Index m = 1; m + 1 < n; ++m) out(m + 1) = v(m);
  return out;
}

Reduction reduce_ideal(const std::vector<JacobiEquation>& eqs, int n) {
  using Triple = std::array<int, 3>;
  std::map<Triple, const JacobiEquation*> by_triple;
  for (auto& e : eqs) by_triple[{e.i, e.j, e.k}] = &e;
  auto vec_of = [&](const Triple& t) -> PVec {
    auto it = by_triple.find(t);
    return it == by_triple.end() ? zero_vec<Poly>(n) : it->second->residual;
  };

  Reduction red;
  std::set<Triple> known;
  std::set<Triple> retained;
  std::map<int, std::vector<Triple>> by_weight;
  for (auto& [t, e] : by_triple) by_weight[e->weight].push_back(t);

  auto relation_for = [&](const Triple& s) {
    std::vector<ShiftTerm> live;
    for (auto& term : shift_terms(n, s[0], s[1], s[2]))
      if (by_triple.count({term.i, term.j, term.k})) live.push_back(term);
    return live;
  };

  auto eliminate = [&](const Triple& s, const std::vector<ShiftTerm>& terms, const Triple& target) {
    Certificate c{target[0], target[1], target[2], {s[0], s[1], s[2]}, {}, 0, false};
    PVec rhs = shift_vector(vec_of(s));
    for (auto& term : terms) {
      Triple tt{term.i, term.j, term.k};
      if (tt == target) {
        c.sign = term.sign;
      } else {
        c.others.push_back(term);
        PVec o = vec_of(tt);
        if (term.sign > 0) rhs -= o; else rhs += o;
      }
    }
    PVec lhs = vec_of(target);
    if (c.sign < 0) lhs = PVec(-lhs);
    c.verified = lhs == rhs;
    if (!c.verified) return false;
    red.certificates.push_back(c);
    known.insert(target);
    return true;
  };

  for (auto& [w, triples] : by_weight) {
    std::vector<Triple> sources;
    for (auto& s : known)
      if (s[0] + s[1] + s[2] == w - 1) sources.push_back(s);
    std::set<Triple> used;
    for (bool progress = true; progress;) {
      progress = false;
      // A relation with exactly one unknown triple eliminates it outright.
      for (auto& s : sources) {
        if (used.count(s)) continue;
        auto terms = relation_for(s);
        std::vector<Triple> unknown;
        for (auto& term : terms)
          if (!known.count({term.i, term.j, term.k})) unknown.push_back({term.i, term.j, term.k});
        if (unknown.empty()) {
          used.insert(s);
          continue;
        }
        if (unknown.size() == 1 && eliminate(s, terms, unknown[0])) {
          used.insert(s);
          progress = true;
        }
      }
      if (progress) continue;
      // Otherwise keep all but the smallest unknown as generators and eliminate that one.
      for (auto& s : sources) {
        if (used.count(s)) continue;
        auto terms = relation_for(s);
        std::vector<Triple> unknown;
        for (auto& term : terms)
          if (!known.count({term.i, term.j, term.k})) unknown.push_back({term.i, term.j, term.k});
        if (unknown.size() < 2) continue;
        std::sort(unknown.begin(), unknown.end());
        for (size_t u = 1; u < unknown.size(); ++u) {
          retained.insert(unknown[u]);
          known.insert(unknown[u]);
        }
        if (eliminate(s, terms, unknown[0])) {
          used.insert(s);
          progress = true;
          break;
        }
        red.notes.push_back("shift relation failed its exact check");
      }
    }
    for (auto& t : triples)
      if (!known.count(t)) {
        retained.insert(t);
        known.insert(t);
      }
  }
  for (auto& t : retained) red.generators.push_back(*by_triple[t]);
  std::stable_sort(red.generators.begin(), red.generators.end(),
                   [](const auto& a, const auto& b) { return a.weight < b.weight; });
  return red;
}

EquationCount equation_count(int p) {
  if (p < 3) throw std::invalid_argument("equation_count needs p >= 3");
  EquationCount c{p, 0, 0, false, {}};
  c.epsilon = (p % 3 == 0) ? 2 : (p % 3 == 1) ? 1 : 4;
  // (p-3)^2, (p-4)(p-5), (p-6)^2, (p-7)(p-8), ...
  for (int s = 3;; s += 3) {
    long sq = static_cast<long>(p - s);
    if (sq < 1) break;
    c.terms.push_back(sq * sq);
    long a = p - s - 1, b = p - s - 2;
    if (a < 1 || b < 1) break;
    c.terms.push_back(a * b);
  }
  for (long t : c.terms) c.series += t;
  if (c.terms.empty()) {
    c.series = c.epsilon;
    c.used_epsilon = true;
  }
  return c;
}

long reduced_count(int m, int r) {
  if (m < 0 || r < 0 || r > 2) throw std::invalid_argument("reduced_count: r must be 0, 1 or 2");
  long h = m / 2;
  if (m % 2 == 0 && r == 0) return 3 * h * h - 3 * h + 1;
  if (m % 2 == 1 && r == 1) return 3 * h * h + 3 * h;
  if (m % 2 == 0 && r == 2) return 3 * h * h - h;
  throw std::invalid_argument("reduced_count: (m, r) matches no closed-form case");
}

}  // namespace filiform
