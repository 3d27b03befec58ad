#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "filiform/liecore.hpp"

namespace filiform {

using Mask = std::uint32_t;

inline std::vector<int> mask_indices(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

inline Mask indices_mask(const std::vector<int>& idx) {
  Mask m = 0;
  for (int i : idx) m |= Mask(1) << i;
  return m;
}

// Sign of w_A ^ w_B relative to w_{A u B} with increasing indices; 0 if A, B overlap.
inline int shuffle_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int inversions = 0;
  for (Mask rest = b; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    inversions += std::popcount(a >> (j + 1));
  }
  return inversions % 2 ? -1 : 1;
}

// Element of the exterior algebra on the dual basis w_0..w_{n-1}. A term keyed by
// the set {i_1 < ... < i_d} stands for w_{i_1} ^ ... ^ w_{i_d}.
template <class S>
class ExtElement {
 public:
  ExtElement() = default;
  explicit ExtElement(int n) : n_(n) {
    if (n > 31) throw std::invalid_argument("exterior algebra dimension too large");
  }

  static ExtElement basis(int n, const std::vector<int>& idx, const S& c = S(1)) {
    ExtElement e(n);
    std::vector<int> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return e;
    // sign of the permutation sorting idx
    int inv = 0;
    for (size_t a = 0; a < idx.size(); ++a)
      for (size_t b = a + 1; b < idx.size(); ++b)
        if (idx[a] > idx[b]) ++inv;
    e.add(indices_mask(idx), inv % 2 ? S(-c) : c);
    return e;
  }

  int dim() const { return n_; }
  const std::map<Mask, S>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  // -1 for the zero element or mixed degrees.
  int degree() const {
    int d = -1;
    for (auto& [m, c] : t_) {
      int k = std::popcount(m);
      if (d == -1)
        d = k;
      else if (d != k)
        return -1;
    }
    return d;
  }

  S coeff(Mask m) const {
    auto it = t_.find(m);
    return it == t_.end() ? S(0) : it->second;
  }
  S coeff(const std::vector<int>& sorted_idx) const { return coeff(indices_mask(sorted_idx)); }
  S top() const { return coeff(n_ >= 32 ? ~Mask(0) : (Mask(1) << n_) - 1); }

  // Value of a 2-form on (X_i, X_j).
  S value(int i, int j) const {
    if (i == j) return S(0);
    S c = coeff((Mask(1) << i) | (Mask(1) << j));
    return i < j ? c : S(-c);
  }

  void add(Mask m, const S& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  ExtElement& operator+=(const ExtElement& o) {
    for (auto& [m, c] : o.t_) add(m, c);
    return *this;
  }
  ExtElement& operator-=(const ExtElement& o) {
    for (auto& [m, c] : o.t_) add(m, S(-c));
    return *this;
  }
  ExtElement& operator*=(const S& s) {
    std::map<Mask, S> next;
    for (auto& [m, c] : t_) {
      S v = c * s;
      if (!v.is_zero()) next.emplace(m, v);
    }
    t_ = std::move(next);
    return *this;
  }
  friend ExtElement operator+(ExtElement a, const ExtElement& b) { return a += b; }
  friend ExtElement operator-(ExtElement a, const ExtElement& b) { return a -= b; }
  friend ExtElement operator*(const S& s, ExtElement a) { return a *= s; }
  friend ExtElement operator*(ExtElement a, const S& s) { return a *= s; }
  friend bool operator==(const ExtElement& a, const ExtElement& b) { return a.n_ == b.n_ && a.t_ == b.t_; }

 private:
  int n_ = 0;
  std::map<Mask, S> t_;
};

using QForm = ExtElement<Rational>;
using PForm = ExtElement<Poly>;

template <class S>
ExtElement<S> one_form(int n, int i) {
  return ExtElement<S>::basis(n, {i});
}

template <class S>
ExtElement<S> wedge(const ExtElement<S>& a, const ExtElement<S>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
  ExtElement<S> out(a.dim());
  for (auto& [ma, ca] : a.terms())
    for (auto& [mb, cb] : b.terms()) {
      int s = shuffle_sign(ma, mb);
      if (s == 0) continue;
      S v = ca * cb;
      out.add(ma | mb, s > 0 ? v : S(-v));
    }
  return out;
}

template <class S>
ExtElement<S> wedge_power(const ExtElement<S>& a, unsigned p) {
  ExtElement<S> out = ExtElement<S>::basis(a.dim(), {});
  for (unsigned i = 0; i < p; ++i) out = wedge(out, a);
  return out;
}

// dw(X,Y) = -w([X,Y]); returns -sum_{i<j} w([X_i,X_j]) w_i ^ w_j.
template <class S>
ExtElement<S> d_one_form(const StructureTable<S>& t, const ExtElement<S>& w) {
  if (w.degree() > 1 || w.dim() != t.dim()) throw std::invalid_argument("d_one_form: expects a 1-form of matching dimension");
  int n = t.dim();
  ExtElement<S> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      S v(0);
      for (auto& [m, c] : w.terms()) {
        int k = std::countr_zero(m);
        if (!t(i, j, k).is_zero()) v += c * t(i, j, k);
      }
      out.add((Mask(1) << i) | (Mask(1) << j), S(-v));
    }
  return out;
}

// theta([X_i,X_j], X_k) + theta([X_j,X_k], X_i) + theta([X_k,X_i], X_j)
template <class S>
S cyclic_sum(const StructureTable<S>& t, const ExtElement<S>& theta, int i, int j, int k) {
  int n = t.dim();
  S s(0);
  auto part = [&](int a, int b, int c) {
    for (int m = 0; m < n; ++m)
      if (!t(a, b, m).is_zero()) {
        S v = theta.value(m, c);
        if (!v.is_zero()) s += t(a, b, m) * v;
      }
  };
  part(i, j, k);
  part(j, k, i);
  part(k, i, j);
  return s;
}

template <class S>
struct ClosureFailure {
  int i, j, k;
  S residual;
};

template <class S>
std::vector<ClosureFailure<S>> closure_failures(const StructureTable<S>& t, const ExtElement<S>& theta) {
  if (theta.degree() > 2 || (theta.degree() != 2 && !theta.is_zero()))
    throw std::invalid_argument("expects a 2-form");
  std::vector<ClosureFailure<S>> out;
  int n = t.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        S r = cyclic_sum(t, theta, i, j, k);
        if (!r.is_zero()) out.push_back({i, j, k, r});
      }
  return out;
}

template <class S>
bool is_closed_two_form(const StructureTable<S>& t, const ExtElement<S>& theta) {
  return closure_failures(t, theta).empty();
}

// Gram matrix [theta(X_i, X_j)].
template <class S>
Mat<S> gram(const ExtElement<S>& theta) {
  int n = theta.dim();
  Mat<S> g = zero_mat<S>(n, n);
  for (auto& [m, c] : theta.terms()) {
    auto idx = mask_indices(m);
    if (idx.size() != 2) throw std::invalid_argument("gram: expects a 2-form");
    g(idx[0], idx[1]) = c;
    g(idx[1], idx[0]) = -c;
  }
  return g;
}

template <class S>
ExtElement<S> from_gram(const Mat<S>& g) {
  int n = static_cast<int>(g.rows());
  ExtElement<S> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.add((Mask(1) << i) | (Mask(1) << j), g(i, j));
  return out;
}

// Coefficient of w_0 ^ ... ^ w_{n-1} in w ^ (dw)^p, n = 2p+1.
template <class S>
S contact_volume(const StructureTable<S>& t, const ExtElement<S>& w) {
  int n = t.dim();
  if (n % 2 == 0) throw std::invalid_argument("contact forms need odd dimension");
  auto dw = d_one_form(t, w);
  return wedge(w, wedge_power(dw, static_cast<unsigned>(n / 2))).top();
}

bool is_contact_form(const QTable& t, const QForm& w);
// Independent check: dw restricted to ker w has rank n-1.
bool is_contact_form_by_rank(const QTable& t, const QForm& w);
// Requires t filiform and odd dimensional; tests w_{n-1}.
bool is_contact_algebra(const QTable& t);

std::vector<QForm> closed_two_form_basis(const QTable& t);

struct SymplecticResult {
  bool exists = false;
  std::optional<QForm> witness;
  std::string method;            // "random", "symbolic", "none"
  int closed_dim = 0;
  std::optional<Poly> pfaffian;  // generic Pfaffian when the symbolic path ran
};

SymplecticResult symplectic_exists(const QTable& t, std::uint64_t seed = 0, int random_points = 50);
bool is_nondegenerate(const QForm& theta);

// Appends Z = X_n with [X_i,X_j] += theta(X_i,X_j) Z. Throws if theta is not closed.
QTable central_extension(const QTable& t, const QForm& theta);

std::string form_key(Mask m);  // "0,7"

}  // namespace filiform
