#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "filiform/liecore.hpp"

namespace filiform {

// Canonical name of the top constant C_{i,j}^{n-1}: "a_01_08".
std::string top_param_name(int i, int j);
VarId top_param(int i, int j);

struct Elimination {
  int i, j;        // the eliminated top constant
  Poly value;      // its expression in the surviving ones
  int triple[3];   // Jacobi triple whose component forced it
  int component;
};

struct GenericBracket {
  int dim = 0;
  PTable table;                                   // polynomial in the surviving top constants
  std::vector<std::pair<int, int>> free_pairs;    // surviving (i,j), sorted
  std::vector<std::pair<int, int>> initial_pairs; // before radical elimination
  std::vector<Elimination> eliminated;
};

// Top constants C_{i,j}^{n-1} with 1 <= i < j <= n-2, i+j <= n-1, (i,j) != (1,n-2) start free;
// every lower constant follows from [X_0,[X_i,X_j]] = [X_{i+1},X_j] + [X_i,X_{j+1}].
// Jacobi components that are a power of a single linear form are then solved for their
// lexicographically largest constant, repeatedly.
GenericBracket generic_filiform(int n);

// The bracket of generic_filiform(n) restricted to the given top constants (others zero).
PTable restrict_bracket(const GenericBracket& g, const std::vector<std::pair<int, int>>& keep);
// Top antidiagonal constants (i, n-2-i), i = 1..(n-1)/2 - 1, for odd n.
std::vector<std::pair<int, int>> antidiagonal_pairs(int n);
// The model family spanned by the antidiagonal constants, set to (-1)^{i+1} lambda.
QTable alternating_model(int p, const Rational& lambda = 1);

struct JacobiEquation {
  int i, j, k;
  int weight;
  PVec residual;  // component m is the X_m coefficient of J(X_i,X_j,X_k)
  std::vector<Poly> polys() const;  // nonzero components
};

std::vector<JacobiEquation> jacobi_ideal(const PTable& t);
inline std::vector<JacobiEquation> jacobi_ideal(const GenericBracket& g) { return jacobi_ideal(g.table); }

struct ShiftTerm {
  int sign;
  int i, j, k;
};

struct Certificate {
  int i, j, k;            // eliminated triple
  int source[3];          // triple S whose X_0-shift produced the relation
  std::vector<ShiftTerm> others;  // remaining terms of the relation, all retained or eliminated earlier
  int sign;               // sign of the eliminated triple in the relation
  bool verified = false;  // exact vector identity checked
};

struct Reduction {
  std::vector<JacobiEquation> generators;
  std::vector<Certificate> certificates;
  std::vector<std::string> notes;
};

// Terms of [X_0, J(X_i,X_j,X_k)] = J(X_{i+1},..) + J(.., X_{j+1}, ..) + J(.., X_{k+1}),
// normalized to increasing triples with signs; repeated or out-of-range indices dropped.
std::vector<ShiftTerm> shift_terms(int n, int i, int j, int k);
// ad X_0 applied to a coefficient vector.
PVec shift_vector(const PVec& v);

// Greedy ascending-weight reduction by X_0-shift relations, each checked exactly.
Reduction reduce_ideal(const std::vector<JacobiEquation>& eqs, int n);

struct EquationCount {
  int p;
  long series;          // value of the closed-form series, terms while all factors are positive
  long epsilon;         // mod-3 correction constant
  bool used_epsilon;    // series had no positive term, epsilon returned alone
  std::vector<long> terms;
};
EquationCount equation_count(int p);

// Closed forms for the reduced count with 2p-2 = 3m + r.
// Throws std::invalid_argument when (m, r) matches none of the parity cases.
long reduced_count(int m, int r);

}  // namespace filiform
