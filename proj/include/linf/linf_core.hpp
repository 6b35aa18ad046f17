#pragma once

// L-infinity structures given by bracket tables.
//
// Conventions: cohomological grading, l_k has degree 2 - k, brackets are
// graded antisymmetric ([.., a, b, ..] = -(-1)^{|a||b|} [.., b, a, ..]) and
// satisfy
//
//   sum_{i=1}^{k} sum_{sigma in Sh(i,k-i)} (-1)^i chi(sigma) l_{k-i+1}(l_i(x_sigma(1..i)), x_sigma(i+1..k)) = 0
//
// where chi is the antisymmetric Koszul sign of the shuffle. With this sign
// the Maurer-Cartan functional is sum_k 1/k! l_k(tau, ..., tau).

#include "linf/exactlin.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace linf {

using Tuple = std::vector<Index>;

/// Sign of the permutation `perm` (output position j holds input perm[j])
/// where each crossing of a and b contributes -(-1)^{|a||b|}.
int koszul_sign(const std::vector<std::size_t>& perm, const std::vector<int>& degrees);
/// Same with each crossing contributing (-1)^{|a||b|} (graded symmetric).
int symmetric_koszul_sign(const std::vector<std::size_t>& perm, const std::vector<int>& degrees);

/// Canonical form of a basis tuple: sorted ascending, with the antisymmetric
/// Koszul sign of the sorting permutation.
std::pair<Tuple, int> canonicalize(const GradedSpace& space, Tuple inputs);

/// Calls `f` on every non-decreasing k-tuple of indices below n.
void for_each_multiset(std::size_t n, int k, const std::function<void(const Tuple&)>& f);

struct BracketTable {
  int max_arity = 1;
  std::vector<std::map<Tuple, Vector>> by_arity;  // by_arity[k - 1], keys canonical
};

struct LInftyAlgebra {
  SpacePtr space;
  BracketTable brackets;

  LInftyAlgebra() = default;
  LInftyAlgebra(SpacePtr space, int max_arity);

  int max_arity() const { return brackets.max_arity; }
  const std::map<Tuple, Vector>& entries(int k) const { return brackets.by_arity.at(static_cast<std::size_t>(k - 1)); }

  /// Stores l_k(inputs) = value; inputs may be in any order. Replaces an
  /// existing entry. Arity above max_arity is a StructuralError.
  void set_bracket(const Tuple& inputs, const Vector& value);
  /// Adds to the entry instead of replacing it.
  void add_bracket(const Tuple& inputs, const Vector& value);

  /// True when no bracket of arity >= 3 is stored.
  bool is_dg_lie() const;
};

/// l_k on basis elements in any order; zero when absent or k > max_arity.
Vector bracket_on_basis(const LInftyAlgebra& g, const Tuple& inputs);
/// Multilinear extension. Throws StructuralError when k > max_arity.
Vector eval_bracket(const LInftyAlgebra& g, const std::vector<Vector>& args);
/// l_1 as a degree +1 endomorphism.
LinearMap differential(const LInftyAlgebra& g);
/// l_2(a, b), the Lie bracket of a dg Lie algebra.
Vector lie_bracket(const LInftyAlgebra& g, const Vector& a, const Vector& b);

/// Left-hand side of the generalized Jacobi identity on basis elements.
Vector jacobi_residual(const LInftyAlgebra& g, const Tuple& args);

struct Violation {
  std::string kind;     // "degree", "weight", "antisymmetry", "jacobi", ...
  std::string witness;  // e.g. "l2(x, y)"
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct StructureReport {
  std::vector<Violation> violations;
  long tuples_checked = 0;

  bool ok() const { return violations.empty(); }
};

std::string describe_tuple(const GradedSpace& space, const std::string& name, const Tuple& t);

/// Degree, weight and antisymmetry checks of the stored entries.
StructureReport check_entries(const LInftyAlgebra& g, bool check_weights);
/// check_entries plus the Jacobi identity on every canonical tuple of length
/// at most arity_bound.
StructureReport verify_structure(const LInftyAlgebra& g, int arity_bound, bool check_weights = true);

// ---------------------------------------------------------------------------
// Coderivation presentation on the graded symmetric coalgebra of sg.
//
// sg carries |sx| = |x| - 1 and Q has degree +1. Words are non-decreasing
// index tuples of sg; a word repeating an odd element is zero. The
// components are
//
//   Q^k(sx_1 ... sx_k) = (-1)^{(k-1)(k-2)/2 + sum_i (k - i)|x_i|} s l_k(x_1, ..., x_k).
//
// The k-dependent factor matches the (-1)^i weighting of the Jacobi sum above.

using WordCombination = std::map<Tuple, Rational>;

struct CoderivationPresentation {
  SpacePtr base;
  SpacePtr suspended;
  int max_arity = 1;
  std::vector<std::map<Tuple, Vector>> components;  // components[k - 1] on canonical words
};

CoderivationPresentation coderivation_from_brackets(const LInftyAlgebra& g);
LInftyAlgebra brackets_from_coderivation(const CoderivationPresentation& q);

/// The coderivation extension of Q applied to one word.
WordCombination apply_coderivation(const CoderivationPresentation& q, const Tuple& word);
WordCombination apply_coderivation(const CoderivationPresentation& q, const WordCombination& words);

/// Generator multiplied into a word of the graded symmetric algebra.
WordCombination multiply_words(const GradedSpace& space, const Tuple& left, const Tuple& right);

struct ChevalleyEilenbergResult {
  CoderivationPresentation q;
  int word_length_bound = 0;
  long words_checked = 0;
  std::vector<Violation> q_squared;  // nonzero Q^2 on words
  // Dual differential on the free graded commutative algebra on (sg)^*:
  // dual_differential[j] lists the words w with the coefficient of s e_j in Q(w).
  std::vector<WordCombination> dual_differential;

  bool q_squares_to_zero() const { return q_squared.empty(); }
};

ChevalleyEilenbergResult chevalley_eilenberg(const LInftyAlgebra& g, int word_length_bound);

std::string format_word(const GradedSpace& space, const Tuple& word);

}  // namespace linf
