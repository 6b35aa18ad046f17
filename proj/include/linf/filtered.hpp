#pragma once

// Weight filtrations, nilpotent quotients g/F_R g and extension of scalars
// by finite-dimensional graded commutative algebras.

#include "linf/linf_core.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace linf {

/// Weight checks only: the differential preserves weight and every higher
/// bracket raises it by at least one.
StructureReport check_filtration(const LInftyAlgebra& g);

/// The quotient by F_R: basis elements of weight < R, brackets with the
/// weight >= R components dropped.
LInftyAlgebra truncate(const LInftyAlgebra& g, int R);

/// Map sending each basis element of `from` to the element with the same
/// identifier in `to`, or to zero when `to` has no such element.
LinearMap projection_by_ids(const SpacePtr& from, const SpacePtr& to);
/// Inclusion of the span of the elements shared with `from` into `to`;
/// same rule as projection_by_ids.
inline LinearMap inclusion_by_ids(const SpacePtr& from, const SpacePtr& to) { return projection_by_ids(from, to); }

/// Finite-dimensional unital graded commutative algebra with an optional
/// differential. `ideal` lists the basis of the augmentation ideal m_A.
struct CoefficientAlgebra {
  std::string name;
  SpacePtr space;
  Index unit = 0;
  std::vector<Index> ideal;
  std::map<std::pair<Index, Index>, Vector> products;  // non-unit basis pairs; absent means 0
  std::vector<Vector> differential;                     // per basis element; empty means d = 0

  bool has_differential() const;
};

Vector basis_product(const CoefficientAlgebra& A, Index a, Index b);
Vector multiply(const CoefficientAlgebra& A, const Vector& a, const Vector& b);
Vector apply_differential(const CoefficientAlgebra& A, const Vector& a);

/// Problems with the encoding: unit, degrees, graded commutativity,
/// associativity, ideal closure, A = K.1 + m_A, Leibniz and d^2 = 0.
std::vector<std::string> check_coefficient_algebra(const CoefficientAlgebra& A);

/// Smallest n with m_A^n = 0. Throws StructuralError if m_A is not nilpotent.
int nilpotency_index(const CoefficientAlgebra& A);
/// True when every product of two ideal elements vanishes.
bool is_square_zero(const CoefficientAlgebra& A);

/// K[t]/(t^n) with basis 1, t, ..., t^{n-1}.
CoefficientAlgebra truncated_polynomial(int n, const std::string& variable = "t");
inline CoefficientAlgebra dual_numbers() { return truncated_polynomial(2); }
/// The ground field, whose maximal ideal is zero.
CoefficientAlgebra ground_field();

/// g tensor A (or g tensor m_A) with the induced L-infinity structure:
///   l_k(x_1 a_1, ..., x_k a_k) = (-1)^{sum_{i<j} |a_i||x_j|} l_k(x_1, ..., x_k) a_1 ... a_k
///   l_1(x a) = l_1(x) a + (-1)^{|x|} x d(a)
/// Weights come from g alone. Basis order is g-major; the element x tensor a
/// is named "x*a".
struct ExtendedAlgebra {
  LInftyAlgebra algebra;
  SpacePtr base;
  CoefficientAlgebra coefficients;
  std::vector<Index> coefficient_basis;          // indices into coefficients.space
  std::vector<std::pair<Index, Index>> pairs;    // extended index -> (g index, A index)

  Index index_of(Index g, Index a) const;
  /// x tensor a for a basis element a of A. Throws if a is not in the used basis.
  Vector tensor(const Vector& x, Index a) const;
  /// Coefficient of the basis element a of A, as a vector of g.
  Vector component(const Vector& v, Index a) const;

 private:
  friend ExtendedAlgebra extend_scalars(const LInftyAlgebra&, const CoefficientAlgebra&, bool);
  std::vector<std::ptrdiff_t> slot_;  // A index -> position in coefficient_basis or -1
};

ExtendedAlgebra extend_scalars(const LInftyAlgebra& g, const CoefficientAlgebra& A, bool ideal_only);

/// Image of an element of g tensor A under id tensor phi, for a linear map
/// phi: A -> B given on basis elements of A.
Vector map_coefficients(const ExtendedAlgebra& from, const ExtendedAlgebra& to, const std::vector<Vector>& phi,
                        const Vector& v);

}  // namespace linf
