#pragma once

// Maurer-Cartan functional, twisting, the polynomial MC system and
// order-by-order lifting over K[t]/(t^n).

#include "linf/linf_core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace linf {

/// sum_k 1/k! l_k(tau, ..., tau). tau must be homogeneous of degree 1.
Vector mc_residual(const LInftyAlgebra& g, const Vector& tau);

/// A degree-1 element whose residual was checked to vanish.
class MCElement {
 public:
  const Vector& value() const { return value_; }
  friend MCElement certify_mc(const LInftyAlgebra& g, const Vector& tau);

 private:
  Vector value_;
};

/// Throws StructuralError with the residual when tau is not Maurer-Cartan.
MCElement certify_mc(const LInftyAlgebra& g, const Vector& tau);
bool is_mc(const LInftyAlgebra& g, const Vector& tau);

/// l_k^phi(x_1..x_k) = sum_i 1/i! l_{i+k}(phi, ..., phi, x_1, ..., x_k).
/// The result is checked: its Jacobi identity and d_phi^2 = 0 must hold,
/// else InvariantError.
LInftyAlgebra twist(const LInftyAlgebra& g, const MCElement& phi);

/// Polynomial in the coordinates of the degree-1 slice.
struct Polynomial {
  std::map<std::vector<int>, Rational> terms;  // exponent vector -> coefficient

  Rational evaluate(const std::vector<Rational>& point) const;
  int total_degree() const;
};

struct PolynomialSystem {
  std::vector<std::string> variables;  // degree-1 basis ids
  std::vector<Index> variable_indices;
  std::vector<std::string> equation_labels;  // degree-2 basis ids
  std::vector<Index> equation_indices;
  std::vector<Polynomial> equations;

  std::vector<Rational> evaluate(const std::vector<Rational>& point) const;
};

PolynomialSystem mc_polynomial_system(const LInftyAlgebra& g);
std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& variables);

// ---------------------------------------------------------------------------
// Order-by-order deformations phi + phi_1 t + phi_2 t^2 + ... over K[t]/(t^n).

struct LiftTrace {
  Vector first_order;
  std::vector<Vector> coefficients;    // phi_1, phi_2, ... as far as lifting succeeded
  int reached_order = 0;               // largest k with a solution mod t^{k+1}
  std::optional<Vector> obstruction;   // degree-2 cocycle blocking the next order
  std::vector<Rational> obstruction_class;  // coordinates in H^2 of the twisted algebra
};

struct DeformationLiftReport {
  int n = 2;
  Vector phi;
  LInftyAlgebra twisted;
  CohomologyResult h1;
  CohomologyResult h2;
  std::vector<LiftTrace> traces;  // one per H^1 representative
  // kuranishi[i][j]: class in H^2 of l2^phi(h_i, h_j); the order-2 obstruction of
  // sum c_i h_i is 1/2 sum_{i,j} c_i c_j kuranishi[i][j].
  std::vector<std::vector<std::vector<Rational>>> kuranishi;
};

/// The t^k coefficient of the twisted MC functional on sum_{j<k} phi_j t^j,
/// without the linear term.
Vector lift_obstruction(const LInftyAlgebra& twisted, const std::vector<Vector>& coefficients, int k);

/// Lifts a first-order deformation (a d_phi-cocycle of degree 1) as far as
/// possible below t^n. Lifts choose the solution of d_phi phi_k = -o_k with
/// free variables set to zero.
LiftTrace lift_from(const LInftyAlgebra& twisted, const Vector& first_order, int n, const CohomologyResult& h2);

DeformationLiftReport lift_deformation(const LInftyAlgebra& g, const MCElement& phi, int n);

}  // namespace linf
