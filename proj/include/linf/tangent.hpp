#pragma once

// Tangent spaces of the MC variety and the two-term tangent complex
//   -d_phi : g^0 -> Z^1(g^phi)
// of the quotient stack [MC(g)/exp(g^0)] at phi.

#include "linf/exactlin.hpp"
#include "linf/linf_core.hpp"
#include "linf/maurer_cartan.hpp"

#include <vector>

namespace linf {

/// Basis of Z^1(g^phi), the kernel of d_phi in degree 1.
std::vector<Vector> tangent_mc(const LInftyAlgebra& g, const MCElement& phi);

/// The linear map phi_1 -> t-coefficient of F(phi + phi_1 t) over the dual
/// numbers, on the degree-1 slice (as a map g -> g of degree +1).
LinearMap dual_number_linearization(const LInftyAlgebra& g, const MCElement& phi);

struct TangentComplexResult {
  Vector phi;
  LInftyAlgebra twisted;
  std::vector<Index> degree_minus1;  // g^0 slice
  std::vector<Vector> degree0;       // basis of Z^1(g^phi)
  LinearMap differential;            // -d_phi, computed directly
  LinearMap orbit_differential;      // xi -> t-coefficient of exp(xi t).phi
  std::vector<Vector> h_minus1;      // ker(d_phi on g^0) = Z^0(g^phi)
  std::vector<Vector> h0_representatives;
  int h0_dimension = 0;
};

/// Needs a dg Lie algebra. Throws InvariantError if the two differentials differ.
TangentComplexResult tangent_complex(const LInftyAlgebra& g, const MCElement& phi);

struct TangentReport {
  int h0_tangent = 0;           // from tangent_complex
  int h1_twisted = 0;           // dim H^1(g^phi) from the twisted differential
  int order1_deformations = 0;  // dim MC over dual numbers minus dim of gauge directions
  int lift_classes = 0;         // number of H^1 classes seen by lift_deformation
  int h_minus1 = 0;
};

/// Throws InvariantError if the independent counts disagree.
TangentReport tangent_report(const LInftyAlgebra& g, const MCElement& phi);

}  // namespace linf
