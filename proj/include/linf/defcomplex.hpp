#pragma once

// Convolution (Hochschild) dg Lie algebra of a finite-dimensional algebra X
// concentrated in degree 0:
//
//   g_s = Hom(X^{tensor (s+1)}, X), degree s, weight s,
//   [f, g] = f o g - (-1)^{pq} g o f,
//   (f o g)(a_0..a_{p+q}) = sum_i (-1)^{iq} f(a_0, .., g(a_i..a_{i+q}), .., a_{p+q}).
//
// The filtered algebra keeps 1 <= s <= N (the quotient by F_{N+1}); the full
// algebra adds Hom(X, X) in degree 0 so that the gauge group is available.
// MC elements of weight 1 are exactly the associative products.

#include "linf/linf_core.hpp"
#include "linf/maurer_cartan.hpp"
#include "linf/tangent.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace linf {

struct FiniteAlgebraData {
  std::string name;
  int dimension = 0;
  std::vector<std::string> basis;  // defaults to e1..ed
  std::vector<int> degrees;        // empty or all zero; graded X is not supported
  // mu[(a * d + b) * d + c]: coefficient of e_c in e_a e_b
  std::vector<Rational> mu;

  Rational product(int a, int b, int c) const;
};

FiniteAlgebraData make_algebra_data(std::string name, int d);
/// K^d with the coordinatewise product.
FiniteAlgebraData diagonal_algebra(int d);
/// K[e]/(e^2) on the basis 1, e.
FiniteAlgebraData dual_numbers_algebra();

/// Coefficients of mu(mu(a, b), c) - mu(a, mu(b, c)), indexed like a 4-tensor
/// [((a * d + b) * d + c) * d + o], by direct enumeration.
std::vector<Rational> associator_defect(const FiniteAlgebraData& X);

struct ConvolutionComplex {
  FiniteAlgebraData data;
  int N = 2;
  LInftyAlgebra filtered;  // 1 <= s <= N
  LInftyAlgebra full;      // 0 <= s <= N, Hom(X, X) given weight 1 and left out of filtration checks
  std::vector<std::size_t> piece_dimensions;      // index s
  std::vector<std::size_t> quotient_degree1_dims;  // dim (g/F_r)^1 for r = 1..N+1

  /// Basis id of the cochain sending e_{inputs} to e_output.
  std::string cochain_id(const std::vector<int>& inputs, int output) const;
  /// The product as a degree-1 element of `space`.
  Vector mu_element(const GradedSpace& space) const;
};

/// Throws StructuralError for N < 2 or malformed data, UnsupportedError for
/// graded X, ResourceError when the basis exceeds `budget` elements.
ConvolutionComplex build_convolution(const FiniteAlgebraData& X, int N, std::size_t budget = 4096);

struct StructureMCReport {
  bool is_mc = false;
  bool associative = false;  // by direct enumeration
  Vector residual;
  bool residual_matches_associator = false;
};

StructureMCReport structure_as_mc(const ConvolutionComplex& c);

struct DeformationPipelineReport {
  TangentReport tangent;
  DeformationLiftReport lifts;
  int max_order = 2;
};

/// Twists the full algebra by mu, runs the tangent report and lifts first-order
/// deformations up to max_order. Throws StructuralError if mu is not associative.
DeformationPipelineReport deformation_pipeline(const ConvolutionComplex& c, int max_order);

}  // namespace linf
