#pragma once

// Polynomial de Rham forms Omega_n (n <= 2) in the normal form with t_0
// eliminated, g-valued simplices, faces and degeneracies, and the simplicial
// Maurer-Cartan set at low dimension.
//
// Face and degeneracy indices are taken in reverse vertex order: d_i is the
// standard face d_{n-i} and s_i the standard degeneracy s_{n-i}. On Omega_1
// this makes d_0 evaluation at t = 0 and d_1 evaluation at t = 1.

#include "linf/filtered.hpp"
#include "linf/gauge.hpp"
#include "linf/linf_core.hpp"
#include "linf/morphisms.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace linf {

/// t_1^{a_1} ... t_n^{a_n} dt_{j_1} ... dt_{j_m} with j_1 < ... < j_m.
/// dt is a bit mask, bit j - 1 standing for dt_j.
struct FormMonomial {
  std::vector<int> t;
  unsigned dt = 0;

  int degree() const;       // number of dt factors
  int poly_degree() const;  // sum of exponents plus degree
  auto operator<=>(const FormMonomial&) const = default;
};

using ScalarForm = std::map<FormMonomial, Rational>;
/// g-valued form: monomial -> coefficient vector in g.
using Form = std::map<FormMonomial, Vector>;

std::string monomial_id(const FormMonomial& m);
ScalarForm multiply_forms(const ScalarForm& a, const ScalarForm& b);
ScalarForm d_form(const ScalarForm& a);

/// Omega_n modulo forms of polynomial degree > D (dt counts 1). The
/// monomials of positive polynomial degree span a nilpotent dg ideal, so the
/// slice is itself a cdga.
struct SullivanForms {
  int n = 0;
  int D = 0;
  std::vector<FormMonomial> monomials;  // basis order of `algebra`
  CoefficientAlgebra algebra;

  std::optional<Index> find(const FormMonomial& m) const;
};

/// Throws UnsupportedError for n > 2.
SullivanForms omega(int n, int D);

struct Simplex {
  int dimension = 0;
  Form form;
  friend bool operator==(const Simplex&, const Simplex&) = default;
};

/// Drops zero coefficients.
Simplex normalize(Simplex s);

/// The constant simplex tau tensor 1 in dimension n.
Simplex constant_simplex(const Vector& tau, int n);
int poly_degree(const Simplex& s);

/// Element of g tensor Omega_n for the slice `w`, and back.
Vector to_extended(const ExtendedAlgebra& e, const SullivanForms& w, const Simplex& s);
Simplex from_extended(const ExtendedAlgebra& e, const SullivanForms& w, const Vector& v);

struct SimplexCheck {
  bool ok = false;
  std::string detail;
  Simplex residual;
};

/// Exact MC check in g tensor Omega_n. The form is embedded in a slice deep
/// enough that no product is cut off.
SimplexCheck mc_simplex_verify(const LInftyAlgebra& g, const Simplex& s);

/// Pullback along the cdga map sending t_j to images[j - 1] (degree-0 forms
/// in dimension `to_dimension`) and dt_j to d(images[j - 1]).
Simplex pullback(const Simplex& s, int to_dimension, const std::vector<ScalarForm>& images);

Simplex face(const Simplex& s, int i);
Simplex degeneracy(const Simplex& s, int i);

/// Applies a linear map coefficientwise.
Simplex map_simplex(const LinearMap& f, const Simplex& s);

/// (f0, f1) <-> f0 - f1 dt in g tensor Omega_1.
Simplex homotopy_to_simplex(const Homotopy& h);
Homotopy simplex_to_homotopy(const Simplex& s);

/// pi_0 of MC_.(g) tensor m_A, through the gauge orbit description.
ModuliReport pi0(const LInftyAlgebra& g, const CoefficientAlgebra& A, const Vector& phi);

// ---------------------------------------------------------------------------
// Lifting along a stagewise surjection, in g/F_R -> h/F_R.

struct PointLift {
  Vector target;
  std::optional<Vector> lift;
  int failed_weight = 0;
  Vector obstruction;  // residual component that could not be killed
};

struct PathLift {
  Homotopy target;
  Vector start;
  std::optional<Homotopy> lift;
  std::string detail;
};

struct FibrationReport {
  bool hypotheses_ok = false;
  std::string hypothesis_detail;
  std::vector<PointLift> points;
  std::vector<PathLift> paths;
  bool ok() const;
};

/// Every target MC element in `points` is lifted weight by weight, and every
/// target homotopy in `paths` is lifted from a lift of its start by lifting
/// f1 and solving the flow in the source. Inputs are in the target's full basis.
FibrationReport fibration_consequence_check(const FilteredMorphism& f, int R, const std::vector<Vector>& points,
                                            const std::vector<Homotopy>& paths);

}  // namespace linf
