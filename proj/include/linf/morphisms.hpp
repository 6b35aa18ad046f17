#pragma once

// Strict filtered morphisms: verification, stagewise quasi-isomorphisms and
// surjections, Goldman-Millson checks and twisting invariance.

#include "linf/linf_core.hpp"
#include "linf/maurer_cartan.hpp"

#include <string>
#include <vector>

namespace linf {

struct FilteredMorphism {
  std::string name;
  LInftyAlgebra source;
  LInftyAlgebra target;
  LinearMap map;  // degree 0
};

/// Morphism given by images of source basis ids.
FilteredMorphism morphism_from_images(
    const LInftyAlgebra& source, const LInftyAlgebra& target,
    const std::vector<std::pair<std::string, std::vector<std::pair<std::string, Rational>>>>& images,
    std::string name = "f");

/// Projection onto the elements sharing an id with the target.
FilteredMorphism projection_morphism(const LInftyAlgebra& source, const LInftyAlgebra& target, std::string name = "p");

/// f restricted to g/F_R -> h/F_R.
FilteredMorphism truncate_morphism(const FilteredMorphism& f, int R);

/// f l_k(x_1..x_k) = l_k(f x_1, ..., f x_k) on canonical tuples of length
/// <= arity_bound, degree 0, and weight never decreases.
StructureReport verify_morphism(const FilteredMorphism& f, int arity_bound);

/// The weight-r part of a linear map between weighted spaces, restricted to
/// weight-r basis elements on both sides.
struct GradedPiece {
  SpacePtr source;
  SpacePtr target;
  LinearMap d_source;
  LinearMap d_target;
  LinearMap map;
};
GradedPiece graded_piece(const FilteredMorphism& f, int r);

struct DegreeComparison {
  int degree = 0;
  int source_dim = 0;
  int target_dim = 0;
  bool iso = false;
};

struct StageReport {
  int r = 0;
  bool graded_quasi_iso = false;    // on F_r / F_{r+1}
  bool quotient_quasi_iso = false;  // on g/F_{r+1} -> h/F_{r+1}
  bool graded_surjective = false;
  bool quotient_surjective = false;
  std::vector<DegreeComparison> graded;
  std::vector<DegreeComparison> quotient;
};

struct StagewiseReport {
  std::vector<StageReport> stages;
  bool quasi_iso() const;
  bool surjective() const;
};

/// Stages r = 1..R-1 of the weight filtration.
StagewiseReport stagewise_quasi_iso(const FilteredMorphism& f, int R);

/// Degree-by-degree comparison of H(f) for a chain map between complexes.
std::vector<DegreeComparison> compare_cohomology(const LinearMap& chain, const LinearMap& d_source,
                                                 const LinearMap& d_target);

struct GoldmanMillsonReport {
  bool hypotheses_ok = false;
  std::string hypothesis_detail;
  Vector phi;
  Vector image_phi;
  int h1_source = 0;
  int h1_target = 0;
  bool h1_bijective = false;
  bool h2_injective = false;
  int max_order = 2;
  bool obstructions_correspond = false;
  bool orbits_correspond = false;
  std::vector<std::string> failures;

  bool ok() const { return hypotheses_ok && failures.empty(); }
};

/// Desk-scale Goldman-Millson evidence at the MC element phi of the source:
/// H^1 of the twisted algebras is matched by f, order-2 obstruction classes
/// and the quadratic obstruction table correspond under H^2(f), and up to
/// order max_order every target deformation is gauge equivalent to the image
/// of a source deformation.
GoldmanMillsonReport goldman_millson_check(const FilteredMorphism& f, const Vector& phi, int R, int max_order);

struct TwistPushforwardReport {
  bool image_is_mc = false;
  Vector image_residual;
  StructureReport twisted_morphism;
  StagewiseReport stages;

  bool ok() const { return image_is_mc && twisted_morphism.ok() && stages.quasi_iso(); }
};

TwistPushforwardReport twist_pushforward_check(const FilteredMorphism& f, const Vector& phi, int R);

}  // namespace linf
