#include "linf/tangent.hpp"

#include "linf/errors.hpp"
#include "linf/filtered.hpp"
#include "linf/gauge.hpp"

namespace linf {

namespace {

int rank_of(const std::vector<Vector>& vs, std::size_t dim) {
  if (vs.empty()) return 0;
  std::vector<Index> all(dim);
  for (Index i = 0; i < dim; ++i) all[i] = i;
  QMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(vs.size()));
  for (std::size_t c = 0; c < vs.size(); ++c) m.col(static_cast<Eigen::Index>(c)) = to_dense(vs[c], all);
  return static_cast<int>(rank<Rational>(m));
}

}  // namespace

std::vector<Vector> tangent_mc(const LInftyAlgebra& g, const MCElement& phi) {
  return cohomology(differential(twist(g, phi)), 1).cocycles;
}

LinearMap dual_number_linearization(const LInftyAlgebra& g, const MCElement& phi) {
  const ExtendedAlgebra e = extend_scalars(g, dual_numbers(), false);
  const Vector base = e.tensor(phi.value(), 0);
  LinearMap out = zero_map(g.space, g.space, 1);
  for (Index i : g.space->degree_slice(1)) {
    const Vector r = mc_residual(e.algebra, base + e.tensor(Vector::unit(i), 1));
    if (!e.component(r, 0).is_zero()) throw InvariantError("certified MC element has a residual");
    out.columns[i] = e.component(r, 1);
  }
  return out;
}

TangentComplexResult tangent_complex(const LInftyAlgebra& g, const MCElement& phi) {
  if (!g.is_dg_lie()) throw UnsupportedError("the tangent complex needs the gauge group of a dg Lie algebra");
  TangentComplexResult out;
  out.phi = phi.value();
  out.twisted = twist(g, phi);
  const LinearMap d = differential(out.twisted);
  out.degree_minus1 = g.space->degree_slice(0);

  out.differential = zero_map(g.space, g.space, 1);
  out.orbit_differential = zero_map(g.space, g.space, 1);
  const ExtendedAlgebra e = extend_scalars(g, dual_numbers(), false);
  const Vector base = e.tensor(out.phi, 0);
  for (Index i : out.degree_minus1) {
    out.differential.columns[i] = -d.columns[i];
    const Vector moved = gauge_act(e.algebra, e.tensor(Vector::unit(i), 1), base);
    if (e.component(moved, 0) != out.phi) throw InvariantError("gauge action over the dual numbers moved phi at order 0");
    out.orbit_differential.columns[i] = e.component(moved, 1);
    if (out.orbit_differential.columns[i] != out.differential.columns[i]) {
      throw InvariantError("orbit differential differs from -d_phi on " + (*g.space)[i].id);
    }
  }

  const CohomologyResult h1 = cohomology(d, 1);
  out.degree0 = h1.cocycles;
  out.h0_representatives = h1.representatives;
  // H^0 = Z^1 / im(-d_phi), computed from the complex itself
  std::vector<Vector> image;
  for (Index i : out.degree_minus1) image.push_back(out.differential.columns[i]);
  out.h0_dimension = static_cast<int>(out.degree0.size()) - rank_of(image, g.space->size());
  out.h_minus1 = cohomology(d, 0).cocycles;
  return out;
}

TangentReport tangent_report(const LInftyAlgebra& g, const MCElement& phi) {
  TangentReport r;
  const TangentComplexResult tc = tangent_complex(g, phi);
  r.h0_tangent = tc.h0_dimension;
  r.h_minus1 = static_cast<int>(tc.h_minus1.size());
  r.h1_twisted = cohomology(differential(twist(g, phi)), 1).dimension;

  // First-order deformations: solutions of the linearized MC equation over the
  // dual numbers, modulo the directions swept by exp(g^0 t).
  const LinearMap lin = dual_number_linearization(g, phi);
  const auto ones = g.space->degree_slice(1);
  const int mc_dim = static_cast<int>(ones.size()) - static_cast<int>(rank<Rational>(slice_matrix(lin, 1)));
  std::vector<Vector> swept;
  for (Index i : tc.degree_minus1) swept.push_back(tc.orbit_differential.columns[i]);
  r.order1_deformations = mc_dim - rank_of(swept, g.space->size());

  r.lift_classes = static_cast<int>(lift_deformation(g, phi, 2).traces.size());
  if (r.h0_tangent != r.h1_twisted || r.h1_twisted != r.order1_deformations || r.lift_classes != r.h1_twisted) {
    throw InvariantError("tangent dimensions disagree: H0T = " + std::to_string(r.h0_tangent) +
                         ", H1 = " + std::to_string(r.h1_twisted) + ", order 1 = " +
                         std::to_string(r.order1_deformations) + ", lift = " + std::to_string(r.lift_classes));
  }
  return r;
}

}  // namespace linf
