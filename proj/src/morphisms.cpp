#include "linf/morphisms.hpp"

#include "linf/errors.hpp"
#include "linf/filtered.hpp"
#include "linf/gauge.hpp"

#include <algorithm>
#include <set>

namespace linf {

namespace {

// Sub-basis selected by a weight predicate, with old -> new positions.
struct SubBasis {
  SpacePtr space;
  std::vector<std::ptrdiff_t> position;
};

template <typename Pred>
SubBasis select(const GradedSpace& s, Pred keep) {
  SubBasis out;
  std::vector<BasisElement> kept;
  out.position.assign(s.size(), -1);
  for (Index i = 0; i < s.size(); ++i) {
    if (keep(s[i].weight)) {
      out.position[i] = static_cast<std::ptrdiff_t>(kept.size());
      kept.push_back(s[i]);
    }
  }
  out.space = make_space(std::move(kept));
  return out;
}

Vector reindex(const Vector& v, const SubBasis& to) {
  Vector out;
  for (const auto& [i, c] : v) {
    if (to.position[i] >= 0) out.add(static_cast<Index>(to.position[i]), c);
  }
  return out;
}

LinearMap restrict_map(const LinearMap& m, const SubBasis& from, const SubBasis& to) {
  LinearMap out = zero_map(from.space, to.space, m.degree_shift);
  for (Index i = 0; i < from.position.size(); ++i) {
    if (from.position[i] >= 0) out.columns[static_cast<Index>(from.position[i])] = reindex(m.columns[i], to);
  }
  return out;
}

std::vector<int> all_degrees(const GradedSpace& a, const GradedSpace& b) {
  std::set<int> d;
  for (int x : a.degrees()) d.insert(x);
  for (int x : b.degrees()) d.insert(x);
  return {d.begin(), d.end()};
}

bool all_iso(const std::vector<DegreeComparison>& v) {
  return std::all_of(v.begin(), v.end(), [](const DegreeComparison& c) { return c.iso; });
}

bool surjective(const LinearMap& m) {
  if (m.target->size() == 0) return true;
  if (m.source->size() == 0) return false;
  return rank<Rational>(full_matrix(m)) == static_cast<Eigen::Index>(m.target->size());
}

Vector pull_to(const SpacePtr& from, const SpacePtr& to, const Vector& v) {
  return projection_by_ids(from, to).apply(v);
}

std::string fmt_class(const QVector& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v(i));
  }
  return s + ")";
}

}  // namespace

FilteredMorphism morphism_from_images(
    const LInftyAlgebra& source, const LInftyAlgebra& target,
    const std::vector<std::pair<std::string, std::vector<std::pair<std::string, Rational>>>>& images,
    std::string name) {
  FilteredMorphism f{std::move(name), source, target, zero_map(source.space, target.space, 0)};
  for (const auto& [id, image] : images) {
    f.map.columns[source.space->index_of(id)] = vector_from_ids(*target.space, image);
  }
  return f;
}

FilteredMorphism projection_morphism(const LInftyAlgebra& source, const LInftyAlgebra& target, std::string name) {
  return {std::move(name), source, target, projection_by_ids(source.space, target.space)};
}

FilteredMorphism truncate_morphism(const FilteredMorphism& f, int R) {
  FilteredMorphism out;
  out.name = f.name;
  out.source = truncate(f.source, R);
  out.target = truncate(f.target, R);
  const LinearMap in = inclusion_by_ids(out.source.space, f.source.space);
  const LinearMap proj = projection_by_ids(f.target.space, out.target.space);
  out.map = compose(proj, compose(f.map, in));
  return out;
}

StructureReport verify_morphism(const FilteredMorphism& f, int arity_bound) {
  StructureReport rep;
  const GradedSpace& s = *f.source.space;
  if (!(*f.map.source == s) || !(*f.map.target == *f.target.space)) {
    rep.violations.push_back({"shape", f.name, "map does not go from source to target"});
    return rep;
  }
  if (f.map.degree_shift != 0) {
    rep.violations.push_back({"degree", f.name, "morphism must have degree 0"});
  }
  for (const auto& problem : check_linear_map(f.map, true)) {
    rep.violations.push_back({problem.find("weight") != std::string::npos ? "weight" : "degree", f.name, problem});
  }
  const int top = std::min(arity_bound, std::max(f.source.max_arity(), f.target.max_arity()));
  for (int k = 1; k <= top; ++k) {
    for_each_multiset(s.size(), k, [&](const Tuple& t) {
      ++rep.tuples_checked;
      const Vector lhs = f.map.apply(bracket_on_basis(f.source, t));
      Vector rhs;
      if (k <= f.target.max_arity()) {
        std::vector<Vector> args;
        for (Index i : t) args.push_back(f.map.columns[i]);
        rhs = eval_bracket(f.target, args);
      }
      if (lhs != rhs) {
        rep.violations.push_back({"bracket", describe_tuple(s, "l" + std::to_string(k), t),
                                  "f(l) = " + format_vector(*f.target.space, lhs) +
                                      ", l(f) = " + format_vector(*f.target.space, rhs)});
      }
    });
  }
  return rep;
}

GradedPiece graded_piece(const FilteredMorphism& f, int r) {
  const auto is_r = [r](int w) { return w == r; };
  const SubBasis src = select(*f.source.space, is_r);
  const SubBasis tgt = select(*f.target.space, is_r);
  return {src.space, tgt.space, restrict_map(differential(f.source), src, src),
          restrict_map(differential(f.target), tgt, tgt), restrict_map(f.map, src, tgt)};
}

std::vector<DegreeComparison> compare_cohomology(const LinearMap& chain, const LinearMap& d_source,
                                                 const LinearMap& d_target) {
  std::vector<DegreeComparison> out;
  for (int deg : all_degrees(*chain.source, *chain.target)) {
    const CohomologyResult hs = cohomology(d_source, deg);
    const CohomologyResult ht = cohomology(d_target, deg);
    DegreeComparison c{deg, hs.dimension, ht.dimension, false};
    if (hs.dimension == ht.dimension) {
      c.iso = hs.dimension == 0 ||
              rank<Rational>(induced_on_cohomology(chain, hs, ht)) == static_cast<Eigen::Index>(hs.dimension);
    }
    out.push_back(c);
  }
  return out;
}

bool StagewiseReport::quasi_iso() const {
  return std::all_of(stages.begin(), stages.end(),
                     [](const StageReport& s) { return s.graded_quasi_iso && s.quotient_quasi_iso; });
}

bool StagewiseReport::surjective() const {
  return std::all_of(stages.begin(), stages.end(),
                     [](const StageReport& s) { return s.graded_surjective && s.quotient_surjective; });
}

StagewiseReport stagewise_quasi_iso(const FilteredMorphism& f, int R) {
  if (R < 2) throw StructuralError("stagewise checks need R >= 2");
  StagewiseReport out;
  const LinearMap ds = differential(f.source);
  const LinearMap dt = differential(f.target);
  for (int r = 1; r < R; ++r) {
    StageReport st;
    st.r = r;
    const GradedPiece p = graded_piece(f, r);
    st.graded = compare_cohomology(p.map, p.d_source, p.d_target);
    st.graded_quasi_iso = all_iso(st.graded);
    st.graded_surjective = surjective(p.map);

    const auto below = [r](int w) { return w <= r; };
    const SubBasis qs = select(*f.source.space, below);
    const SubBasis qt = select(*f.target.space, below);
    const LinearMap qmap = restrict_map(f.map, qs, qt);
    st.quotient = compare_cohomology(qmap, restrict_map(ds, qs, qs), restrict_map(dt, qt, qt));
    st.quotient_quasi_iso = all_iso(st.quotient);
    st.quotient_surjective = surjective(qmap);
    out.stages.push_back(std::move(st));
  }
  return out;
}

GoldmanMillsonReport goldman_millson_check(const FilteredMorphism& f, const Vector& phi, int R, int max_order) {
  GoldmanMillsonReport rep;
  rep.max_order = max_order;
  if (max_order < 1) throw StructuralError("max order must be at least 1");

  // Hypotheses.
  std::vector<std::string> unmet;
  const int arity = std::max(f.source.max_arity(), f.target.max_arity());
  if (!verify_morphism(f, arity).ok()) unmet.push_back("not a filtered morphism");
  const auto negative = [](const LInftyAlgebra& g) {
    const auto degs = g.space->degrees();
    return !degs.empty() && degs.front() < 0;
  };
  if (negative(f.source) || negative(f.target)) unmet.push_back("not concentrated in non-negative degrees");
  if (unmet.empty() && !stagewise_quasi_iso(f, R).quasi_iso()) unmet.push_back("not a stagewise quasi-isomorphism");
  const FilteredMorphism fr = truncate_morphism(f, R);
  rep.phi = pull_to(f.source.space, fr.source.space, phi);
  if (!is_mc(fr.source, rep.phi)) unmet.push_back("phi is not Maurer-Cartan in the source");
  if (!fr.source.is_dg_lie() || !fr.target.is_dg_lie()) unmet.push_back("orbit matching needs dg Lie algebras");
  if (!unmet.empty()) {
    rep.hypothesis_detail = unmet.front();
    for (std::size_t i = 1; i < unmet.size(); ++i) rep.hypothesis_detail += "; " + unmet[i];
    return rep;
  }
  rep.hypotheses_ok = true;
  rep.image_phi = fr.map.apply(rep.phi);

  const int n = max_order + 1;
  const auto src = lift_deformation(fr.source, certify_mc(fr.source, rep.phi), n);
  const auto tgt = lift_deformation(fr.target, certify_mc(fr.target, rep.image_phi), n);
  rep.h1_source = src.h1.dimension;
  rep.h1_target = tgt.h1.dimension;

  const QMatrix m1 = induced_on_cohomology(fr.map, src.h1, tgt.h1);
  const QMatrix m2 = induced_on_cohomology(fr.map, src.h2, tgt.h2);
  rep.h1_bijective = rep.h1_source == rep.h1_target &&
                     (rep.h1_source == 0 || rank<Rational>(m1) == static_cast<Eigen::Index>(rep.h1_source));
  rep.h2_injective = src.h2.dimension == 0 || rank<Rational>(m2) == static_cast<Eigen::Index>(src.h2.dimension);
  if (!rep.h1_bijective) rep.failures.push_back("H^1 map is not bijective");
  if (!rep.h2_injective) rep.failures.push_back("H^2 map is not injective");

  // Quadratic obstructions: H^2(f) K_src(e_i, e_j) = K_tgt(M e_i, M e_j).
  rep.obstructions_correspond = true;
  if (max_order >= 2 && rep.h1_bijective) {
    const auto ds = static_cast<std::size_t>(src.h1.dimension);
    const auto dt = static_cast<std::size_t>(tgt.h1.dimension);
    const auto h2t = static_cast<Eigen::Index>(tgt.h2.dimension);
    for (std::size_t i = 0; i < ds; ++i) {
      for (std::size_t j = 0; j < ds; ++j) {
        QVector ks(static_cast<Eigen::Index>(src.h2.dimension));
        for (Eigen::Index a = 0; a < ks.size(); ++a) ks(a) = src.kuranishi[i][j][static_cast<std::size_t>(a)];
        const QVector lhs = h2t == 0 ? QVector(0) : QVector(m2 * ks);
        QVector rhs = QVector::Zero(h2t);
        for (std::size_t k = 0; k < dt; ++k) {
          for (std::size_t l = 0; l < dt; ++l) {
            const Rational c = m1(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) *
                               m1(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j));
            if (is_zero(c)) continue;
            for (Eigen::Index a = 0; a < h2t; ++a) rhs(a) += c * tgt.kuranishi[k][l][static_cast<std::size_t>(a)];
          }
        }
        if (lhs != rhs) {
          rep.obstructions_correspond = false;
          rep.failures.push_back("quadratic obstruction of (" + std::to_string(i) + ", " + std::to_string(j) +
                                 ") maps to " + fmt_class(lhs) + ", expected " + fmt_class(rhs));
        }
      }
    }
  }

  // Orbits over K[t]/(t^n): each fully lifted target deformation is equivalent to
  // the image of a source deformation, and equivalence is reflected.
  rep.orbits_correspond = rep.h1_bijective && rep.h2_injective;
  if (!rep.orbits_correspond) return rep;
  const auto A = truncated_polynomial(n);
  const auto es = extend_scalars(src.twisted, A, true);
  const auto et = extend_scalars(tgt.twisted, A, true);
  const auto assemble = [](const ExtendedAlgebra& e, const std::vector<Vector>& coeffs) {
    Vector tau;
    for (std::size_t j = 0; j < coeffs.size(); ++j) tau += e.tensor(coeffs[j], j + 1);
    return tau;
  };
  const auto push = [&](const std::vector<Vector>& coeffs) {
    std::vector<Vector> out;
    for (const auto& c : coeffs) out.push_back(fr.map.apply(c));
    return out;
  };
  QMatrix m1inv = QMatrix::Zero(m1.cols(), m1.rows());
  for (Eigen::Index k = 0; k < m1.rows(); ++k) {
    QVector unit = QVector::Zero(m1.rows());
    unit(k) = 1;
    m1inv.col(k) = *solve<Rational>(m1, unit);
  }
  const auto fail = [&](const std::string& what) {
    rep.orbits_correspond = false;
    rep.failures.push_back(what);
  };

  std::vector<std::vector<Vector>> source_lifts;
  for (std::size_t k = 0; k < tgt.traces.size(); ++k) {
    const auto& tt = tgt.traces[k];
    if (tt.reached_order < max_order) continue;
    Vector pulled;
    for (std::size_t i = 0; i < src.h1.representatives.size(); ++i) {
      pulled.add_scaled(src.h1.representatives[i], m1inv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
    }
    const LiftTrace st = lift_from(src.twisted, pulled, n, src.h2);
    if (st.reached_order < max_order) {
      fail("source lift of target class " + std::to_string(k) + " is obstructed");
      continue;
    }
    const OrbitMatch m = match_orbits(et, assemble(et, push(st.coefficients)), assemble(et, tt.coefficients));
    if (m.status != OrbitStatus::Equivalent) {
      fail("target deformation " + std::to_string(k) + " is " + to_string(m.status) + " to the image: " + m.detail);
    }
  }
  for (const auto& st : src.traces) {
    if (st.reached_order >= max_order) source_lifts.push_back(st.coefficients);
  }
  source_lifts.push_back(std::vector<Vector>(static_cast<std::size_t>(max_order)));
  for (std::size_t a = 0; a < source_lifts.size(); ++a) {
    for (std::size_t b = a + 1; b < source_lifts.size(); ++b) {
      const OrbitMatch ms = match_orbits(es, assemble(es, source_lifts[a]), assemble(es, source_lifts[b]));
      const OrbitMatch mt =
          match_orbits(et, assemble(et, push(source_lifts[a])), assemble(et, push(source_lifts[b])));
      if (ms.status == OrbitStatus::Undecided || mt.status == OrbitStatus::Undecided) {
        fail("orbit comparison undecided for source deformations " + std::to_string(a) + ", " + std::to_string(b));
      } else if (ms.status != mt.status) {
        fail("source deformations " + std::to_string(a) + ", " + std::to_string(b) + " are " +
             to_string(ms.status) + " but their images are " + to_string(mt.status));
      }
    }
  }
  return rep;
}

TwistPushforwardReport twist_pushforward_check(const FilteredMorphism& f, const Vector& phi, int R) {
  TwistPushforwardReport rep;
  const FilteredMorphism fr = truncate_morphism(f, R);
  const Vector p = pull_to(f.source.space, fr.source.space, phi);
  const MCElement mc = certify_mc(fr.source, p);
  const Vector image = fr.map.apply(p);
  rep.image_residual = mc_residual(fr.target, image);
  rep.image_is_mc = rep.image_residual.is_zero();
  if (!rep.image_is_mc) return rep;
  FilteredMorphism tw{f.name + "^phi", twist(fr.source, mc), twist(fr.target, certify_mc(fr.target, image)), fr.map};
  rep.twisted_morphism = verify_morphism(tw, std::max(tw.source.max_arity(), tw.target.max_arity()));
  rep.stages = stagewise_quasi_iso(tw, R);
  return rep;
}

}  // namespace linf
