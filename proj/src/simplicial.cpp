#include "linf/simplicial.hpp"

#include "linf/errors.hpp"
#include "linf/maurer_cartan.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

namespace linf {

namespace {

int popcount(unsigned x) { return std::popcount(x); }

std::string variable_name(std::size_t n, std::size_t j) {
  return n == 1 ? std::string("t") : "t" + std::to_string(j + 1);
}

// (-1)^{#(i in a, j in b, i > j)}, or 0 when a dt repeats.
int wedge_sign(unsigned a, unsigned b) {
  if (a & b) return 0;
  int crossings = 0;
  for (unsigned j = 0; j < 32; ++j) {
    if (b & (1u << j)) crossings += popcount(a >> (j + 1));
  }
  return crossings % 2 ? -1 : 1;
}

void add_term(ScalarForm& f, const FormMonomial& m, const Rational& c) {
  if (is_zero(c)) return;
  auto [it, inserted] = f.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (is_zero(it->second)) f.erase(it);
  }
}

ScalarForm constant(int n, const Rational& c) {
  ScalarForm f;
  add_term(f, FormMonomial{std::vector<int>(static_cast<std::size_t>(n), 0), 0}, c);
  return f;
}

// s_j in dimension n, with s_0 = 1 - sum_{i >= 1} s_i.
ScalarForm vertex_coordinate(int n, int j) {
  if (j == 0) {
    ScalarForm f = constant(n, 1);
    for (int i = 1; i <= n; ++i) {
      FormMonomial m{std::vector<int>(static_cast<std::size_t>(n), 0), 0};
      m.t[static_cast<std::size_t>(i - 1)] = 1;
      add_term(f, m, -1);
    }
    return f;
  }
  FormMonomial m{std::vector<int>(static_cast<std::size_t>(n), 0), 0};
  m.t[static_cast<std::size_t>(j - 1)] = 1;
  return {{m, Rational(1)}};
}

ScalarForm sum(ScalarForm a, const ScalarForm& b) {
  for (const auto& [m, c] : b) add_term(a, m, c);
  return a;
}

void check_dimension(const Simplex& s) {
  for (const auto& [m, v] : s.form) {
    if (m.t.size() != static_cast<std::size_t>(s.dimension) || (m.dt >> s.dimension) != 0) {
      throw StructuralError("form monomial does not belong to dimension " + std::to_string(s.dimension));
    }
  }
}

}  // namespace

int FormMonomial::degree() const { return popcount(dt); }

int FormMonomial::poly_degree() const { return std::accumulate(t.begin(), t.end(), 0) + degree(); }

std::string monomial_id(const FormMonomial& m) {
  std::vector<std::string> factors;
  for (std::size_t j = 0; j < m.t.size(); ++j) {
    if (m.t[j] == 0) continue;
    factors.push_back(variable_name(m.t.size(), j) + (m.t[j] > 1 ? "^" + std::to_string(m.t[j]) : ""));
  }
  for (std::size_t j = 0; j < m.t.size(); ++j) {
    if (m.dt & (1u << j)) factors.push_back("d" + variable_name(m.t.size(), j));
  }
  if (factors.empty()) return "1";
  std::string out = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) out += "*" + factors[i];
  return out;
}

ScalarForm multiply_forms(const ScalarForm& a, const ScalarForm& b) {
  ScalarForm out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      const int sign = wedge_sign(ma.dt, mb.dt);
      if (sign == 0) continue;
      FormMonomial m{ma.t, ma.dt | mb.dt};
      for (std::size_t j = 0; j < m.t.size(); ++j) m.t[j] += mb.t[j];
      add_term(out, m, Rational(sign) * ca * cb);
    }
  }
  return out;
}

ScalarForm d_form(const ScalarForm& a) {
  ScalarForm out;
  for (const auto& [m, c] : a) {
    for (std::size_t j = 0; j < m.t.size(); ++j) {
      if (m.t[j] == 0 || (m.dt & (1u << j))) continue;
      FormMonomial n = m;
      n.t[j] -= 1;
      n.dt |= 1u << j;
      // dt_j moves past the dt_s with s < j.
      const int sign = popcount(m.dt & ((1u << j) - 1)) % 2 ? -1 : 1;
      add_term(out, n, Rational(sign * m.t[j]) * c);
    }
  }
  return out;
}

std::optional<Index> SullivanForms::find(const FormMonomial& m) const {
  auto it = std::find(monomials.begin(), monomials.end(), m);
  if (it == monomials.end()) return std::nullopt;
  return static_cast<Index>(it - monomials.begin());
}

SullivanForms omega(int n, int D) {
  if (n < 0 || n > 2) throw UnsupportedError("Sullivan forms are materialized for n <= 2 only");
  if (D < 0) throw StructuralError("polynomial degree bound must be non-negative");
  SullivanForms w;
  w.n = n;
  w.D = D;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    const int room = D - popcount(mask);
    if (room < 0) continue;
    std::vector<int> t(static_cast<std::size_t>(n), 0);
    // all exponent vectors with sum <= room
    std::function<void(std::size_t, int)> rec = [&](std::size_t j, int left) {
      if (j == t.size()) {
        w.monomials.push_back({t, mask});
        return;
      }
      for (int a = 0; a <= left; ++a) {
        t[j] = a;
        rec(j + 1, left - a);
      }
      t[j] = 0;
    };
    rec(0, room);
  }
  std::sort(w.monomials.begin(), w.monomials.end(), [](const FormMonomial& a, const FormMonomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.poly_degree() != b.poly_degree()) return a.poly_degree() < b.poly_degree();
    if (a.dt != b.dt) return a.dt < b.dt;
    return a.t > b.t;
  });

  std::vector<BasisElement> basis;
  for (const auto& m : w.monomials) basis.push_back({monomial_id(m), m.degree(), 1});
  CoefficientAlgebra& A = w.algebra;
  A.name = "Omega_" + std::to_string(n) + " (degree <= " + std::to_string(D) + ")";
  A.space = make_space(std::move(basis));
  A.unit = 0;
  const auto to_vector = [&](const ScalarForm& f) {
    Vector v;
    for (const auto& [m, c] : f) {
      if (m.poly_degree() > D) continue;
      v.add(*w.find(m), c);
    }
    return v;
  };
  bool any_d = false;
  for (Index i = 0; i < w.monomials.size(); ++i) {
    const ScalarForm mi{{w.monomials[i], Rational(1)}};
    const Vector di = to_vector(d_form(mi));
    any_d = any_d || !di.is_zero();
    A.differential.push_back(di);
    if (i == 0) continue;
    A.ideal.push_back(i);
    for (Index j = 1; j < w.monomials.size(); ++j) {
      const Vector p = to_vector(multiply_forms(mi, {{w.monomials[j], Rational(1)}}));
      if (!p.is_zero()) A.products[{i, j}] = p;
    }
  }
  if (!any_d) A.differential.clear();
  return w;
}

Simplex normalize(Simplex s) {
  for (auto it = s.form.begin(); it != s.form.end();) {
    it = it->second.is_zero() ? s.form.erase(it) : std::next(it);
  }
  return s;
}

Simplex constant_simplex(const Vector& tau, int n) {
  Simplex s{n, {}};
  if (!tau.is_zero()) s.form[FormMonomial{std::vector<int>(static_cast<std::size_t>(n), 0), 0}] = tau;
  return s;
}

int poly_degree(const Simplex& s) {
  int p = 0;
  for (const auto& [m, v] : s.form) p = std::max(p, m.poly_degree());
  return p;
}

Vector to_extended(const ExtendedAlgebra& e, const SullivanForms& w, const Simplex& s) {
  if (s.dimension != w.n) throw StructuralError("simplex dimension does not match the forms");
  Vector out;
  for (const auto& [m, v] : s.form) {
    const auto a = w.find(m);
    if (!a) throw StructuralError("monomial " + monomial_id(m) + " is outside the materialized slice");
    for (const auto& [i, c] : v) out.add(e.index_of(i, *a), c);
  }
  return out;
}

Simplex from_extended(const ExtendedAlgebra& e, const SullivanForms& w, const Vector& v) {
  Simplex s{w.n, {}};
  for (const auto& [i, c] : v) {
    const auto [gi, ai] = e.pairs[i];
    s.form[w.monomials[ai]].add(gi, c);
  }
  return normalize(std::move(s));
}

SimplexCheck mc_simplex_verify(const LInftyAlgebra& g, const Simplex& s) {
  check_dimension(s);
  SimplexCheck out;
  for (const auto& [m, v] : s.form) {
    if (homogeneous_degree(*g.space, v, 1 - m.degree()) != 1 - m.degree()) {
      out.detail = "not of total degree 1 at " + monomial_id(m);
      return out;
    }
  }
  const int D = std::max(0, g.max_arity() * poly_degree(s));
  const SullivanForms w = omega(s.dimension, D);
  const ExtendedAlgebra e = extend_scalars(g, w.algebra, false);
  out.residual = from_extended(e, w, mc_residual(e.algebra, to_extended(e, w, s)));
  out.ok = out.residual.form.empty();
  if (!out.ok) {
    const auto& [m, v] = *out.residual.form.begin();
    out.detail = "residual at " + monomial_id(m) + ": " + format_vector(*g.space, v);
  }
  return out;
}

Simplex pullback(const Simplex& s, int to_dimension, const std::vector<ScalarForm>& images) {
  check_dimension(s);
  if (images.size() != static_cast<std::size_t>(s.dimension)) throw StructuralError("one image per t_j is needed");
  std::vector<ScalarForm> d_images;
  for (const auto& f : images) d_images.push_back(d_form(f));
  Simplex out{to_dimension, {}};
  for (const auto& [m, v] : s.form) {
    ScalarForm image = constant(to_dimension, 1);
    for (std::size_t j = 0; j < m.t.size(); ++j) {
      for (int a = 0; a < m.t[j]; ++a) image = multiply_forms(image, images[j]);
    }
    for (std::size_t j = 0; j < m.t.size(); ++j) {
      if (m.dt & (1u << j)) image = multiply_forms(image, d_images[j]);
    }
    for (const auto& [mm, c] : image) out.form[mm].add_scaled(v, c);
  }
  return normalize(std::move(out));
}

Simplex face(const Simplex& s, int i) {
  const int n = s.dimension;
  if (n < 1 || i < 0 || i > n) throw StructuralError("face index out of range");
  const int k = n - i;  // standard coface inserting a zero at vertex k
  std::vector<ScalarForm> images;
  for (int j = 1; j <= n; ++j) {
    if (j < k) images.push_back(vertex_coordinate(n - 1, j));
    else if (j == k) images.push_back({});
    else images.push_back(vertex_coordinate(n - 1, j - 1));
  }
  return pullback(s, n - 1, images);
}

Simplex degeneracy(const Simplex& s, int i) {
  const int n = s.dimension;
  if (i < 0 || i > n) throw StructuralError("degeneracy index out of range");
  if (n + 1 > 2) throw UnsupportedError("simplices are materialized up to dimension 2");
  const int k = n - i;  // standard codegeneracy merging vertices k, k + 1
  std::vector<ScalarForm> images;
  for (int j = 1; j <= n; ++j) {
    if (j < k) images.push_back(vertex_coordinate(n + 1, j));
    else if (j == k) images.push_back(sum(vertex_coordinate(n + 1, k), vertex_coordinate(n + 1, k + 1)));
    else images.push_back(vertex_coordinate(n + 1, j + 1));
  }
  return pullback(s, n + 1, images);
}

Simplex map_simplex(const LinearMap& f, const Simplex& s) {
  Simplex out{s.dimension, {}};
  for (const auto& [m, v] : s.form) out.form[m] = f.apply(v);
  return normalize(std::move(out));
}

Simplex homotopy_to_simplex(const Homotopy& h) {
  Simplex s{1, {}};
  for (std::size_t r = 0; r < h.f0.coefficients.size(); ++r) s.form[{{static_cast<int>(r)}, 0}] = h.f0.coefficients[r];
  for (std::size_t r = 0; r < h.f1.coefficients.size(); ++r) s.form[{{static_cast<int>(r)}, 1}] = -h.f1.coefficients[r];
  return normalize(std::move(s));
}

Homotopy simplex_to_homotopy(const Simplex& s) {
  if (s.dimension != 1) throw StructuralError("a homotopy is a 1-simplex");
  check_dimension(s);
  Homotopy h;
  for (const auto& [m, v] : s.form) {
    auto& path = m.dt ? h.f1 : h.f0;
    const auto r = static_cast<std::size_t>(m.t[0]);
    if (path.coefficients.size() <= r) path.coefficients.resize(r + 1);
    path.coefficients[r] = m.dt ? -v : v;
  }
  h.f0.trim();
  h.f1.trim();
  return h;
}

ModuliReport pi0(const LInftyAlgebra& g, const CoefficientAlgebra& A, const Vector& phi) {
  return moduli_set(g, A, phi);
}

// ---------------------------------------------------------------------------

bool FibrationReport::ok() const {
  return hypotheses_ok && std::all_of(points.begin(), points.end(), [](const PointLift& p) { return p.lift.has_value(); }) &&
         std::all_of(paths.begin(), paths.end(), [](const PathLift& p) { return p.lift.has_value(); });
}

namespace {

std::optional<Vector> preimage(const LinearMap& f, const Vector& v) { return solve_linear(f, v).solution; }

// Weight-by-weight correction inside ker f.
PointLift lift_point(const FilteredMorphism& f, const Vector& target) {
  PointLift out;
  out.target = target;
  const GradedSpace& s = *f.source.space;
  auto tau = preimage(f.map, target);
  if (!tau) throw InvariantError("surjective map without a preimage");
  // keep the degree-1 part: f has degree 0
  Vector x;
  for (const auto& [i, c] : *tau) {
    if (s[i].degree == 1) x.add(i, c);
  }
  const LinearMap d = differential(f.source);
  const std::vector<Index> ones = s.degree_slice(1);
  for (int w = 1; w <= s.max_weight(); ++w) {
    const Vector r = weight_component(s, mc_residual(f.source, x), w);
    if (r.is_zero()) continue;
    // kernel of f on degree-1, weight-w elements
    std::vector<Index> slice;
    for (Index i : ones) {
      if (s[i].weight == w) slice.push_back(i);
    }
    std::vector<Vector> candidates;
    if (!slice.empty()) {
      QMatrix fm(static_cast<Eigen::Index>(f.target.space->size()), static_cast<Eigen::Index>(slice.size()));
      std::vector<Index> all(f.target.space->size());
      std::iota(all.begin(), all.end(), Index{0});
      for (std::size_t c = 0; c < slice.size(); ++c) fm.col(static_cast<Eigen::Index>(c)) = to_dense(f.map.columns[slice[c]], all);
      const QMatrix k = kernel_basis<Rational>(fm);
      for (Eigen::Index c = 0; c < k.cols(); ++c) candidates.push_back(from_dense(k.col(c), slice));
    }
    // solve sum c_i (delta kappa_i)_w = -r
    std::vector<Index> all(s.size());
    std::iota(all.begin(), all.end(), Index{0});
    QMatrix m(static_cast<Eigen::Index>(s.size()), static_cast<Eigen::Index>(candidates.size()));
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      m.col(static_cast<Eigen::Index>(c)) = to_dense(weight_component(s, d.apply(candidates[c]), w), all);
    }
    const auto sol = candidates.empty() ? std::nullopt : solve<Rational>(m, to_dense(-r, all));
    if (!sol) {
      out.failed_weight = w;
      out.obstruction = r;
      return out;
    }
    for (std::size_t c = 0; c < candidates.size(); ++c) x.add_scaled(candidates[c], (*sol)(static_cast<Eigen::Index>(c)));
  }
  if (!is_mc(f.source, x) || f.map.apply(x) != target) throw InvariantError("point lift failed its own check");
  out.lift = x;
  return out;
}

PolynomialPath lift_path(const LinearMap& f, const PolynomialPath& p) {
  PolynomialPath out;
  for (const auto& c : p.coefficients) {
    auto x = preimage(f, c);
    if (!x) throw InvariantError("surjective map without a preimage");
    out.coefficients.push_back(*x);
  }
  return out;
}

}  // namespace

FibrationReport fibration_consequence_check(const FilteredMorphism& f, int R, const std::vector<Vector>& points,
                                            const std::vector<Homotopy>& paths) {
  FibrationReport rep;
  const int arity = std::max(f.source.max_arity(), f.target.max_arity());
  if (!verify_morphism(f, arity).ok()) {
    rep.hypothesis_detail = "hypotheses not met: not a filtered morphism";
    return rep;
  }
  if (!stagewise_quasi_iso(f, R).surjective()) {
    rep.hypothesis_detail = "hypotheses not met: not stagewise surjective";
    return rep;
  }
  rep.hypotheses_ok = true;
  const FilteredMorphism fr = truncate_morphism(f, R);
  const LinearMap to_target = projection_by_ids(f.target.space, fr.target.space);

  for (const auto& p : points) {
    const Vector t = to_target.apply(p);
    certify_mc(fr.target, t);
    rep.points.push_back(lift_point(fr, t));
  }

  for (const auto& h : paths) {
    PathLift pl;
    pl.target = {path_apply(to_target, h.f0), path_apply(to_target, h.f1)};
    if (!check_homotopy(fr.target, pl.target).empty()) throw StructuralError("sample path is not a homotopy in the target");
    const PointLift start = lift_point(fr, pl.target.f0.at(0));
    if (!start.lift) {
      pl.detail = "start point does not lift";
      rep.paths.push_back(std::move(pl));
      continue;
    }
    pl.start = *start.lift;
    Homotopy lifted;
    lifted.f1 = lift_path(fr.map, pl.target.f1);
    const int bound = std::max(0, pl.target.f0.degree()) + R * (std::max(0, lifted.f1.degree()) + 1) + 1;
    lifted.f0 = solve_flow(fr.source, lifted.f1, pl.start, bound);
    const auto problems = check_homotopy(fr.source, lifted);
    if (!problems.empty()) throw InvariantError("lifted path is not a homotopy: " + problems.front());
    PolynomialPath image = path_apply(fr.map, lifted.f0);
    image.trim();
    PolynomialPath expected = pl.target.f0;
    expected.trim();
    if (!(image == expected)) throw InvariantError("lifted path does not cover the target path");
    pl.lift = std::move(lifted);
    rep.paths.push_back(std::move(pl));
  }
  return rep;
}

}  // namespace linf
