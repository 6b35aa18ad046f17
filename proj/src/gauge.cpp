#include "linf/gauge.hpp"

#include "linf/errors.hpp"
#include "linf/maurer_cartan.hpp"

namespace linf {

namespace {

void require_lie(const LInftyAlgebra& g) {
  if (!g.is_dg_lie()) throw UnsupportedError("gauge action is only defined for dg Lie algebras");
}

void require_degree(const GradedSpace& s, const Vector& v, int degree, const std::string& what) {
  for (const auto& [i, c] : v) {
    if (i >= s.size() || s[i].degree != degree) {
      throw StructuralError(what + " must be homogeneous of degree " + std::to_string(degree));
    }
  }
}

std::vector<Vector> span_basis(std::size_t dim, const std::vector<Vector>& vs) {
  if (vs.empty()) return {};
  std::vector<Index> all(dim);
  for (Index i = 0; i < dim; ++i) all[i] = i;
  QMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(vs.size()));
  for (std::size_t c = 0; c < vs.size(); ++c) m.col(static_cast<Eigen::Index>(c)) = to_dense(vs[c], all);
  std::vector<Vector> out;
  for (auto c : independent_columns<Rational>(m)) out.push_back(vs[static_cast<std::size_t>(c)]);
  return out;
}

int iteration_cap(const LInftyAlgebra& g) { return static_cast<int>(g.space->size()) + 2; }

}  // namespace

int nesting_bound(const LInftyAlgebra& g, const std::vector<Vector>& letters) {
  const std::size_t dim = g.space->size();
  std::vector<Vector> span = span_basis(dim, letters);
  for (int m = 1; m <= iteration_cap(g); ++m) {
    if (span.empty()) return m;
    std::vector<Vector> next;
    for (const auto& x : letters) {
      for (const auto& s : span) {
        Vector b = lie_bracket(g, x, s);
        if (!b.is_zero()) next.push_back(std::move(b));
      }
    }
    span = span_basis(dim, next);
  }
  throw UnsupportedError("nested brackets do not terminate; the algebra is not nilpotent on these elements");
}

Rational bernoulli(int n) {
  // sum_{k=0}^{m} C(m+1, k) B_k = 0
  std::vector<Rational> b(static_cast<std::size_t>(n) + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational s = 0;
    Rational binom = 1;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      s += binom * b[static_cast<std::size_t>(k)];
      binom = binom * Rational(m + 1 - k) / Rational(k + 1);
    }
    b[static_cast<std::size_t>(m)] = -s / Rational(m + 1);
  }
  return b[static_cast<std::size_t>(n)];
}

Vector bch(const LInftyAlgebra& g, const Vector& x, const Vector& y) {
  require_lie(g);
  require_degree(*g.space, x, 0, "gauge element");
  require_degree(*g.space, y, 0, "gauge element");
  const int L = nesting_bound(g, {x, y});
  // Homogeneous parts Z_n of the Dynkin series via
  // (n+1) Z_{n+1} = 1/2 [x - y, Z_n]
  //   + sum_{p >= 1, 2p <= n} B_{2p}/(2p)! sum_{k_1+..+k_{2p} = n} [Z_{k_1}, [..., [Z_{k_2p}, x + y]]].
  std::vector<Vector> Z(2);
  Z[1] = x + y;
  const Vector diff = x - y;
  for (int n = 1; n + 1 < L; ++n) {
    Vector next = Rational(1, 2) * lie_bracket(g, diff, Z[static_cast<std::size_t>(n)]);
    for (int p = 1; 2 * p <= n; ++p) {
      const Rational K = bernoulli(2 * p) * inverse_factorial(2 * p);
      // nested[j][s]: sum over compositions of s into j parts of the nested bracket ending in x + y.
      std::vector<Vector> level(static_cast<std::size_t>(n) + 1);
      level[0] = Z[1];
      for (int j = 1; j <= 2 * p; ++j) {
        std::vector<Vector> up(static_cast<std::size_t>(n) + 1);
        for (int s = 0; s <= n; ++s) {
          if (level[static_cast<std::size_t>(s)].is_zero()) continue;
          for (int k = 1; s + k <= n; ++k) {
            up[static_cast<std::size_t>(s + k)] +=
                lie_bracket(g, Z[static_cast<std::size_t>(k)], level[static_cast<std::size_t>(s)]);
          }
        }
        level = std::move(up);
      }
      next.add_scaled(level[static_cast<std::size_t>(n)], K);
    }
    next *= Rational(1) / Rational(n + 1);
    Z.push_back(std::move(next));
  }
  Vector out;
  for (std::size_t n = 1; n < Z.size(); ++n) out += Z[n];
  return out;
}

Vector gauge_act(const LInftyAlgebra& g, const Vector& xi, const Vector& tau) {
  require_lie(g);
  require_degree(*g.space, xi, 0, "gauge element");
  certify_mc(g, tau);
  const LinearMap d = differential(g);
  Vector result = tau;
  Vector A = tau;           // ad^n tau
  Vector B = d.apply(xi);   // ad^{n-1} delta xi
  Rational inv_fact = 1;
  for (int n = 1;; ++n) {
    if (n > iteration_cap(g)) throw UnsupportedError("ad xi is not nilpotent on this input");
    inv_fact /= Rational(n);
    if (n > 1) B = lie_bracket(g, xi, B);
    A = lie_bracket(g, xi, A);
    if (A.is_zero() && B.is_zero()) break;
    result.add_scaled(A, inv_fact);
    result.add_scaled(B, -inv_fact);
  }
  const Vector r = mc_residual(g, result);
  if (!r.is_zero()) throw InvariantError("gauge action left the MC set: residual " + format_vector(*g.space, r));
  return result;
}

// ---------------------------------------------------------------------------

int PolynomialPath::degree() const {
  for (std::size_t r = coefficients.size(); r-- > 0;) {
    if (!coefficients[r].is_zero()) return static_cast<int>(r);
  }
  return -1;
}

Vector PolynomialPath::at(const Rational& t) const {
  Vector out;
  Rational power = 1;
  for (const auto& c : coefficients) {
    out.add_scaled(c, power);
    power *= t;
  }
  return out;
}

Vector PolynomialPath::coefficient(std::size_t r) const { return r < coefficients.size() ? coefficients[r] : Vector{}; }

PolynomialPath PolynomialPath::derivative() const {
  PolynomialPath p;
  for (std::size_t r = 1; r < coefficients.size(); ++r) p.coefficients.push_back(Rational(static_cast<long>(r)) * coefficients[r]);
  p.trim();
  return p;
}

PolynomialPath PolynomialPath::integral() const {
  PolynomialPath p;
  p.coefficients.push_back(Vector{});
  for (std::size_t r = 0; r < coefficients.size(); ++r) {
    p.coefficients.push_back((Rational(1) / Rational(static_cast<long>(r + 1))) * coefficients[r]);
  }
  p.trim();
  return p;
}

void PolynomialPath::trim() { coefficients.resize(static_cast<std::size_t>(degree() + 1)); }

bool operator==(const PolynomialPath& a, const PolynomialPath& b) {
  const std::size_t n = std::max(a.coefficients.size(), b.coefficients.size());
  for (std::size_t r = 0; r < n; ++r) {
    if (a.coefficient(r) != b.coefficient(r)) return false;
  }
  return true;
}

PolynomialPath operator+(const PolynomialPath& a, const PolynomialPath& b) {
  PolynomialPath p;
  const std::size_t n = std::max(a.coefficients.size(), b.coefficients.size());
  for (std::size_t r = 0; r < n; ++r) p.coefficients.push_back(a.coefficient(r) + b.coefficient(r));
  p.trim();
  return p;
}

PolynomialPath operator*(const Rational& c, const PolynomialPath& a) {
  PolynomialPath p;
  for (const auto& v : a.coefficients) p.coefficients.push_back(c * v);
  p.trim();
  return p;
}

PolynomialPath constant_path(const Vector& v) {
  PolynomialPath p;
  p.coefficients.push_back(v);
  p.trim();
  return p;
}

PolynomialPath path_bracket(const LInftyAlgebra& g, const PolynomialPath& a, const PolynomialPath& b) {
  PolynomialPath p;
  if (a.coefficients.empty() || b.coefficients.empty()) return p;
  p.coefficients.resize(a.coefficients.size() + b.coefficients.size() - 1);
  for (std::size_t i = 0; i < a.coefficients.size(); ++i) {
    if (a.coefficients[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coefficients.size(); ++j) {
      p.coefficients[i + j] += lie_bracket(g, a.coefficients[i], b.coefficients[j]);
    }
  }
  p.trim();
  return p;
}

PolynomialPath path_apply(const LinearMap& m, const PolynomialPath& a) {
  PolynomialPath p;
  for (const auto& v : a.coefficients) p.coefficients.push_back(m.apply(v));
  p.trim();
  return p;
}

std::vector<std::string> check_homotopy(const LInftyAlgebra& g, const Homotopy& h) {
  std::vector<std::string> problems;
  const GradedSpace& s = *g.space;
  for (const auto& c : h.f0.coefficients) {
    if (!homogeneous_degree(s, c, 1).has_value() || homogeneous_degree(s, c, 1) != 1) problems.push_back("f0 is not of degree 1");
  }
  for (const auto& c : h.f1.coefficients) {
    if (!homogeneous_degree(s, c, 0).has_value() || homogeneous_degree(s, c, 0) != 0) problems.push_back("f1 is not of degree 0");
  }
  if (!problems.empty()) return problems;
  const LinearMap d = differential(g);
  const PolynomialPath mc = path_apply(d, h.f0) + Rational(1, 2) * path_bracket(g, h.f0, h.f0);
  for (int r = 0; r <= mc.degree(); ++r) {
    problems.push_back("MC equation fails at t^" + std::to_string(r) + ": " +
                       format_vector(s, mc.coefficient(static_cast<std::size_t>(r))));
  }
  const PolynomialPath flow =
      h.f0.derivative() + path_apply(d, h.f1) + Rational(-1) * path_bracket(g, h.f1, h.f0);
  for (int r = 0; r <= flow.degree(); ++r) {
    problems.push_back("flow equation fails at t^" + std::to_string(r) + ": " +
                       format_vector(s, flow.coefficient(static_cast<std::size_t>(r))));
  }
  return problems;
}

Homotopy homotopy_from_gauge(const LInftyAlgebra& g, const Vector& xi, const Vector& tau) {
  require_lie(g);
  require_degree(*g.space, xi, 0, "gauge element");
  certify_mc(g, tau);
  Homotopy h;
  h.f0.coefficients.push_back(tau);
  Vector A = tau;
  Vector B = differential(g).apply(xi);
  Rational inv_fact = 1;
  for (int m = 1;; ++m) {
    if (m > iteration_cap(g)) throw UnsupportedError("ad xi is not nilpotent on this input");
    inv_fact /= Rational(m);
    if (m > 1) B = lie_bracket(g, xi, B);
    A = lie_bracket(g, xi, A);
    if (A.is_zero() && B.is_zero()) break;
    h.f0.coefficients.push_back(inv_fact * (A - B));
  }
  h.f0.trim();
  h.f1 = constant_path(xi);
  const auto problems = check_homotopy(g, h);
  if (!problems.empty()) throw InvariantError("constructed homotopy is invalid: " + problems.front());
  return h;
}

std::pair<Vector, Vector> homotopy_faces(const LInftyAlgebra& g, const Homotopy& h) {
  Vector a = h.f0.at(0), b = h.f0.at(1);
  certify_mc(g, a);
  certify_mc(g, b);
  return {std::move(a), std::move(b)};
}

Vector gauge_from_homotopy(const LInftyAlgebra& g, const Homotopy& h) {
  require_lie(g);
  const auto problems = check_homotopy(g, h);
  if (!problems.empty()) throw StructuralError("not a homotopy: " + problems.front());
  // Picard iteration for Omega' = sum_n B_n/n! ad_Omega^n f1.
  PolynomialPath omega = h.f1.integral();
  bool settled = false;
  for (int iter = 0; iter <= iteration_cap(g); ++iter) {
    PolynomialPath integrand = h.f1;
    PolynomialPath term = h.f1;
    for (int n = 1;; ++n) {
      if (n > iteration_cap(g)) throw UnsupportedError("ad Omega is not nilpotent");
      term = path_bracket(g, omega, term);
      if (term.degree() < 0) break;
      const Rational c = bernoulli(n) * inverse_factorial(n);
      if (!is_zero(c)) integrand = integrand + c * term;
    }
    PolynomialPath next = integrand.integral();
    if (next == omega) {
      settled = true;
      break;
    }
    omega = std::move(next);
  }
  if (!settled) throw UnsupportedError("Magnus iteration did not settle");
  const Vector xi = omega.at(1);
  const auto [start, end] = homotopy_faces(g, h);
  const Vector image = gauge_act(g, xi, start);
  if (image != end) {
    throw InvariantError("Magnus exponent misses the endpoint by " + format_vector(*g.space, image - end));
  }
  return xi;
}

PolynomialPath solve_flow(const LInftyAlgebra& g, const PolynomialPath& f1, const Vector& tau, int max_degree) {
  const LinearMap d = differential(g);
  PolynomialPath f0;
  f0.coefficients.push_back(tau);
  for (int m = 0; m <= max_degree; ++m) {
    Vector rhs = -d.apply(f1.coefficient(static_cast<std::size_t>(m)));
    for (int i = 0; i <= m; ++i) {
      rhs += lie_bracket(g, f1.coefficient(static_cast<std::size_t>(i)), f0.coefficient(static_cast<std::size_t>(m - i)));
    }
    rhs *= Rational(1) / Rational(m + 1);
    if (m == max_degree) {
      if (!rhs.is_zero()) throw UnsupportedError("flow solution exceeds polynomial degree " + std::to_string(max_degree));
      break;
    }
    f0.coefficients.push_back(std::move(rhs));
  }
  f0.trim();
  return f0;
}

// ---------------------------------------------------------------------------

FirstOrderOrbits first_order_orbits(const LInftyAlgebra& g, const Vector& phi) {
  require_lie(g);
  FirstOrderOrbits out;
  out.phi = phi;
  out.h1 = cohomology(differential(twist(g, certify_mc(g, phi))), 1);
  return out;
}

bool orbit_member(const LInftyAlgebra& g, const Vector& tau, const Vector& tau2, const Vector& xi) {
  return gauge_act(g, xi, tau) == tau2;
}

ModuliReport moduli_set(const LInftyAlgebra& g, const CoefficientAlgebra& A, const Vector& phi) {
  require_lie(g);
  const LInftyAlgebra tw = twist(g, certify_mc(g, phi));
  ModuliReport out;
  out.phi = phi;
  out.extended = extend_scalars(tw, A, true);
  if (out.extended.algebra.max_arity() >= 2 && !out.extended.algebra.entries(2).empty()) {
    out.detail = "not decided: g^phi tensor m_A has nonzero brackets; supply a gauge element or use order-by-order matching";
    return out;
  }
  // Without brackets MC elements are the 1-cocycles and exp(xi) acts by tau - d xi.
  out.h1 = cohomology(differential(out.extended.algebra), 1);
  out.detail = "orbits = H^1 of g^phi tensor m_A, dimension " + std::to_string(out.h1->dimension);
  return out;
}

std::string to_string(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::Equivalent:
      return "equivalent";
    case OrbitStatus::NotEquivalent:
      return "not-equivalent";
    case OrbitStatus::Undecided:
      return "not-decided";
  }
  return "not-decided";
}

OrbitMatch match_orbits(const ExtendedAlgebra& e, const Vector& tau, const Vector& tau2) {
  const CoefficientAlgebra& A = e.coefficients;
  const int n = static_cast<int>(A.space->size());
  const CoefficientAlgebra ref = truncated_polynomial(n);
  if (A.products != ref.products || A.unit != 0 || A.has_differential() || e.coefficient_basis != ref.ideal) {
    throw UnsupportedError("orbit matching needs g tensor m_A with A = K[t]/(t^n)");
  }
  const LInftyAlgebra& h = e.algebra;
  require_lie(h);
  certify_mc(h, tau);
  certify_mc(h, tau2);
  OrbitMatch out;
  if (n < 2) {
    out.status = OrbitStatus::Equivalent;
    out.xi = Vector{};
    return out;
  }
  // delta on g, read off from l1 on g tensor t.
  LinearMap delta = zero_map(e.base, e.base, 1);
  for (Index x = 0; x < e.base->size(); ++x) {
    delta.columns[x] = e.component(bracket_on_basis(h, {e.index_of(x, 1)}), 1);
  }
  const std::vector<Index> g0 = e.base->degree_slice(0);
  const std::vector<Index> g1 = e.base->degree_slice(1);
  const QMatrix delta0 = slice_matrix(delta, 0);
  const QMatrix kernel = kernel_basis<Rational>(delta0);
  const bool injective = kernel.cols() == 0;
  // At order k the remaining freedom is exp(xi_k t^k + kappa t^{k-1}) with
  // delta kappa = 0; it moves the t^k coefficient by -delta xi_k + [kappa, sigma_1].
  Vector xi;
  for (int k = 1; k < n; ++k) {
    const Vector current = gauge_act(h, xi, tau);
    const Vector gap = e.component(current, static_cast<Index>(k)) - e.component(tau2, static_cast<Index>(k));
    if (gap.is_zero()) {
      out.matched_order = k;
      continue;
    }
    const Vector sigma1 = e.component(current, 1);
    std::vector<Vector> kappas;
    if (k > 1) {
      for (Eigen::Index c = 0; c < kernel.cols(); ++c) kappas.push_back(from_dense(kernel.col(c), g0));
    }
    QMatrix m(static_cast<Eigen::Index>(g1.size()), static_cast<Eigen::Index>(g0.size() + kappas.size()));
    m.leftCols(static_cast<Eigen::Index>(g0.size())) = delta0;
    for (std::size_t j = 0; j < kappas.size(); ++j) {
      const Vector moved = lie_bracket(h, e.tensor(kappas[j], static_cast<Index>(k - 1)), e.tensor(sigma1, 1));
      m.col(static_cast<Eigen::Index>(g0.size() + j)) = to_dense(-e.component(moved, static_cast<Index>(k)), g1);
    }
    const auto sol = solve<Rational>(m, to_dense(gap, g1));
    if (!sol) {
      out.status = (k <= 2 || injective) ? OrbitStatus::NotEquivalent : OrbitStatus::Undecided;
      out.detail = "no gauge correction at order " + std::to_string(k) + " for " + format_vector(*e.base, gap);
      return out;
    }
    Vector step = e.tensor(from_dense(sol->head(static_cast<Eigen::Index>(g0.size())), g0), static_cast<Index>(k));
    for (std::size_t j = 0; j < kappas.size(); ++j) {
      step += (*sol)(static_cast<Eigen::Index>(g0.size() + j)) * e.tensor(kappas[j], static_cast<Index>(k - 1));
    }
    xi = bch(h, step, xi);
    out.matched_order = k;
  }
  if (gauge_act(h, xi, tau) != tau2) throw InvariantError("order-by-order gauge match failed to close");
  out.status = OrbitStatus::Equivalent;
  out.xi = xi;
  return out;
}

}  // namespace linf
