#include "linf/maurer_cartan.hpp"

#include "linf/errors.hpp"

#include <sstream>

namespace linf {

namespace {

void require_degree(const GradedSpace& s, const Vector& v, int degree, const char* what) {
  for (const auto& [i, c] : v) {
    if (i >= s.size()) throw StructuralError(std::string(what) + " has an index outside the space");
    if (s[i].degree != degree) {
      throw StructuralError(std::string(what) + " is not homogeneous of degree " + std::to_string(degree) + " (" +
                            s[i].id + " has degree " + std::to_string(s[i].degree) + ")");
    }
  }
}

std::vector<Rational> to_std(const QVector& v) {
  std::vector<Rational> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = v(i);
  return out;
}

// Calls f on every ordered composition of `total` into `parts` positive parts.
void for_each_composition(int total, int parts, std::vector<int>& acc, const std::function<void()>& f) {
  if (parts == 0) {
    if (total == 0) f();
    return;
  }
  for (int first = 1; first <= total - (parts - 1); ++first) {
    acc.push_back(first);
    for_each_composition(total - first, parts - 1, acc, f);
    acc.pop_back();
  }
}

}  // namespace

Vector mc_residual(const LInftyAlgebra& g, const Vector& tau) {
  require_degree(*g.space, tau, 1, "Maurer-Cartan candidate");
  Vector out;
  if (tau.is_zero()) return out;
  for (int k = 1; k <= g.max_arity(); ++k) {
    out.add_scaled(eval_bracket(g, std::vector<Vector>(static_cast<std::size_t>(k), tau)), inverse_factorial(k));
  }
  return out;
}

MCElement certify_mc(const LInftyAlgebra& g, const Vector& tau) {
  const Vector r = mc_residual(g, tau);
  if (!r.is_zero()) {
    throw StructuralError("not a Maurer-Cartan element: residual " + format_vector(*g.space, r));
  }
  MCElement m;
  m.value_ = tau;
  return m;
}

bool is_mc(const LInftyAlgebra& g, const Vector& tau) { return mc_residual(g, tau).is_zero(); }

LInftyAlgebra twist(const LInftyAlgebra& g, const MCElement& phi) {
  const Vector& p = phi.value();
  const int K = g.max_arity();
  LInftyAlgebra out(g.space, K);
  const Index n = g.space->size();
  for (int k = 1; k <= K; ++k) {
    for_each_multiset(n, k, [&](const Tuple& t) {
      Vector value = bracket_on_basis(g, t);
      if (!p.is_zero()) {
        std::vector<Vector> args;
        for (int i = 1; i + k <= K; ++i) {
          args.assign(static_cast<std::size_t>(i), p);
          for (Index x : t) args.push_back(Vector::unit(x));
          value.add_scaled(eval_bracket(g, args), inverse_factorial(i));
        }
      }
      if (!value.is_zero()) out.set_bracket(t, value);
    });
  }
  const LinearMap d = differential(out);
  for (Index i = 0; i < n; ++i) {
    if (!d.apply(d.apply(Vector::unit(i))).is_zero()) {
      throw InvariantError("twisted differential does not square to zero on " + (*g.space)[i].id);
    }
  }
  const auto report = verify_structure(out, 2 * K - 1, false);
  if (!report.ok()) throw InvariantError("twisted brackets fail " + report.violations.front().witness);
  return out;
}

// ---------------------------------------------------------------------------

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
  Rational total = 0;
  for (const auto& [exps, c] : terms) {
    Rational term = c;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      for (int e = 0; e < exps[i]; ++e) term *= point[i];
    }
    total += term;
  }
  return total;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& [exps, c] : terms) {
    int s = 0;
    for (int e : exps) s += e;
    d = std::max(d, s);
  }
  return d;
}

std::vector<Rational> PolynomialSystem::evaluate(const std::vector<Rational>& point) const {
  std::vector<Rational> out;
  for (const auto& e : equations) out.push_back(e.evaluate(point));
  return out;
}

PolynomialSystem mc_polynomial_system(const LInftyAlgebra& g) {
  const GradedSpace& s = *g.space;
  PolynomialSystem sys;
  sys.variable_indices = s.degree_slice(1);
  sys.equation_indices = s.degree_slice(2);
  for (Index i : sys.variable_indices) sys.variables.push_back(s[i].id);
  for (Index i : sys.equation_indices) sys.equation_labels.push_back(s[i].id);
  sys.equations.resize(sys.equation_indices.size());
  std::vector<std::ptrdiff_t> row(s.size(), -1);
  for (std::size_t r = 0; r < sys.equation_indices.size(); ++r) row[sys.equation_indices[r]] = static_cast<std::ptrdiff_t>(r);
  const std::size_t m = sys.variable_indices.size();
  // Degree-1 inputs commute inside l_k, so l_k(tau^k)/k! collects
  // l_k(e_M)/prod(m_j!) for each multiset M of variables.
  for (int k = 1; k <= g.max_arity(); ++k) {
    for_each_multiset(m, k, [&](const Tuple& t) {
      Tuple inputs;
      std::vector<int> exps(m, 0);
      for (Index v : t) {
        inputs.push_back(sys.variable_indices[v]);
        ++exps[v];
      }
      const Vector value = bracket_on_basis(g, inputs);
      if (value.is_zero()) return;
      Rational scale = 1;
      for (int e : exps) scale *= inverse_factorial(e);
      for (const auto& [o, c] : value) {
        auto& terms = sys.equations[static_cast<std::size_t>(row[o])].terms;
        terms[exps] += scale * c;
        if (is_zero(terms[exps])) terms.erase(exps);
      }
    });
  }
  return sys;
}

std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& variables) {
  if (p.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Higher total degree first, then the map order.
  std::vector<std::pair<std::vector<int>, Rational>> ordered(p.terms.begin(), p.terms.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    int da = 0, db = 0;
    for (int e : a.first) da += e;
    for (int e : b.first) db += e;
    return da > db;
  });
  for (const auto& [exps, c] : ordered) {
    Rational coeff = c;
    if (first) {
      if (coeff < 0) {
        os << "-";
        coeff = -coeff;
      }
    } else {
      os << (coeff < 0 ? " - " : " + ");
      if (coeff < 0) coeff = -coeff;
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += variables[i];
      if (exps[i] > 1) mono += "^" + std::to_string(exps[i]);
    }
    if (mono.empty()) {
      os << to_string(coeff);
    } else if (coeff == 1) {
      os << mono;
    } else {
      os << to_string(coeff) << "*" << mono;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

Vector lift_obstruction(const LInftyAlgebra& twisted, const std::vector<Vector>& coefficients, int k) {
  // coefficients[j - 1] = phi_j for j < k.
  Vector out;
  std::vector<int> parts;
  for (int m = 2; m <= std::min(k, twisted.max_arity()); ++m) {
    for_each_composition(k, m, parts, [&] {
      std::vector<Vector> args;
      for (int j : parts) args.push_back(coefficients[static_cast<std::size_t>(j - 1)]);
      out.add_scaled(eval_bracket(twisted, args), inverse_factorial(m));
    });
  }
  return out;
}

LiftTrace lift_from(const LInftyAlgebra& twisted, const Vector& first_order, int n, const CohomologyResult& h2) {
  const LinearMap d = differential(twisted);
  if (!d.apply(first_order).is_zero()) throw StructuralError("first-order deformation is not a cocycle");
  LiftTrace trace;
  trace.first_order = first_order;
  trace.coefficients.push_back(first_order);
  trace.reached_order = 1;
  for (int k = 2; k < n; ++k) {
    const Vector o = lift_obstruction(twisted, trace.coefficients, k);
    if (!d.apply(o).is_zero()) {
      throw InvariantError("obstruction at order " + std::to_string(k) + " is not a cocycle");
    }
    const auto coords = to_std(class_coordinates(h2, o));
    bool vanishes = true;
    for (const auto& c : coords) vanishes = vanishes && is_zero(c);
    if (!vanishes) {
      trace.obstruction = o;
      trace.obstruction_class = coords;
      return trace;
    }
    auto sol = solve_linear(d, -o);
    if (!sol.solution) throw InvariantError("exact obstruction has no primitive");
    trace.coefficients.push_back(*sol.solution);
    trace.reached_order = k;
  }
  return trace;
}

DeformationLiftReport lift_deformation(const LInftyAlgebra& g, const MCElement& phi, int n) {
  if (n < 2) throw StructuralError("lifting needs n >= 2");
  DeformationLiftReport r;
  r.n = n;
  r.phi = phi.value();
  r.twisted = twist(g, phi);
  const LinearMap d = differential(r.twisted);
  r.h1 = cohomology(d, 1);
  r.h2 = cohomology(d, 2);
  for (const auto& h : r.h1.representatives) r.traces.push_back(lift_from(r.twisted, h, n, r.h2));
  const std::size_t m = r.h1.representatives.size();
  r.kuranishi.assign(m, std::vector<std::vector<Rational>>(m, std::vector<Rational>(static_cast<std::size_t>(r.h2.dimension))));
  if (r.twisted.max_arity() < 2) return r;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const Vector b = lie_bracket(r.twisted, r.h1.representatives[i], r.h1.representatives[j]);
      r.kuranishi[i][j] = to_std(class_coordinates(r.h2, b));
    }
  }
  return r;
}

}  // namespace linf
