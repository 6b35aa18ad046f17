#include "linf/filtered.hpp"

#include <algorithm>
#include <functional>

namespace linf {

namespace {

bool odd(int d) { return (d % 2) != 0; }

}  // namespace

StructureReport check_filtration(const LInftyAlgebra& g) {
  StructureReport all = check_entries(g, true);
  StructureReport out;
  out.tuples_checked = all.tuples_checked;
  for (auto& v : all.violations) {
    if (v.kind == "weight") out.violations.push_back(std::move(v));
  }
  return out;
}

LInftyAlgebra truncate(const LInftyAlgebra& g, int R) {
  if (R < 1) throw StructuralError("truncation order must be at least 1");
  const GradedSpace& s = *g.space;
  std::vector<BasisElement> kept;
  std::vector<std::ptrdiff_t> position(s.size(), -1);
  for (Index i = 0; i < s.size(); ++i) {
    if (s[i].weight < R) {
      position[i] = static_cast<std::ptrdiff_t>(kept.size());
      kept.push_back(s[i]);
    }
  }
  LInftyAlgebra out(make_space(std::move(kept)), g.max_arity());
  for (int k = 1; k <= g.max_arity(); ++k) {
    for (const auto& [t, v] : g.entries(k)) {
      Tuple nt;
      bool inside = true;
      for (Index i : t) {
        if (position[i] < 0) {
          inside = false;
          break;
        }
        nt.push_back(static_cast<Index>(position[i]));
      }
      if (!inside) continue;
      Vector nv;
      for (const auto& [o, c] : v) {
        if (position[o] >= 0) nv.add(static_cast<Index>(position[o]), c);
      }
      out.set_bracket(nt, nv);
    }
  }
  return out;
}

LinearMap projection_by_ids(const SpacePtr& from, const SpacePtr& to) {
  LinearMap m = zero_map(from, to, 0);
  for (Index i = 0; i < from->size(); ++i) {
    if (auto j = to->find((*from)[i].id)) m.columns[i] = Vector::unit(*j);
  }
  return m;
}

// ---------------------------------------------------------------------------

bool CoefficientAlgebra::has_differential() const {
  return std::any_of(differential.begin(), differential.end(), [](const Vector& v) { return !v.is_zero(); });
}

Vector basis_product(const CoefficientAlgebra& A, Index a, Index b) {
  if (a == A.unit) return Vector::unit(b);
  if (b == A.unit) return Vector::unit(a);
  auto it = A.products.find({a, b});
  return it == A.products.end() ? Vector{} : it->second;
}

Vector multiply(const CoefficientAlgebra& A, const Vector& a, const Vector& b) {
  Vector out;
  for (const auto& [i, c] : a) {
    for (const auto& [j, d] : b) out.add_scaled(basis_product(A, i, j), c * d);
  }
  return out;
}

Vector apply_differential(const CoefficientAlgebra& A, const Vector& a) {
  Vector out;
  if (A.differential.empty()) return out;
  for (const auto& [i, c] : a) out.add_scaled(A.differential[i], c);
  return out;
}

std::vector<std::string> check_coefficient_algebra(const CoefficientAlgebra& A) {
  std::vector<std::string> problems;
  const GradedSpace& s = *A.space;
  const Index n = s.size();
  if (A.unit >= n) return {"unit outside the basis"};
  if (s[A.unit].degree != 0) problems.push_back("unit is not of degree 0");
  std::vector<bool> in_ideal(n, false);
  for (Index i : A.ideal) {
    if (i >= n) return {"ideal element outside the basis"};
    in_ideal[i] = true;
  }
  if (in_ideal[A.unit]) problems.push_back("unit lies in the maximal ideal");
  for (Index i = 0; i < n; ++i) {
    if (i != A.unit && !in_ideal[i]) problems.push_back("basis element " + s[i].id + " is neither unit nor in m_A");
  }
  auto id = [&](Index i) { return s[i].id; };
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      const Vector ab = basis_product(A, a, b);
      for (const auto& [o, c] : ab) {
        if (s[o].degree != s[a].degree + s[b].degree) problems.push_back("product " + id(a) + "." + id(b) + " has wrong degree");
      }
      const int sign = (odd(s[a].degree) && odd(s[b].degree)) ? -1 : 1;
      if (ab != Rational(sign) * basis_product(A, b, a)) {
        problems.push_back("product " + id(a) + "." + id(b) + " is not graded commutative");
      }
      if (in_ideal[a]) {
        for (const auto& [o, c] : ab) {
          if (!in_ideal[o]) problems.push_back("product " + id(a) + "." + id(b) + " leaves m_A");
        }
      }
      for (Index c = 0; c < n; ++c) {
        const Vector left = multiply(A, ab, Vector::unit(c));
        const Vector right = multiply(A, Vector::unit(a), basis_product(A, b, c));
        if (left != right) problems.push_back("product " + id(a) + "." + id(b) + "." + id(c) + " is not associative");
      }
    }
  }
  if (!A.differential.empty()) {
    if (A.differential.size() != n) {
      problems.push_back("differential table has the wrong size");
      return problems;
    }
    for (Index a = 0; a < n; ++a) {
      for (const auto& [o, c] : A.differential[a]) {
        if (s[o].degree != s[a].degree + 1) problems.push_back("d(" + id(a) + ") has wrong degree");
      }
      if (!apply_differential(A, A.differential[a]).is_zero()) problems.push_back("d^2(" + id(a) + ") != 0");
      for (Index b = 0; b < n; ++b) {
        const Vector lhs = apply_differential(A, basis_product(A, a, b));
        Vector rhs = multiply(A, A.differential[a], Vector::unit(b));
        rhs.add_scaled(multiply(A, Vector::unit(a), A.differential[b]), Rational(odd(s[a].degree) ? -1 : 1));
        if (lhs != rhs) problems.push_back("d is not a derivation on " + id(a) + "." + id(b));
      }
    }
  }
  return problems;
}

int nilpotency_index(const CoefficientAlgebra& A) {
  const Index n = A.space->size();
  std::vector<Index> all(n);
  for (Index i = 0; i < n; ++i) all[i] = i;
  // Spanning set of m_A^k, reduced to a basis at each step.
  std::vector<Vector> power;
  for (Index i : A.ideal) power.push_back(Vector::unit(i));
  auto reduce = [&](const std::vector<Vector>& vs) {
    if (vs.empty()) return vs;
    QMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(vs.size()));
    for (std::size_t c = 0; c < vs.size(); ++c) m.col(static_cast<Eigen::Index>(c)) = to_dense(vs[c], all);
    std::vector<Vector> out;
    for (auto c : independent_columns<Rational>(m)) out.push_back(vs[static_cast<std::size_t>(c)]);
    return out;
  };
  power = reduce(power);
  for (int k = 1; k <= static_cast<int>(n) + 1; ++k) {
    if (power.empty()) return k;
    std::vector<Vector> next;
    for (const auto& p : power) {
      for (Index i : A.ideal) {
        Vector v = multiply(A, Vector::unit(i), p);
        if (!v.is_zero()) next.push_back(std::move(v));
      }
    }
    power = reduce(next);
  }
  throw StructuralError("maximal ideal of " + A.name + " is not nilpotent");
}

bool is_square_zero(const CoefficientAlgebra& A) {
  for (Index a : A.ideal) {
    for (Index b : A.ideal) {
      if (!basis_product(A, a, b).is_zero()) return false;
    }
  }
  return true;
}

CoefficientAlgebra truncated_polynomial(int n, const std::string& variable) {
  if (n < 1) throw StructuralError("truncated polynomial algebra needs n >= 1");
  std::vector<BasisElement> b{{"1", 0, 1}};
  for (int i = 1; i < n; ++i) b.push_back({i == 1 ? variable : variable + "^" + std::to_string(i), 0, 1});
  CoefficientAlgebra A;
  A.name = n == 1 ? "K" : "K[" + variable + "]/(" + variable + "^" + std::to_string(n) + ")";
  A.space = make_space(std::move(b));
  A.unit = 0;
  for (int i = 1; i < n; ++i) {
    A.ideal.push_back(static_cast<Index>(i));
    for (int j = 1; j < n; ++j) {
      if (i + j < n) A.products[{static_cast<Index>(i), static_cast<Index>(j)}] = Vector::unit(static_cast<Index>(i + j));
    }
  }
  return A;
}

CoefficientAlgebra ground_field() {
  CoefficientAlgebra A = truncated_polynomial(1);
  A.name = "K";
  return A;
}

// ---------------------------------------------------------------------------

Index ExtendedAlgebra::index_of(Index g, Index a) const {
  if (a >= slot_.size() || slot_[a] < 0) {
    throw StructuralError("coefficient " + (*coefficients.space)[a].id + " is not part of the extension");
  }
  return g * coefficient_basis.size() + static_cast<Index>(slot_[a]);
}

Vector ExtendedAlgebra::tensor(const Vector& x, Index a) const {
  Vector out;
  for (const auto& [i, c] : x) out.add(index_of(i, a), c);
  return out;
}

Vector ExtendedAlgebra::component(const Vector& v, Index a) const {
  Vector out;
  for (const auto& [i, c] : v) {
    if (pairs[i].second == a) out.add(pairs[i].first, c);
  }
  return out;
}

namespace {

// Enumerates coefficient assignments a_1..a_k (positions into `basis`) that
// keep the extended tuple canonical: non-decreasing along runs of equal g inputs.
void for_each_assignment(const Tuple& t, std::size_t m, std::size_t pos, std::vector<std::size_t>& a,
                         const std::function<void()>& f) {
  if (pos == t.size()) {
    f();
    return;
  }
  const std::size_t start = (pos > 0 && t[pos] == t[pos - 1]) ? a[pos - 1] : 0;
  for (std::size_t j = start; j < m; ++j) {
    a[pos] = j;
    for_each_assignment(t, m, pos + 1, a, f);
  }
}

}  // namespace

ExtendedAlgebra extend_scalars(const LInftyAlgebra& g, const CoefficientAlgebra& A, bool ideal_only) {
  ExtendedAlgebra e;
  e.base = g.space;
  e.coefficients = A;
  const GradedSpace& gs = *g.space;
  const GradedSpace& as = *A.space;
  if (ideal_only) {
    e.coefficient_basis = A.ideal;
  } else {
    for (Index i = 0; i < as.size(); ++i) e.coefficient_basis.push_back(i);
  }
  e.slot_.assign(as.size(), -1);
  for (std::size_t p = 0; p < e.coefficient_basis.size(); ++p) {
    e.slot_[e.coefficient_basis[p]] = static_cast<std::ptrdiff_t>(p);
  }
  std::vector<BasisElement> basis;
  for (Index x = 0; x < gs.size(); ++x) {
    for (Index a : e.coefficient_basis) {
      basis.push_back({gs[x].id + "*" + as[a].id, gs[x].degree + as[a].degree, gs[x].weight});
      e.pairs.emplace_back(x, a);
    }
  }
  e.algebra = LInftyAlgebra(make_space(std::move(basis)), g.max_arity());
  const std::size_t m = e.coefficient_basis.size();
  if (m == 0) return e;

  auto tensor_product = [&](const Vector& x, const Vector& a, const Rational& scale, Vector& out) {
    for (const auto& [i, c] : x) {
      for (const auto& [j, d] : a) out.add(e.index_of(i, j), scale * c * d);
    }
  };

  // l_1 includes the coefficient differential, so it is built on every basis pair.
  for (Index x = 0; x < gs.size(); ++x) {
    const Vector dx = bracket_on_basis(g, {x});
    for (Index a : e.coefficient_basis) {
      Vector out;
      tensor_product(dx, Vector::unit(a), Rational(1), out);
      if (A.has_differential()) {
        tensor_product(Vector::unit(x), apply_differential(A, Vector::unit(a)),
                       Rational(odd(gs[x].degree) ? -1 : 1), out);
      }
      if (!out.is_zero()) e.algebra.set_bracket({e.index_of(x, a)}, out);
    }
  }
  for (int k = 2; k <= g.max_arity(); ++k) {
    for (const auto& [t, value] : g.entries(k)) {
      std::vector<std::size_t> assign(t.size());
      for_each_assignment(t, m, 0, assign, [&] {
        Vector product = Vector::unit(A.unit);
        int exponent = 0;
        Tuple ext;
        for (std::size_t i = 0; i < t.size(); ++i) {
          const Index a = e.coefficient_basis[assign[i]];
          product = multiply(A, product, Vector::unit(a));
          for (std::size_t j = i + 1; j < t.size(); ++j) exponent += as[a].degree * gs[t[j]].degree;
          ext.push_back(e.index_of(t[i], a));
        }
        if (product.is_zero()) return;
        Vector out;
        tensor_product(value, product, Rational(odd(exponent) ? -1 : 1), out);
        if (!out.is_zero()) e.algebra.set_bracket(ext, out);
      });
    }
  }
  return e;
}

Vector map_coefficients(const ExtendedAlgebra& from, const ExtendedAlgebra& to, const std::vector<Vector>& phi,
                        const Vector& v) {
  Vector out;
  for (const auto& [i, c] : v) {
    const auto [x, a] = from.pairs[i];
    for (const auto& [b, d] : phi.at(a)) out.add(to.index_of(x, b), c * d);
  }
  return out;
}

}  // namespace linf
