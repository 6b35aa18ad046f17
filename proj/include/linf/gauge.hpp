#pragma once

// Gauge group exp(g^0) of a truncated dg Lie algebra, its action on
// Maurer-Cartan elements, and the gauge <-> homotopy correspondence over
// g[t] + g[t]dt.
//
// A homotopy (f0, f1) is the degree-1 element f0 - f1 dt of g tensor Omega_1;
// its MC equation splits into
//   delta f0 + 1/2 [f0, f0] = 0,    d f0/dt = -delta f1 + [f1, f0].

#include "linf/filtered.hpp"
#include "linf/linf_core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace linf {

/// Smallest m such that every right-nested bracket of m letters from
/// `letters` vanishes. Throws UnsupportedError if none exists below dim + 2.
int nesting_bound(const LInftyAlgebra& g, const std::vector<Vector>& letters);

/// Bernoulli number with B_1 = -1/2.
Rational bernoulli(int n);

/// Baker-Campbell-Hausdorff product log(e^x e^y) on g^0; the series stops
/// once nested brackets vanish.
Vector bch(const LInftyAlgebra& g, const Vector& x, const Vector& y);

/// exp(xi).tau = e^{ad xi} tau - (e^{ad xi} - 1)/ad xi (delta xi).
/// Throws UnsupportedError for non-Lie input, StructuralError for wrong
/// degrees or a non-MC tau, InvariantError if the result is not MC.
Vector gauge_act(const LInftyAlgebra& g, const Vector& xi, const Vector& tau);

/// Polynomial in t with vector coefficients; coefficients[r] multiplies t^r.
struct PolynomialPath {
  std::vector<Vector> coefficients;

  int degree() const;  // -1 for the zero path
  Vector at(const Rational& t) const;
  Vector coefficient(std::size_t r) const;
  PolynomialPath derivative() const;
  PolynomialPath integral() const;  // antiderivative vanishing at t = 0
  void trim();

  friend bool operator==(const PolynomialPath& a, const PolynomialPath& b);
};

PolynomialPath operator+(const PolynomialPath& a, const PolynomialPath& b);
PolynomialPath operator*(const Rational& c, const PolynomialPath& a);
PolynomialPath constant_path(const Vector& v);
/// [a(t), b(t)] coefficientwise.
PolynomialPath path_bracket(const LInftyAlgebra& g, const PolynomialPath& a, const PolynomialPath& b);
PolynomialPath path_apply(const LinearMap& m, const PolynomialPath& a);

struct Homotopy {
  PolynomialPath f0;  // degree 1
  PolynomialPath f1;  // degree 0
};

/// Violations of the two split equations, empty when (f0, f1) is a homotopy.
std::vector<std::string> check_homotopy(const LInftyAlgebra& g, const Homotopy& h);

/// f0 = e^{t ad xi} tau - (e^{t ad xi} - 1)/ad xi (delta xi), f1 = xi.
Homotopy homotopy_from_gauge(const LInftyAlgebra& g, const Vector& xi, const Vector& tau);

/// Endpoints (f0(0), f0(1)), each checked to be MC.
std::pair<Vector, Vector> homotopy_faces(const LInftyAlgebra& g, const Homotopy& h);

/// xi = Omega(1) for the Magnus exponent Omega' = sum_n B_n/n! ad_Omega^n f1,
/// Omega(0) = 0. Checks gauge_act(xi, f0(0)) = f0(1), else InvariantError.
Vector gauge_from_homotopy(const LInftyAlgebra& g, const Homotopy& h);

/// Integrates d f0/dt = -delta f1 + [f1, f0] from f0(0) = tau exactly.
/// Throws UnsupportedError if the solution is not polynomial of degree <= max_degree.
PolynomialPath solve_flow(const LInftyAlgebra& g, const PolynomialPath& f1, const Vector& tau, int max_degree);

// ---------------------------------------------------------------------------
// Orbits.

/// Order-one orbits over the dual numbers: MC(g^phi tensor (t))/exp = H^1(g^phi).
struct FirstOrderOrbits {
  Vector phi;
  CohomologyResult h1;
};
FirstOrderOrbits first_order_orbits(const LInftyAlgebra& g, const Vector& phi);

/// True when gauge_act(xi, tau) == tau2.
bool orbit_member(const LInftyAlgebra& g, const Vector& tau, const Vector& tau2, const Vector& xi);

enum class OrbitStatus { Equivalent, NotEquivalent, Undecided };
std::string to_string(OrbitStatus s);

struct OrbitMatch {
  OrbitStatus status = OrbitStatus::Undecided;
  std::optional<Vector> xi;  // in the extended algebra, when Equivalent
  int matched_order = 0;     // agreement holds modulo t^{matched_order + 1}
  std::string detail;
};

/// MC(g^phi tensor m_A) / exp(g^0 tensor m_A). Decided when all brackets of
/// g^phi tensor m_A vanish (m_A square-zero, or g^phi without brackets): the
/// orbits are then H^1 of g^phi tensor m_A, listed by representatives.
/// Otherwise h1 is empty and the report is "not decided"; use orbit_member or
/// match_orbits.
struct ModuliReport {
  Vector phi;
  ExtendedAlgebra extended;
  std::optional<CohomologyResult> h1;
  std::string detail;
  bool decided() const { return h1.has_value(); }
};
ModuliReport moduli_set(const LInftyAlgebra& g, const CoefficientAlgebra& A, const Vector& phi);

/// Order-by-order search for xi with exp(xi).tau = tau2 in g tensor m_A,
/// A = K[t]/(t^n). Order k solves for xi_k together with a delta-closed
/// correction at order k - 1, so a failure is decided when it occurs at order
/// 1 or 2 or when delta is injective on g^0; otherwise the status is Undecided.
OrbitMatch match_orbits(const ExtendedAlgebra& e, const Vector& tau, const Vector& tau2);

}  // namespace linf
