#include "algebras.hpp"

#include "linf/errors.hpp"
#include "linf/filtered.hpp"
#include "linf/gauge.hpp"
#include "linf/maurer_cartan.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace linf;
using namespace testalg;

namespace {

Rational rnd(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 2);
  return Rational(num(rng)) / Rational(den(rng));
}

Vector random_in_degree(const LInftyAlgebra& g, int degree, std::mt19937& rng) {
  Vector v;
  for (Index i : g.space->degree_slice(degree)) v.add(i, rnd(rng));
  return v;
}

// Matrix oracle for BCH on strictly upper triangular 4x4 matrices.
QMatrix to_matrix(const LInftyAlgebra& g, const Vector& v) {
  QMatrix m = QMatrix::Zero(4, 4);
  for (const auto& [i, c] : v) {
    const auto& id = (*g.space)[i].id;
    m(id[1] - '1', id[2] - '1') = c;
  }
  return m;
}

Vector from_matrix(const LInftyAlgebra& g, const QMatrix& m) {
  Vector v;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      v.add(g.space->index_of("e" + std::to_string(i + 1) + std::to_string(j + 1)), m(i, j));
    }
  }
  return v;
}

QMatrix mat_exp(const QMatrix& x) {
  QMatrix out = QMatrix::Identity(4, 4), term = QMatrix::Identity(4, 4);
  for (int k = 1; k < 4; ++k) {
    term = (term * x).eval() / Rational(k);
    out += term;
  }
  return out;
}

QMatrix mat_log(const QMatrix& u) {
  const QMatrix n = u - QMatrix::Identity(4, 4);
  QMatrix out = QMatrix::Zero(4, 4), power = QMatrix::Identity(4, 4);
  for (int k = 1; k < 4; ++k) {
    power = (power * n).eval();
    out += power * (Rational(k % 2 ? 1 : -1) / Rational(k));
  }
  return out;
}

struct GaugeCase {
  LInftyAlgebra g;
  std::string name;
};

std::vector<GaugeCase> lie_corpus() {
  return {{abelian(), "abelian"}, {heis0(), "heis0"}, {twistable(), "twistable"}, {adjoint_n4(), "adjoint"},
          {extend_scalars(twistable(), truncated_polynomial(3), true).algebra, "twistable*t"},
          {extend_scalars(heis0(), truncated_polynomial(3), true).algebra, "heis0*t"}};
}

// A random MC element: random degree-1 vectors are tried until one is MC,
// falling back to zero. For the corpus most degree-1 choices are MC.
Vector random_mc(const LInftyAlgebra& g, std::mt19937& rng) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    Vector t = random_in_degree(g, 1, rng);
    if (is_mc(g, t)) return t;
    // Keep only coordinates that are cocycles of the full MC equation one at a time.
    Vector u;
    for (const auto& [i, c] : t) {
      if (is_mc(g, u + Vector::unit(i, c))) u.add(i, c);
    }
    if (!u.is_zero()) return u;
  }
  return {};
}

}  // namespace

TEST(Bch, Examples) {
  auto g = heis0();
  const Vector p = vec(g, {{"p", 1}}), qv = vec(g, {{"q", 1}});
  EXPECT_EQ(bch(g, p, Vector{}), p);
  EXPECT_EQ(bch(g, p, qv), vec(g, {{"p", 1}, {"q", 1}, {"z", q(1, 2)}}));
  auto a = abelian();
  EXPECT_EQ(bch(a, vec(a, {{"a", 2}}), vec(a, {{"a", 3}})), vec(a, {{"a", 5}}));
  EXPECT_EQ(bernoulli(1), q(-1, 2));
  EXPECT_EQ(bernoulli(2), q(1, 6));
  EXPECT_EQ(bernoulli(4), q(-1, 30));
  EXPECT_EQ(bernoulli(3), q(0));
}

TEST(Bch, MatchesMatrixLogarithm) {
  auto g = adjoint_n4();
  std::mt19937 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const Vector x = random_in_degree(g, 0, rng), y = random_in_degree(g, 0, rng);
    const Vector expected = from_matrix(g, mat_log(mat_exp(to_matrix(g, x)) * mat_exp(to_matrix(g, y))));
    EXPECT_EQ(bch(g, x, y), expected);
  }
}

TEST(Gauge, Examples) {
  auto a = abelian();
  const Vector tau = vec(a, {{"c", 1}});
  EXPECT_EQ(gauge_act(a, Vector{}, tau), tau);
  EXPECT_EQ(gauge_act(a, vec(a, {{"a", 2}}), tau), vec(a, {{"c", 1}, {"b", -2}}));
  auto t = ternary();
  EXPECT_THROW(gauge_act(t, Vector{}, Vector{}), UnsupportedError);
  auto n = nil2();
  EXPECT_THROW(gauge_act(n, Vector{}, vec(n, {{"x", 1}})), StructuralError);
  EXPECT_THROW(gauge_act(a, vec(a, {{"b", 1}}), tau), StructuralError);
}

// exp(xi t).(phi + phi_1 t) = phi + (phi_1 - d_phi xi) t over the dual numbers.
TEST(Gauge, DualNumberAction) {
  auto g = twistable();
  const Vector phi = vec(g, {{"x", 1}, {"z", 1}});
  const auto dphi = differential(twist(g, certify_mc(g, phi)));
  auto e = extend_scalars(g, dual_numbers(), false);
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector xi = random_in_degree(g, 0, rng);
    Vector phi1;
    for (Index i : g.space->degree_slice(1)) phi1.add(i, rnd(rng));
    const Vector tau = e.tensor(phi, 0) + e.tensor(phi1, 1);
    if (!is_mc(e.algebra, tau)) continue;
    EXPECT_EQ(gauge_act(e.algebra, e.tensor(xi, 1), tau), e.tensor(phi, 0) + e.tensor(phi1 - dphi.apply(xi), 1));
  }
}

TEST(Gauge, GroupLaw) {
  std::mt19937 rng(29);
  for (const auto& [g, name] : lie_corpus()) {
    for (int trial = 0; trial < 10; ++trial) {
      const Vector tau = random_mc(g, rng);
      const Vector x = random_in_degree(g, 0, rng), y = random_in_degree(g, 0, rng);
      EXPECT_EQ(gauge_act(g, bch(g, x, y), tau), gauge_act(g, x, gauge_act(g, y, tau))) << name;
    }
  }
}

TEST(Homotopy, Examples) {
  auto a = abelian();
  const Vector tau = vec(a, {{"c", 1}});
  auto h0 = homotopy_from_gauge(a, Vector{}, tau);
  EXPECT_EQ(h0.f0, constant_path(tau));
  EXPECT_EQ(h0.f1.degree(), -1);
  EXPECT_TRUE(gauge_from_homotopy(a, h0).is_zero());

  const Vector xi = vec(a, {{"a", 3}});
  auto h = homotopy_from_gauge(a, xi, tau);
  PolynomialPath expected;
  expected.coefficients = {tau, vec(a, {{"b", -3}})};
  EXPECT_EQ(h.f0, expected);
  EXPECT_EQ(h.f1, constant_path(xi));
  const auto [s, t] = homotopy_faces(a, h);
  EXPECT_EQ(s, tau);
  EXPECT_EQ(t, vec(a, {{"c", 1}, {"b", -3}}));
  EXPECT_EQ(gauge_from_homotopy(a, h), xi);
}

// tau = u, xi = p + q: f0 = u + t(v - u) - t^2 v / 2 by hand.
TEST(Homotopy, Heis0Expansion) {
  auto g = heis0();
  auto h = homotopy_from_gauge(g, vec(g, {{"p", 1}, {"q", 1}}), vec(g, {{"u", 1}}));
  PolynomialPath expected;
  expected.coefficients = {vec(g, {{"u", 1}}), vec(g, {{"v", 1}, {"u", -1}}), vec(g, {{"v", q(-1, 2)}})};
  EXPECT_EQ(h.f0, expected);
  EXPECT_TRUE(check_homotopy(g, h).empty());
}

TEST(Homotopy, InvalidHomotopiesAreReported) {
  auto g = heis0();
  Homotopy h;
  h.f0 = constant_path(vec(g, {{"u", 1}}));
  h.f1 = constant_path(vec(g, {{"p", 1}}));
  EXPECT_FALSE(check_homotopy(g, h).empty());
  EXPECT_THROW(gauge_from_homotopy(g, h), StructuralError);
}

TEST(Homotopy, RoundTripActsIdentically) {
  std::mt19937 rng(31);
  for (const auto& [g, name] : lie_corpus()) {
    for (int trial = 0; trial < 10; ++trial) {
      const Vector tau = random_mc(g, rng);
      const Vector xi = random_in_degree(g, 0, rng);
      auto h = homotopy_from_gauge(g, xi, tau);
      EXPECT_TRUE(check_homotopy(g, h).empty()) << name;
      const auto [s, t] = homotopy_faces(g, h);
      EXPECT_EQ(s, tau);
      EXPECT_EQ(t, gauge_act(g, xi, tau));
      const Vector back = gauge_from_homotopy(g, h);
      EXPECT_EQ(gauge_act(g, back, tau), gauge_act(g, xi, tau)) << name;
    }
  }
}

// Time-dependent generators: f0 from the flow, xi from Magnus.
TEST(Homotopy, MagnusForTimeDependentGenerator) {
  std::mt19937 rng(37);
  for (const auto& [g, name] : lie_corpus()) {
    for (int trial = 0; trial < 5; ++trial) {
      PolynomialPath f1;
      f1.coefficients = {random_in_degree(g, 0, rng), random_in_degree(g, 0, rng), random_in_degree(g, 0, rng)};
      f1.trim();
      const Vector tau = random_mc(g, rng);
      Homotopy h;
      h.f1 = f1;
      h.f0 = solve_flow(g, f1, tau, 40);
      ASSERT_TRUE(check_homotopy(g, h).empty()) << name;
      const Vector xi = gauge_from_homotopy(g, h);
      EXPECT_EQ(gauge_act(g, xi, tau), h.f0.at(1)) << name;
    }
  }
}

TEST(Homotopy, ConstantGeneratorGivesItself) {
  auto g = adjoint_n4();
  std::mt19937 rng(41);
  const Vector xi = random_in_degree(g, 0, rng);
  const Vector tau = random_in_degree(g, 1, rng);
  Homotopy h;
  h.f1 = constant_path(xi);
  h.f0 = solve_flow(g, h.f1, tau, 40);
  EXPECT_EQ(gauge_from_homotopy(g, h), xi);
  EXPECT_EQ(h.f0, homotopy_from_gauge(g, xi, tau).f0);
}

TEST(Orbits, FirstOrder) {
  auto a = abelian();
  EXPECT_EQ(first_order_orbits(a, Vector{}).h1.dimension, 1);
  auto n = nil2();
  auto o = first_order_orbits(n, Vector{});
  ASSERT_EQ(o.h1.dimension, 1);
  EXPECT_EQ(o.h1.representatives[0].support_size(), 1u);
  EXPECT_EQ(o.h1.representatives[0].coeff(n.space->index_of("x")), 1);
}

TEST(Orbits, Membership) {
  auto g = heis0();
  const Vector tau = vec(g, {{"u", 1}});
  const Vector xi = vec(g, {{"p", 2}});
  EXPECT_TRUE(orbit_member(g, tau, gauge_act(g, xi, tau), xi));
  EXPECT_FALSE(orbit_member(g, tau, tau, xi));
}

TEST(Orbits, OrderByOrder) {
  std::mt19937 rng(43);
  for (const auto& base : {twistable(), heis0(), adjoint_n4()}) {
    for (int order : {3, 4}) {
      auto e = extend_scalars(base, truncated_polynomial(order), true);
      for (int trial = 0; trial < 5; ++trial) {
        const Vector tau = random_mc(e.algebra, rng);
        const Vector xi = random_in_degree(e.algebra, 0, rng);
        const Vector tau2 = gauge_act(e.algebra, xi, tau);
        auto m = match_orbits(e, tau, tau2);
        if (order == 3) ASSERT_EQ(m.status, OrbitStatus::Equivalent);
        ASSERT_NE(m.status, OrbitStatus::NotEquivalent);
        if (m.status == OrbitStatus::Equivalent) EXPECT_EQ(gauge_act(e.algebra, *m.xi, tau), tau2);
      }
    }
  }
  auto n = nil2();
  auto e = extend_scalars(n, dual_numbers(), true);
  auto m = match_orbits(e, e.tensor(vec(n, {{"x", 1}}), 1), Vector{});
  EXPECT_EQ(m.status, OrbitStatus::NotEquivalent);
  EXPECT_THROW(match_orbits(extend_scalars(n, dual_numbers(), false), Vector{}, Vector{}), UnsupportedError);
}

TEST(Orbits, ModuliSet) {
  auto a = abelian();
  auto r = moduli_set(a, dual_numbers(), Vector{});
  ASSERT_TRUE(r.decided());
  EXPECT_EQ(r.h1->dimension, cohomology(differential(a), 1).dimension);

  auto n = nil2();
  r = moduli_set(n, dual_numbers(), Vector{});
  ASSERT_TRUE(r.decided());
  ASSERT_EQ(r.h1->dimension, 1);
  EXPECT_EQ(r.h1->representatives[0], r.extended.tensor(vec(n, {{"x", 1}}), 1));

  r = moduli_set(n, truncated_polynomial(3), Vector{});
  EXPECT_FALSE(r.decided());
  EXPECT_EQ(r.detail.rfind("not decided", 0), 0u);

  // Abelian algebras are decided over any A: H^1(g tensor m_A) = H^1(g) tensor m_A here.
  r = moduli_set(a, truncated_polynomial(4), Vector{});
  ASSERT_TRUE(r.decided());
  EXPECT_EQ(r.h1->dimension, 3);

  // Twisted: H^1 of the twisted algebra at phi = x + z.
  auto g = twistable();
  const Vector phi = vec(g, {{"x", 1}, {"z", 1}});
  r = moduli_set(g, dual_numbers(), phi);
  ASSERT_TRUE(r.decided());
  EXPECT_EQ(r.h1->dimension, first_order_orbits(g, phi).h1.dimension);
}
