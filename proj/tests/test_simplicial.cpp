#include "algebras.hpp"

#include "linf/errors.hpp"
#include "linf/filtered.hpp"
#include "linf/gauge.hpp"
#include "linf/maurer_cartan.hpp"
#include "linf/simplicial.hpp"

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

FormMonomial mono(std::vector<int> t, unsigned dt = 0) { return {std::move(t), dt}; }

// Random degree-1 element of g tensor Omega_n of polynomial degree <= p.
Simplex random_form(const LInftyAlgebra& g, int n, int p, std::mt19937& rng) {
  Simplex s{n, {}};
  for (const auto& m : omega(n, p).monomials) {
    Vector v = random_in_degree(g, 1 - m.degree(), rng);
    if (!v.is_zero()) s.form[m] = v;
  }
  return s;
}

// Residual computed on forms directly:
// l_k(x_1 a_1, ..., x_k a_k) = (-1)^{sum_{i<j} |a_i||x_j|} l_k(x_1..x_k) a_1...a_k,
// l_1(x a) = l_1(x) a + (-1)^{|x|} x da.
Simplex residual_oracle(const LInftyAlgebra& g, const Simplex& s) {
  std::vector<std::pair<FormMonomial, Index>> terms;
  std::vector<Rational> coeffs;
  for (const auto& [m, v] : s.form) {
    for (const auto& [i, c] : v) {
      terms.push_back({m, i});
      coeffs.push_back(c);
    }
  }
  Simplex out{s.dimension, {}};
  for (std::size_t a = 0; a < terms.size(); ++a) {
    const auto& [m, i] = terms[a];
    out.form[m].add_scaled(bracket_on_basis(g, {i}), coeffs[a]);
    const int sign = (*g.space)[i].degree % 2 ? -1 : 1;
    for (const auto& [dm, c] : d_form({{m, Rational(1)}})) out.form[dm].add(i, Rational(sign) * c * coeffs[a]);
  }
  for (int k = 2; k <= g.max_arity(); ++k) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    while (true) {
      Tuple t;
      ScalarForm prod{{mono(std::vector<int>(static_cast<std::size_t>(s.dimension), 0)), Rational(1)}};
      Rational c = inverse_factorial(k);
      int koszul = 0;
      for (int p = 0; p < k; ++p) {
        const auto& [m, i] = terms[idx[static_cast<std::size_t>(p)]];
        t.push_back(i);
        c *= coeffs[idx[static_cast<std::size_t>(p)]];
        prod = multiply_forms(prod, {{m, Rational(1)}});
        for (int q = 0; q < p; ++q) koszul += terms[idx[static_cast<std::size_t>(q)]].first.degree() * (*g.space)[i].degree;
      }
      if (koszul % 2) c = -c;
      const Vector b = bracket_on_basis(g, t);
      if (!b.is_zero()) {
        for (const auto& [m, pc] : prod) out.form[m].add_scaled(b, c * pc);
      }
      std::size_t p = 0;
      while (p < idx.size() && ++idx[p] == terms.size()) idx[p++] = 0;
      if (p == idx.size() || terms.empty()) break;
    }
  }
  return normalize(out);
}

Homotopy random_gauge_homotopy(const LInftyAlgebra& g, std::mt19937& rng, const Vector& tau) {
  return homotopy_from_gauge(g, random_in_degree(g, 0, rng), tau);
}

// A non-degenerate 2-simplex: pullback of a 1-simplex along t -> t1 t2 + t1^2 / 2.
Simplex bend(const Simplex& s) {
  ScalarForm img{{mono({1, 1}), Rational(1)}, {mono({2, 0}), Rational(1) / 2}};
  return pullback(s, 2, {img});
}

struct Point {
  LInftyAlgebra g;
  Vector tau;
};

std::vector<Point> lie_points() {
  return {{heis0(), vec(heis0(), {{"u", 1}})},
          {twistable(), vec(twistable(), {{"x", 1}, {"z", 1}})},
          {twistable(), vec(twistable(), {{"x", 2}, {"z", 4}, {"u", 1}})},
          {abelian(), vec(abelian(), {{"c", 1}})}};
}

}  // namespace

TEST(Omega, Examples) {
  EXPECT_EQ(omega(0, 3).monomials.size(), 1u);
  auto w1 = omega(1, 2);
  std::vector<std::string> ids;
  for (const auto& b : w1.algebra.space->elements()) ids.push_back(b.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"1", "t", "t^2", "dt", "t*dt"}));

  auto w2 = omega(2, 1);
  ids.clear();
  for (const auto& b : w2.algebra.space->elements()) ids.push_back(b.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"1", "t1", "t2", "dt1", "dt2"}));
  EXPECT_EQ(apply_differential(w2.algebra, Vector::unit(1)), Vector::unit(3));
  EXPECT_THROW(omega(3, 1), UnsupportedError);
}

TEST(Omega, SlicesAreCdgas) {
  for (int n = 0; n <= 2; ++n) {
    for (int D = 0; D <= 3; ++D) EXPECT_TRUE(check_coefficient_algebra(omega(n, D).algebra).empty()) << n << " " << D;
  }
}

TEST(Omega, Relations) {
  // t0 = 1 - t1 - t2 has d t0 = -dt1 - dt2, and dt1 dt2 = -dt2 dt1.
  ScalarForm t0{{mono({0, 0}), Rational(1)}, {mono({1, 0}), Rational(-1)}, {mono({0, 1}), Rational(-1)}};
  EXPECT_EQ(d_form(t0), (ScalarForm{{mono({0, 0}, 1), Rational(-1)}, {mono({0, 0}, 2), Rational(-1)}}));
  ScalarForm dt1{{mono({0, 0}, 1), Rational(1)}}, dt2{{mono({0, 0}, 2), Rational(1)}};
  auto a = multiply_forms(dt1, dt2), b = multiply_forms(dt2, dt1);
  EXPECT_EQ(a.begin()->second, -b.begin()->second);
  EXPECT_TRUE(multiply_forms(dt1, dt1).empty());
  for (const auto& m : omega(2, 4).monomials) EXPECT_TRUE(d_form(d_form({{m, Rational(1)}})).empty());
}

TEST(SimplexVerify, Examples) {
  for (const auto& [g, tau] : lie_points()) {
    for (int n = 0; n <= 2; ++n) EXPECT_TRUE(mc_simplex_verify(g, constant_simplex(tau, n)).ok);
  }
  auto n = nil2();
  auto bad = mc_simplex_verify(n, constant_simplex(vec(n, {{"x", 1}}), 1));
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.residual, constant_simplex(vec(n, {{"y", q(1, 2)}}), 1));
  EXPECT_EQ(bad.detail, "residual at 1: 1/2·y");
}

TEST(SimplexVerify, ResidualMatchesFormOracle) {
  std::mt19937 rng(21);
  for (const auto& g : {twistable(), heis0(), ternary(), nil2()}) {
    const int p = g.max_arity() > 2 ? 1 : 2;
    for (int n = 0; n <= 2; ++n) {
      for (int trial = 0; trial < 3; ++trial) {
        const Simplex s = random_form(g, n, p, rng);
        EXPECT_EQ(mc_simplex_verify(g, s).residual, residual_oracle(g, s));
      }
    }
  }
}

TEST(SimplexVerify, HomotopiesAreOneSimplices) {
  std::mt19937 rng(5);
  for (const auto& [g, tau] : lie_points()) {
    const Homotopy h = random_gauge_homotopy(g, rng, tau);
    const Simplex s = homotopy_to_simplex(h);
    EXPECT_TRUE(mc_simplex_verify(g, s).ok);
    const Homotopy back = simplex_to_homotopy(s);
    EXPECT_EQ(back.f0, h.f0);
    EXPECT_EQ(back.f1, h.f1);
    // Faces are the endpoints, d0 at t = 0 and d1 at t = 1.
    const auto [a, b] = homotopy_faces(g, h);
    EXPECT_EQ(face(s, 0), constant_simplex(a, 0));
    EXPECT_EQ(face(s, 1), constant_simplex(b, 0));
    // A perturbed f1 breaks both descriptions together.
    Homotopy broken = h;
    broken.f1 = broken.f1 + constant_path(random_in_degree(g, 0, rng));
    EXPECT_EQ(check_homotopy(g, broken).empty(), mc_simplex_verify(g, homotopy_to_simplex(broken)).ok);
  }
}

TEST(Simplicial, FaceDegeneracyIdentities) {
  std::mt19937 rng(8);
  auto g = twistable();
  for (int trial = 0; trial < 3; ++trial) {
    const Simplex s2 = random_form(g, 2, 3, rng);
    for (int j = 1; j <= 2; ++j) {
      for (int i = 0; i < j; ++i) EXPECT_EQ(face(face(s2, j), i), face(face(s2, i), j - 1));
    }
    const Simplex s1 = random_form(g, 1, 3, rng);
    for (int j = 0; j <= 1; ++j) {
      EXPECT_EQ(face(degeneracy(s1, j), j), s1);
      EXPECT_EQ(face(degeneracy(s1, j), j + 1), s1);
    }
    // d_i s_j = s_{j-1} d_i (i < j), d_i s_j = s_j d_{i-1} (i > j + 1)
    EXPECT_EQ(face(degeneracy(s1, 1), 0), degeneracy(face(s1, 0), 0));
    EXPECT_EQ(face(degeneracy(s1, 0), 2), degeneracy(face(s1, 1), 0));
    const Simplex s0 = random_form(g, 0, 0, rng);
    EXPECT_EQ(face(degeneracy(s0, 0), 0), s0);
    EXPECT_EQ(face(degeneracy(s0, 0), 1), s0);
    EXPECT_EQ(degeneracy(degeneracy(s0, 0), 0), degeneracy(degeneracy(s0, 0), 1));
  }
}

TEST(Simplicial, MCPreservedByFacesAndDegeneracies) {
  std::mt19937 rng(13);
  for (const auto& [g, tau] : lie_points()) {
    const Simplex s1 = homotopy_to_simplex(random_gauge_homotopy(g, rng, tau));
    const Simplex s2 = bend(s1);
    ASSERT_TRUE(mc_simplex_verify(g, s2).ok);
    for (int i = 0; i <= 1; ++i) EXPECT_TRUE(mc_simplex_verify(g, degeneracy(s1, i)).ok);
    for (int i = 0; i <= 2; ++i) {
      const Simplex f = face(s2, i);
      EXPECT_TRUE(mc_simplex_verify(g, f).ok);
      for (int j = 0; j <= 1; ++j) EXPECT_TRUE(mc_simplex_verify(g, face(f, j)).ok);
    }
  }
}

TEST(Simplicial, TowerCompatibility) {
  std::mt19937 rng(4);
  auto g = twistable();
  const Vector tau = vec(g, {{"x", 1}, {"z", 1}});
  for (int R = 2; R <= 3; ++R) {
    const auto big = truncate(g, R + 1), small = truncate(g, R);
    const LinearMap p = projection_by_ids(big.space, small.space);
    const Vector t = projection_by_ids(g.space, big.space).apply(tau);
    const Simplex s = bend(homotopy_to_simplex(random_gauge_homotopy(big, rng, t)));
    ASSERT_TRUE(mc_simplex_verify(big, s).ok);
    const Simplex ps = map_simplex(p, s);
    EXPECT_TRUE(mc_simplex_verify(small, ps).ok);
    for (int i = 0; i <= 2; ++i) EXPECT_EQ(map_simplex(p, face(s, i)), face(ps, i));
  }
}

TEST(Pi0, AgreesWithModuli) {
  auto n = nil2();
  auto r = pi0(n, dual_numbers(), Vector{});
  ASSERT_TRUE(r.decided());
  EXPECT_EQ(r.h1->dimension, 1);
  auto a = abelian();
  EXPECT_EQ(pi0(a, dual_numbers(), Vector{}).h1->dimension, 1);
  EXPECT_FALSE(pi0(n, truncated_polynomial(3), Vector{}).decided());
}

TEST(Fibration, Identity) {
  auto g = twistable();
  FilteredMorphism id{"id", g, g, identity_map(g.space)};
  std::mt19937 rng(2);
  const Vector tau = vec(g, {{"x", 1}, {"z", 1}});
  auto r = fibration_consequence_check(id, 4, {tau}, {random_gauge_homotopy(g, rng, tau)});
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(*r.points[0].lift, tau);
}

TEST(Fibration, AcyclicSummandProjection) {
  std::mt19937 rng(19);
  for (const auto& h : {nil2(), twistable(), heis0()}) {
    auto f = projection_morphism(with_acyclic(h), h);
    std::vector<Vector> points{Vector{}};
    std::vector<Homotopy> paths;
    if (h.space->find("z") && h.space->find("x") && h.space->find("e")) {
      for (int a : {1, -2}) points.push_back(vec(h, {{"x", a}, {"z", a * a}, {"u", 3}}));
    }
    for (const auto& p : points) paths.push_back(random_gauge_homotopy(h, rng, p));
    auto r = fibration_consequence_check(f, 4, points, paths);
    ASSERT_TRUE(r.hypotheses_ok) << r.hypothesis_detail;
    EXPECT_TRUE(r.ok());
    for (const auto& pl : r.paths) {
      ASSERT_TRUE(pl.lift.has_value());
      EXPECT_TRUE(check_homotopy(f.source, *pl.lift).empty());
      EXPECT_EQ(path_apply(f.map, pl.lift->f1), pl.target.f1);
    }
  }
}

TEST(Fibration, HypothesesNotMet) {
  auto n = nil2();
  auto big = direct_sum(n, {{"z", 1, 1}}, {});
  FilteredMorphism inc{"i", n, big, inclusion_by_ids(n.space, big.space)};
  auto r = fibration_consequence_check(inc, 3, {}, {});
  EXPECT_FALSE(r.hypotheses_ok);
  EXPECT_EQ(r.hypothesis_detail, "hypotheses not met: not stagewise surjective");
}

// A surjection whose kernel is not acyclic: x is MC downstairs but not upstairs.
TEST(Fibration, ObstructionReported) {
  auto src = nil2();
  auto tgt = build({{"x", 1, 1}}, 2, {});
  FilteredMorphism f{"p", src, tgt, projection_by_ids(src.space, tgt.space)};
  auto r = fibration_consequence_check(f, 3, {vec(tgt, {{"x", 1}})}, {});
  ASSERT_TRUE(r.hypotheses_ok);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.points[0].failed_weight, 2);
  EXPECT_EQ(r.points[0].obstruction, vec(src, {{"y", q(1, 2)}}));
}
