#include "linf/defcomplex.hpp"

#include "linf/errors.hpp"
#include "linf/filtered.hpp"
#include "linf/gauge.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace linf;

namespace {

Rational& at(FiniteAlgebraData& X, int a, int b, int c) {
  return X.mu[static_cast<std::size_t>((a * X.dimension + b) * X.dimension + c)];
}

// Upper triangular 2x2 matrices restricted to span(e11, e12): e11 e11 = e11, e11 e12 = e12.
FiniteAlgebraData left_ideal() {
  auto X = make_algebra_data("e11,e12", 2);
  at(X, 0, 0, 0) = 1;
  at(X, 0, 1, 1) = 1;
  return X;
}

FiniteAlgebraData zero_algebra(int d) { return make_algebra_data("zero", d); }

// Hochschild cochains C^n = Hom(X^{n}, X) as dense rational matrices.
// (d xi)(a, b) = a xi(b) - xi(ab) + xi(a) b
// (d f)(a, b, c) = a f(b, c) - f(ab, c) + f(a, bc) - f(a, b) c
int hochschild_h2(const FiniteAlgebraData& X) {
  const int d = X.dimension;
  const int n1 = d * d, n2 = d * d * d, n3 = d * d * d * d;
  auto c1 = [&](int a, int o) { return a * d + o; };
  auto c2 = [&](int a, int b, int o) { return (a * d + b) * d + o; };
  auto c3 = [&](int a, int b, int c, int o) { return ((a * d + b) * d + c) * d + o; };
  QMatrix d1 = QMatrix::Zero(n2, n1);
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) {
      const int col = c1(x, y);  // xi(e_x) = e_y
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
          for (int o = 0; o < d; ++o) {
            Rational v = 0;
            if (b == x) v += X.product(a, y, o);
            for (int m = 0; m < d; ++m) {
              if (m == x && y == o) v -= X.product(a, b, m);
            }
            if (a == x) v += X.product(y, b, o);
            d1(c2(a, b, o), col) += v;
          }
        }
      }
    }
  }
  QMatrix d2 = QMatrix::Zero(n3, n2);
  for (int x = 0; x < d; ++x) {
    for (int z = 0; z < d; ++z) {
      for (int y = 0; y < d; ++y) {
        const int col = c2(x, z, y);  // f(e_x, e_z) = e_y
        for (int a = 0; a < d; ++a) {
          for (int b = 0; b < d; ++b) {
            for (int c = 0; c < d; ++c) {
              for (int o = 0; o < d; ++o) {
                Rational v = 0;
                if (b == x && c == z) v += X.product(a, y, o);
                if (c == z && o == y) v -= X.product(a, b, x);
                if (a == x && o == y) v += X.product(b, c, z);
                if (a == x && b == z) v -= X.product(y, c, o);
                d2(c3(a, b, c, o), col) += v;
              }
            }
          }
        }
      }
    }
  }
  const QMatrix prod = d2 * d1;
  for (Eigen::Index i = 0; i < prod.rows(); ++i) {
    for (Eigen::Index j = 0; j < prod.cols(); ++j) {
      if (!is_zero(prod(i, j))) ADD_FAILURE() << "Hochschild oracle is not a complex";
    }
  }
  return n2 - static_cast<int>(rank<Rational>(d2)) - static_cast<int>(rank<Rational>(d1));
}

// (xy)z = x(yz) on basis triples, multiplying out coefficient vectors.
bool associative_by_hand(const FiniteAlgebraData& X) {
  const int d = X.dimension;
  auto mult = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
    std::vector<Rational> out(static_cast<std::size_t>(d), Rational(0));
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int o = 0; o < d; ++o) out[static_cast<std::size_t>(o)] += x[static_cast<std::size_t>(a)] * y[static_cast<std::size_t>(b)] * X.product(a, b, o);
    return out;
  };
  auto unit = [&](int i) {
    std::vector<Rational> v(static_cast<std::size_t>(d), Rational(0));
    v[static_cast<std::size_t>(i)] = 1;
    return v;
  };
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        if (mult(mult(unit(a), unit(b)), unit(c)) != mult(unit(a), mult(unit(b), unit(c)))) return false;
  return true;
}

std::vector<FiniteAlgebraData> associative_examples() {
  return {diagonal_algebra(1), diagonal_algebra(2), dual_numbers_algebra(), left_ideal(), zero_algebra(2)};
}

}  // namespace

TEST(Convolution, Dimensions) {
  auto c = build_convolution(diagonal_algebra(1), 2);
  EXPECT_EQ(c.piece_dimensions, (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(c.filtered.space->size(), 2u);
  c = build_convolution(diagonal_algebra(2), 3);
  EXPECT_EQ(c.piece_dimensions, (std::vector<std::size_t>{4, 8, 16, 32}));
  EXPECT_EQ(c.quotient_degree1_dims, (std::vector<std::size_t>{0, 8, 8, 8}));
  EXPECT_EQ(c.filtered.space->index_of("(e1 e2->e1)"), c.filtered.space->index_of(c.cochain_id({0, 1}, 0)));
  EXPECT_EQ((*c.filtered.space)[c.filtered.space->index_of("(e1 e2->e1)")].weight, 1);
}

TEST(Convolution, Errors) {
  EXPECT_THROW(build_convolution(diagonal_algebra(2), 1), StructuralError);
  auto graded = diagonal_algebra(2);
  graded.degrees = {0, 1};
  EXPECT_THROW(build_convolution(graded, 2), UnsupportedError);
  auto bad = diagonal_algebra(2);
  bad.mu.pop_back();
  EXPECT_THROW(build_convolution(bad, 2), StructuralError);
  EXPECT_THROW(build_convolution(diagonal_algebra(3), 4, 500), ResourceError);
  EXPECT_THROW(deformation_pipeline(build_convolution([] {
                 auto X = make_algebra_data("nonassoc", 2);
                 at(X, 0, 0, 1) = 1;
                 at(X, 1, 0, 0) = 1;
                 return X;
               }(), 2), 1),
               StructuralError);
}

TEST(Convolution, IsFilteredDgLie) {
  for (int d = 1; d <= 2; ++d) {
    for (int N = 2; N <= 3; ++N) {
      auto c = build_convolution(diagonal_algebra(d), N);
      EXPECT_TRUE(c.filtered.is_dg_lie());
      EXPECT_TRUE(verify_structure(c.filtered, 3).ok()) << d << " " << N;
      EXPECT_TRUE(check_filtration(c.filtered).ok()) << d << " " << N;
      // Hom(X, X) sits in weight 1 only nominally, so the full algebra is checked without weights.
      EXPECT_TRUE(verify_structure(c.full, 3, false).ok()) << d << " " << N;
    }
  }
}

// [f, g] on two explicit cochains of K^1: f = g = mu gives 2 mu o mu.
TEST(Convolution, BracketOfProductWithItself) {
  auto c = build_convolution(diagonal_algebra(1), 2);
  const auto& s = *c.filtered.space;
  const Vector mu = Vector::unit(s.index_of("(e1 e1->e1)"));
  // mu o mu = mu(mu(a, b), c) - mu(a, mu(b, c)) = 0 on K.
  EXPECT_TRUE(lie_bracket(c.filtered, mu, mu).is_zero());
  auto d = build_convolution(dual_numbers_algebra(), 2);
  const auto& sd = *d.filtered.space;
  const Vector f = Vector::unit(sd.index_of("(e e->1)"));
  // f o f: f(f(a, b), c) - f(a, f(b, c)); f(e, e) = 1 never feeds back into f.
  EXPECT_TRUE(lie_bracket(d.filtered, f, f).is_zero());
  const Vector g = Vector::unit(sd.index_of("(1 1->e)"));
  const Vector h = Vector::unit(sd.index_of("(e 1->1)"));
  // [g, h] = g o h + h o g; g o h = (e,1,1->e) + ... with signs (-1)^i.
  Vector expected;
  expected.add(sd.index_of("(e 1 1->e)"), 1);
  expected.add(sd.index_of("(1 e 1->e)"), -1);
  expected.add(sd.index_of("(1 1 1->1)"), 1);
  EXPECT_EQ(lie_bracket(d.filtered, g, h), expected);
}

TEST(StructureMC, ZeroAndAssociativeProducts) {
  for (const auto& X : associative_examples()) {
    for (int N = 2; N <= 3; ++N) {
      auto r = structure_as_mc(build_convolution(X, N));
      EXPECT_TRUE(r.is_mc) << X.name;
      EXPECT_TRUE(r.associative) << X.name;
      EXPECT_TRUE(r.residual_matches_associator) << X.name;
    }
  }
}

TEST(StructureMC, NonAssociativeResidualIsAssociator) {
  // e1 e1 = e2, e2 e1 = e1: (e1 e1) e1 = e1 but e1 (e1 e1) = 0.
  auto X = make_algebra_data("nonassoc", 2);
  at(X, 0, 0, 1) = 1;
  at(X, 1, 0, 0) = 1;
  auto c = build_convolution(X, 2);
  auto r = structure_as_mc(c);
  EXPECT_FALSE(r.associative);
  EXPECT_FALSE(r.is_mc);
  EXPECT_TRUE(r.residual_matches_associator);
  EXPECT_EQ(r.residual.coeff(c.filtered.space->index_of("(e1 e1 e1->e1)")), Rational(1));
  const auto defect = associator_defect(X);
  Vector expected;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int e = 0; e < 2; ++e)
        for (int o = 0; o < 2; ++o)
          expected.add(c.filtered.space->index_of(c.cochain_id({a, b, e}, o)),
                       defect[static_cast<std::size_t>(((a * 2 + b) * 2 + e) * 2 + o)]);
  EXPECT_EQ(r.residual, expected);
}

// MC <=> associative on random products.
TEST(StructureMC, RandomProducts) {
  std::mt19937 rng(2718);
  std::uniform_int_distribution<int> coin(0, 3);
  std::uniform_int_distribution<int> val(-1, 1);
  int associative = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto X = make_algebra_data("random", 2);
    if (trial % 4 == 0) {
      // a random basis change of a known associative algebra
      const auto base = associative_examples()[static_cast<std::size_t>(trial / 4) % 4 + 1];
      Rational p = val(rng), q = 1, r = val(rng);
      if (p == 0) p = 1;
      // triangular change of basis
      const Rational m[2][2] = {{p, r}, {0, q}};
      const Rational inv[2][2] = {{1 / p, -r / (p * q)}, {0, 1 / q}};
      auto Y = make_algebra_data("random", 2);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int o = 0; o < 2; ++o) {
            Rational v = 0;
            for (int i = 0; i < 2; ++i)
              for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) v += m[a][i] * m[b][j] * base.product(i, j, k) * inv[k][o];
            at(Y, a, b, o) = v;
          }
      X = Y;
    } else {
      for (auto& e : X.mu) e = coin(rng) == 0 ? Rational(val(rng)) : Rational(0);
    }
    auto cc = build_convolution(X, 2);
    auto r = structure_as_mc(cc);
    EXPECT_EQ(r.is_mc, r.associative) << trial;
    EXPECT_EQ(r.associative, associative_by_hand(X)) << trial;
    EXPECT_TRUE(r.residual_matches_associator) << trial;
    associative += r.associative ? 1 : 0;
  }
  EXPECT_GE(associative, 50);
  EXPECT_LT(associative, 200);
}

// exp(xi t) acting on mu over the dual numbers is conjugation by 1 + xi t.
TEST(Gauge, OrderOneIsConjugation) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> val(-2, 2);
  for (const auto& X : associative_examples()) {
    if (X.dimension < 2) continue;
    auto c = build_convolution(X, 2);
    const auto& s = *c.full.space;
    auto e = extend_scalars(c.full, dual_numbers(), false);
    const int d = X.dimension;
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Rational> xi(static_cast<std::size_t>(d * d));  // xi(e_a) = sum xi[a d + o] e_o
      Vector xv;
      for (int a = 0; a < d; ++a)
        for (int o = 0; o < d; ++o) {
          xi[static_cast<std::size_t>(a * d + o)] = val(rng);
          xv.add(s.index_of(c.cochain_id({a}, o)), xi[static_cast<std::size_t>(a * d + o)]);
        }
      const Vector mu = c.mu_element(s);
      const Vector moved = gauge_act(e.algebra, e.tensor(xv, 1), e.tensor(mu, 0));
      EXPECT_EQ(e.component(moved, 0), mu);
      Vector expected;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          for (int o = 0; o < d; ++o) {
            Rational v = 0;
            for (int m = 0; m < d; ++m) {
              v += X.product(a, b, m) * xi[static_cast<std::size_t>(m * d + o)];
              v -= xi[static_cast<std::size_t>(a * d + m)] * X.product(m, b, o);
              v -= xi[static_cast<std::size_t>(b * d + m)] * X.product(a, m, o);
            }
            expected.add(s.index_of(c.cochain_id({a, b}, o)), v);
          }
      EXPECT_EQ(e.component(moved, 1), expected) << X.name;
    }
  }
}

TEST(Pipeline, TangentIsSecondHochschildCohomology) {
  for (const auto& X : associative_examples()) {
    auto r = deformation_pipeline(build_convolution(X, 2), 2);
    EXPECT_EQ(r.tangent.h0_tangent, hochschild_h2(X)) << X.name;
    EXPECT_EQ(r.tangent.h1_twisted, r.tangent.h0_tangent) << X.name;
  }
  EXPECT_EQ(hochschild_h2(diagonal_algebra(2)), 0);
  EXPECT_EQ(hochschild_h2(dual_numbers_algebra()), 1);
}

TEST(Pipeline, SeparableAlgebraIsRigid) {
  auto r = deformation_pipeline(build_convolution(diagonal_algebra(2), 3), 2);
  EXPECT_EQ(r.tangent.h0_tangent, 0);
  EXPECT_TRUE(r.lifts.traces.empty());
}

TEST(Pipeline, DualNumbersDeformation) {
  auto r = deformation_pipeline(build_convolution(dual_numbers_algebra(), 3), 2);
  ASSERT_EQ(r.lifts.traces.size(), 1u);
  // e^2 = s is unobstructed: the class lifts through order 2 and beyond.
  EXPECT_GE(r.lifts.traces[0].reached_order, 2);
  EXPECT_FALSE(r.lifts.traces[0].obstruction.has_value());
}
