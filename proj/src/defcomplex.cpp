#include "linf/defcomplex.hpp"

#include "linf/errors.hpp"
#include "linf/filtered.hpp"

#include <algorithm>
#include <functional>

namespace linf {

namespace {

void validate(const FiniteAlgebraData& X) {
  const auto d = static_cast<std::size_t>(X.dimension);
  if (X.dimension < 1) throw StructuralError("algebra dimension must be positive");
  if (X.basis.size() != d) throw StructuralError("basis has " + std::to_string(X.basis.size()) + " names, expected " + std::to_string(d));
  if (X.mu.size() != d * d * d) throw StructuralError("structure constants need d^3 entries");
  if (std::any_of(X.degrees.begin(), X.degrees.end(), [](int g) { return g != 0; })) {
    throw UnsupportedError("the convolution algebra is built for X concentrated in degree 0");
  }
  if (!X.degrees.empty() && X.degrees.size() != d) throw StructuralError("one degree per basis element is needed");
}

struct Cochain {
  std::vector<int> inputs;
  int output = 0;
};

class Layout {
 public:
  Layout(int d, int s_min, int N) : d_(d), s_min_(s_min) {
    std::size_t offset = 0;
    for (int s = s_min; s <= N; ++s) {
      offsets_.push_back(offset);
      std::size_t count = static_cast<std::size_t>(d);
      for (int k = 0; k <= s; ++k) count *= static_cast<std::size_t>(d);
      offset += count;
    }
    size_ = offset;
  }
  std::size_t size() const { return size_; }
  Index index(const Cochain& c) const {
    const int s = static_cast<int>(c.inputs.size()) - 1;
    std::size_t code = 0;
    for (int i : c.inputs) code = code * static_cast<std::size_t>(d_) + static_cast<std::size_t>(i);
    return offsets_[static_cast<std::size_t>(s - s_min_)] + code * static_cast<std::size_t>(d_) + static_cast<std::size_t>(c.output);
  }
  Cochain cochain(Index i) const {
    std::size_t k = offsets_.size() - 1;
    while (offsets_[k] > i) --k;
    const int s = static_cast<int>(k) + s_min_;
    std::size_t rest = i - offsets_[k];
    Cochain c;
    c.output = static_cast<int>(rest % static_cast<std::size_t>(d_));
    rest /= static_cast<std::size_t>(d_);
    c.inputs.assign(static_cast<std::size_t>(s + 1), 0);
    for (int j = s; j >= 0; --j) {
      c.inputs[static_cast<std::size_t>(j)] = static_cast<int>(rest % static_cast<std::size_t>(d_));
      rest /= static_cast<std::size_t>(d_);
    }
    return c;
  }

 private:
  int d_;
  int s_min_;
  std::vector<std::size_t> offsets_;
  std::size_t size_ = 0;
};

// f o g on basis cochains, as (sign, cochain) terms.
std::vector<std::pair<int, Cochain>> compose(const Cochain& f, const Cochain& g) {
  std::vector<std::pair<int, Cochain>> out;
  const int q = static_cast<int>(g.inputs.size()) - 1;
  for (std::size_t i = 0; i < f.inputs.size(); ++i) {
    if (f.inputs[i] != g.output) continue;
    Cochain c;
    c.output = f.output;
    c.inputs.insert(c.inputs.end(), f.inputs.begin(), f.inputs.begin() + static_cast<std::ptrdiff_t>(i));
    c.inputs.insert(c.inputs.end(), g.inputs.begin(), g.inputs.end());
    c.inputs.insert(c.inputs.end(), f.inputs.begin() + static_cast<std::ptrdiff_t>(i) + 1, f.inputs.end());
    out.push_back({(static_cast<int>(i) * q) % 2 ? -1 : 1, std::move(c)});
  }
  return out;
}

LInftyAlgebra build_algebra(const FiniteAlgebraData& X, int s_min, int N, std::size_t budget,
                            const std::function<std::string(const std::vector<int>&, int)>& id) {
  const Layout layout(X.dimension, s_min, N);
  if (layout.size() > budget) {
    throw ResourceError("convolution algebra needs " + std::to_string(layout.size()) + " basis elements, budget is " +
                        std::to_string(budget));
  }
  std::vector<BasisElement> basis;
  basis.reserve(layout.size());
  for (Index i = 0; i < layout.size(); ++i) {
    const Cochain c = layout.cochain(i);
    const int s = static_cast<int>(c.inputs.size()) - 1;
    basis.push_back({id(c.inputs, c.output), s, std::max(s, 1)});
  }
  LInftyAlgebra g(make_space(std::move(basis)), 2);
  for (Index a = 0; a < layout.size(); ++a) {
    const Cochain f = layout.cochain(a);
    const int p = static_cast<int>(f.inputs.size()) - 1;
    for (Index b = a; b < layout.size(); ++b) {
      const Cochain h = layout.cochain(b);
      const int q = static_cast<int>(h.inputs.size()) - 1;
      if (p + q > N) continue;
      Vector v;
      for (const auto& [sign, c] : compose(f, h)) v.add(layout.index(c), Rational(sign));
      const int swap = (p * q) % 2 ? 1 : -1;  // -(-1)^{pq}
      for (const auto& [sign, c] : compose(h, f)) v.add(layout.index(c), Rational(swap * sign));
      if (!v.is_zero()) g.set_bracket({a, b}, v);
    }
  }
  return g;
}

}  // namespace

Rational FiniteAlgebraData::product(int a, int b, int c) const {
  return mu[static_cast<std::size_t>((a * dimension + b) * dimension + c)];
}

FiniteAlgebraData make_algebra_data(std::string name, int d) {
  FiniteAlgebraData X;
  X.name = std::move(name);
  X.dimension = d;
  for (int i = 1; i <= d; ++i) X.basis.push_back("e" + std::to_string(i));
  X.mu.assign(static_cast<std::size_t>(d * d * d), Rational(0));
  return X;
}

FiniteAlgebraData diagonal_algebra(int d) {
  FiniteAlgebraData X = make_algebra_data("K^" + std::to_string(d), d);
  for (int i = 0; i < d; ++i) X.mu[static_cast<std::size_t>((i * d + i) * d + i)] = 1;
  return X;
}

FiniteAlgebraData dual_numbers_algebra() {
  FiniteAlgebraData X = make_algebra_data("K[e]/(e^2)", 2);
  X.basis = {"1", "e"};
  X.mu[(0 * 2 + 0) * 2 + 0] = 1;
  X.mu[(0 * 2 + 1) * 2 + 1] = 1;
  X.mu[(1 * 2 + 0) * 2 + 1] = 1;
  return X;
}

std::vector<Rational> associator_defect(const FiniteAlgebraData& X) {
  validate(X);
  const int d = X.dimension;
  std::vector<Rational> out(static_cast<std::size_t>(d * d * d * d), Rational(0));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) {
        for (int o = 0; o < d; ++o) {
          Rational v = 0;
          for (int m = 0; m < d; ++m) v += X.product(a, b, m) * X.product(m, c, o) - X.product(b, c, m) * X.product(a, m, o);
          out[static_cast<std::size_t>(((a * d + b) * d + c) * d + o)] = v;
        }
      }
    }
  }
  return out;
}

std::string ConvolutionComplex::cochain_id(const std::vector<int>& inputs, int output) const {
  std::string s = "(";
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (i) s += " ";
    s += data.basis[static_cast<std::size_t>(inputs[i])];
  }
  return s + "->" + data.basis[static_cast<std::size_t>(output)] + ")";
}

Vector ConvolutionComplex::mu_element(const GradedSpace& space) const {
  Vector v;
  const int d = data.dimension;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) v.add(space.index_of(cochain_id({a, b}, c)), data.product(a, b, c));
    }
  }
  return v;
}

ConvolutionComplex build_convolution(const FiniteAlgebraData& X, int N, std::size_t budget) {
  validate(X);
  if (N < 2) throw StructuralError("the convolution algebra needs N >= 2");
  ConvolutionComplex c;
  c.data = X;
  if (c.data.degrees.empty()) c.data.degrees.assign(static_cast<std::size_t>(X.dimension), 0);
  c.N = N;
  const auto id = [&c](const std::vector<int>& in, int out) { return c.cochain_id(in, out); };
  c.filtered = build_algebra(X, 1, N, budget, id);
  c.full = build_algebra(X, 0, N, budget, id);
  for (int s = 0; s <= N; ++s) {
    std::size_t n = 0;
    for (const auto& b : c.full.space->elements()) n += b.degree == s ? 1 : 0;
    c.piece_dimensions.push_back(n);
  }
  for (int r = 1; r <= N + 1; ++r) c.quotient_degree1_dims.push_back(truncate(c.filtered, r).space->degree_slice(1).size());
  return c;
}

StructureMCReport structure_as_mc(const ConvolutionComplex& c) {
  StructureMCReport r;
  const GradedSpace& s = *c.filtered.space;
  r.residual = mc_residual(c.filtered, c.mu_element(s));
  r.is_mc = r.residual.is_zero();
  const auto defect = associator_defect(c.data);
  r.associative = std::all_of(defect.begin(), defect.end(), [](const Rational& q) { return is_zero(q); });
  // The residual is mu o mu, whose coefficients are the associator.
  const int d = c.data.dimension;
  Vector expected;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int e = 0; e < d; ++e) {
        for (int o = 0; o < d; ++o) {
          expected.add(s.index_of(c.cochain_id({a, b, e}, o)), defect[static_cast<std::size_t>(((a * d + b) * d + e) * d + o)]);
        }
      }
    }
  }
  r.residual_matches_associator = expected == r.residual;
  return r;
}

DeformationPipelineReport deformation_pipeline(const ConvolutionComplex& c, int max_order) {
  if (max_order < 1) throw StructuralError("max order must be at least 1");
  const auto defect = associator_defect(c.data);
  if (!std::all_of(defect.begin(), defect.end(), [](const Rational& q) { return is_zero(q); })) {
    throw StructuralError(c.data.name + " is not associative");
  }
  const MCElement mu = certify_mc(c.full, c.mu_element(*c.full.space));
  DeformationPipelineReport r;
  r.max_order = max_order;
  r.tangent = tangent_report(c.full, mu);
  r.lifts = lift_deformation(c.full, mu, max_order + 1);
  return r;
}

}  // namespace linf
