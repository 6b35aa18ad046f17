#pragma once

// Small hand-built algebras shared by the unit tests.

#include "linf/linf_core.hpp"

#include <string>
#include <utility>
#include <vector>

namespace testalg {

using linf::BasisElement;
using linf::LInftyAlgebra;
using linf::Rational;
using linf::Vector;

struct Entry {
  std::vector<std::string> inputs;
  std::vector<std::pair<std::string, Rational>> output;
};

inline Rational q(long p, long d = 1) { return Rational(p) / Rational(d); }

inline LInftyAlgebra build(std::vector<BasisElement> basis, int max_arity, const std::vector<Entry>& entries) {
  LInftyAlgebra g(linf::make_space(std::move(basis)), max_arity);
  for (const auto& e : entries) {
    linf::Tuple t;
    for (const auto& id : e.inputs) t.push_back(g.space->index_of(id));
    g.set_bracket(t, linf::vector_from_ids(*g.space, e.output));
  }
  return g;
}

inline Vector vec(const LInftyAlgebra& g, const std::vector<std::pair<std::string, Rational>>& terms) {
  return linf::vector_from_ids(*g.space, terms);
}

inline LInftyAlgebra abelian() {
  return build({{"a", 0, 1}, {"b", 1, 1}, {"c", 1, 1}, {"e", 2, 1}}, 2, {{{"a"}, {{"b", 1}}}});
}

inline LInftyAlgebra nil2() { return build({{"x", 1, 1}, {"y", 2, 2}}, 2, {{{"x", "x"}, {{"y", 1}}}}); }

// Degree-0 Heisenberg algebra with a degree-1 module.
inline LInftyAlgebra heis0() {
  return build({{"p", 0, 1}, {"q", 0, 1}, {"z", 0, 2}, {"u", 1, 1}, {"v", 1, 2}}, 2,
               {{{"p", "q"}, {{"z", 1}}}, {{"p", "u"}, {{"v", 1}}}, {{"q"}, {{"u", 1}}}, {{"z"}, {{"v", 1}}}});
}

// phi = x + z is Maurer-Cartan; d_phi x = y, d_phi z = -y/2, d_phi e = -u.
inline LInftyAlgebra twistable() {
  return build({{"x", 1, 1}, {"z", 1, 1}, {"y", 2, 2}, {"e", 0, 1}, {"u", 1, 2}}, 2,
               {{{"x", "x"}, {{"y", 1}}}, {{"z"}, {{"y", q(-1, 2)}}}, {{"e", "x"}, {{"u", 1}}}});
}

// dg Lie algebra e (deg 0), f (deg 1), [e, f] = f.
inline LInftyAlgebra ef() { return build({{"e", 0, 1}, {"f", 1, 2}}, 2, {{{"e", "f"}, {{"f", 1}}}}); }

// Genuine L-infinity algebra with a nonzero ternary bracket:
// l2(a, b) = p, l2(p, c) = r, l3(a, b, c) = h, l1(h) = r.
inline LInftyAlgebra ternary() {
  return build({{"a", 1, 1}, {"b", 1, 1}, {"c", 1, 1}, {"p", 2, 2}, {"h", 2, 2}, {"r", 3, 3}}, 3,
               {{{"a", "b"}, {{"p", 1}}},
                {{"p", "c"}, {{"r", 1}}},
                {{"a", "b", "c"}, {{"h", 1}}},
                {{"h"}, {{"r", 1}}}});
}

// n4 (strictly upper triangular 4x4, degree 0) acting on a degree-1 copy of
// itself; e_ij has weight j - i. Zero differential.
inline LInftyAlgebra adjoint_n4() {
  std::vector<BasisElement> b;
  auto id = [](const char* p, int i, int j) { return std::string(p) + std::to_string(i) + std::to_string(j); };
  for (const char* p : {"e", "m"}) {
    for (int i = 1; i <= 4; ++i) {
      for (int j = i + 1; j <= 4; ++j) b.push_back({id(p, i, j), p[0] == 'e' ? 0 : 1, j - i});
    }
  }
  std::vector<Entry> entries;
  for (int i = 1; i <= 4; ++i) {
    for (int j = i + 1; j <= 4; ++j) {
      for (int l = j + 1; l <= 4; ++l) {
        // [e_ij, e_jl] = e_il, [e_ij, m_jl] = m_il, [m_ij, e_jl] = m_il
        entries.push_back({{id("e", i, j), id("e", j, l)}, {{id("e", i, l), 1}}});
        entries.push_back({{id("e", i, j), id("m", j, l)}, {{id("m", i, l), 1}}});
        entries.push_back({{id("m", i, j), id("e", j, l)}, {{id("m", i, l), 1}}});
      }
    }
  }
  return build(std::move(b), 2, entries);
}

// g with extra basis elements and extra bracket entries; the old entries are kept.
inline LInftyAlgebra direct_sum(const LInftyAlgebra& g, const std::vector<BasisElement>& extra,
                                const std::vector<Entry>& entries) {
  auto basis = g.space->elements();
  basis.insert(basis.end(), extra.begin(), extra.end());
  LInftyAlgebra out(linf::make_space(basis), g.max_arity());
  for (int k = 1; k <= g.max_arity(); ++k) {
    for (const auto& [t, v] : g.entries(k)) out.set_bracket(t, v);
  }
  for (const auto& e : entries) {
    linf::Tuple t;
    for (const auto& id : e.inputs) t.push_back(out.space->index_of(id));
    out.set_bracket(t, linf::vector_from_ids(*out.space, e.output));
  }
  return out;
}

// g plus a central acyclic pair (w in degree 0, dw in degree 1, delta w = dw), weight 1.
inline LInftyAlgebra with_acyclic(const LInftyAlgebra& g) {
  return direct_sum(g, {{"w", 0, 1}, {"dw", 1, 1}}, {{{"w"}, {{"dw", 1}}}});
}

}  // namespace testalg
