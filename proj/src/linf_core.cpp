#include "linf/linf_core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace linf {

namespace {

bool odd(int d) { return (d % 2) != 0; }

// Sign factor for crossing two elements of the given degrees.
int crossing_sign(int a, int b, bool antisymmetric) {
  const int s = (odd(a) && odd(b)) ? -1 : 1;
  return antisymmetric ? -s : s;
}

int permutation_sign(const std::vector<std::size_t>& perm, const std::vector<int>& degrees, bool antisymmetric) {
  if (perm.size() != degrees.size()) throw StructuralError("permutation and degree list differ in length");
  int sign = 1;
  for (std::size_t j = 0; j < perm.size(); ++j) {
    for (std::size_t l = j + 1; l < perm.size(); ++l) {
      if (perm[j] > perm[l]) sign *= crossing_sign(degrees[perm[j]], degrees[perm[l]], antisymmetric);
    }
  }
  return sign;
}

// Sorts in place, returning the sign of the sorting permutation.
int sort_with_sign(const GradedSpace& space, Tuple& t, bool antisymmetric, int degree_offset) {
  int sign = 1;
  for (std::size_t i = 1; i < t.size(); ++i) {
    for (std::size_t j = i; j > 0 && t[j - 1] > t[j]; --j) {
      sign *= crossing_sign(space[t[j - 1]].degree + degree_offset, space[t[j]].degree + degree_offset, antisymmetric);
      std::swap(t[j - 1], t[j]);
    }
  }
  return sign;
}

// Repeated element of the given parity after sorting.
bool has_repeat_of_parity(const GradedSpace& space, const Tuple& sorted, bool odd_parity, int degree_offset) {
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1] && odd(space[sorted[i]].degree + degree_offset) == odd_parity) return true;
  }
  return false;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<bool>&)>& f) {
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    f(pick);
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

// Koszul sign of moving the picked positions to the front, keeping relative order.
int unshuffle_sign(const std::vector<int>& degrees, const std::vector<bool>& pick, bool antisymmetric) {
  int sign = 1;
  for (std::size_t s = 0; s < pick.size(); ++s) {
    if (!pick[s]) continue;
    for (std::size_t c = 0; c < s; ++c) {
      if (!pick[c]) sign *= crossing_sign(degrees[c], degrees[s], antisymmetric);
    }
  }
  return sign;
}

Vector scaled(const Vector& v, int sign) {
  if (sign == 1) return v;
  return Rational(sign) * v;
}

}  // namespace

int koszul_sign(const std::vector<std::size_t>& perm, const std::vector<int>& degrees) {
  return permutation_sign(perm, degrees, true);
}

int symmetric_koszul_sign(const std::vector<std::size_t>& perm, const std::vector<int>& degrees) {
  return permutation_sign(perm, degrees, false);
}

std::pair<Tuple, int> canonicalize(const GradedSpace& space, Tuple inputs) {
  const int sign = sort_with_sign(space, inputs, true, 0);
  return {std::move(inputs), sign};
}

void for_each_multiset(std::size_t n, int k, const std::function<void(const Tuple&)>& f) {
  if (k <= 0 || n == 0) return;
  Tuple t(static_cast<std::size_t>(k), 0);
  while (true) {
    f(t);
    int pos = k - 1;
    while (pos >= 0 && t[static_cast<std::size_t>(pos)] == n - 1) --pos;
    if (pos < 0) return;
    const Index next = t[static_cast<std::size_t>(pos)] + 1;
    for (auto i = static_cast<std::size_t>(pos); i < t.size(); ++i) t[i] = next;
  }
}

// ---------------------------------------------------------------------------

LInftyAlgebra::LInftyAlgebra(SpacePtr s, int max_arity) : space(std::move(s)) {
  if (max_arity < 1) throw StructuralError("maximal arity must be at least 1");
  brackets.max_arity = max_arity;
  brackets.by_arity.resize(static_cast<std::size_t>(max_arity));
}

void LInftyAlgebra::set_bracket(const Tuple& inputs, const Vector& value) {
  const int k = static_cast<int>(inputs.size());
  if (k < 1 || k > max_arity()) {
    throw StructuralError("bracket arity " + std::to_string(k) + " outside 1.." + std::to_string(max_arity()));
  }
  for (Index i : inputs) {
    if (i >= space->size()) throw StructuralError("bracket input outside the basis");
  }
  for (const auto& [i, c] : value) {
    if (i >= space->size()) throw StructuralError("bracket output outside the basis");
  }
  auto [canon, sign] = canonicalize(*space, inputs);
  auto& table = brackets.by_arity[static_cast<std::size_t>(k - 1)];
  Vector v = scaled(value, sign);
  if (v.is_zero()) {
    table.erase(canon);
  } else {
    table[canon] = std::move(v);
  }
}

void LInftyAlgebra::add_bracket(const Tuple& inputs, const Vector& value) {
  auto [canon, sign] = canonicalize(*space, inputs);
  Vector current = canon.size() <= static_cast<std::size_t>(max_arity()) ? bracket_on_basis(*this, canon) : Vector{};
  current.add_scaled(value, Rational(sign));
  set_bracket(canon, current);
}

bool LInftyAlgebra::is_dg_lie() const {
  for (int k = 3; k <= max_arity(); ++k) {
    if (!entries(k).empty()) return false;
  }
  return true;
}

Vector bracket_on_basis(const LInftyAlgebra& g, const Tuple& inputs) {
  const int k = static_cast<int>(inputs.size());
  if (k < 1 || k > g.max_arity()) return {};
  auto [canon, sign] = canonicalize(*g.space, inputs);
  const auto& table = g.entries(k);
  auto it = table.find(canon);
  if (it == table.end()) return {};
  return scaled(it->second, sign);
}

namespace {

void expand(const LInftyAlgebra& g, const std::vector<Vector>& args, std::size_t pos, Tuple& t, const Rational& coeff,
            Vector& out) {
  if (pos == args.size()) {
    out.add_scaled(bracket_on_basis(g, t), coeff);
    return;
  }
  for (const auto& [i, c] : args[pos]) {
    t[pos] = i;
    expand(g, args, pos + 1, t, coeff * c, out);
  }
}

}  // namespace

Vector eval_bracket(const LInftyAlgebra& g, const std::vector<Vector>& args) {
  const int k = static_cast<int>(args.size());
  if (k < 1 || k > g.max_arity()) {
    throw StructuralError("bracket l" + std::to_string(k) + " undefined (maximal arity " +
                          std::to_string(g.max_arity()) + ")");
  }
  Vector out;
  Tuple t(args.size());
  expand(g, args, 0, t, Rational(1), out);
  return out;
}

LinearMap differential(const LInftyAlgebra& g) {
  LinearMap d = zero_map(g.space, g.space, 1);
  for (const auto& [t, v] : g.entries(1)) d.columns[t[0]] = v;
  return d;
}

Vector lie_bracket(const LInftyAlgebra& g, const Vector& a, const Vector& b) {
  if (g.max_arity() < 2) return {};
  return eval_bracket(g, {a, b});
}

Vector jacobi_residual(const LInftyAlgebra& g, const Tuple& args) {
  const auto k = args.size();
  const GradedSpace& space = *g.space;
  std::vector<int> degrees(k);
  for (std::size_t i = 0; i < k; ++i) degrees[i] = space[args[i]].degree;
  Vector out;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t j = k - i + 1;
    if (i > static_cast<std::size_t>(g.max_arity()) || j > static_cast<std::size_t>(g.max_arity())) continue;
    if (g.entries(static_cast<int>(i)).empty() || g.entries(static_cast<int>(j)).empty()) continue;
    for_each_subset(k, i, [&](const std::vector<bool>& pick) {
      Tuple inner, rest;
      for (std::size_t p = 0; p < k; ++p) (pick[p] ? inner : rest).push_back(args[p]);
      const Vector first = bracket_on_basis(g, inner);
      if (first.is_zero()) return;
      const int sign = (odd(static_cast<int>(i)) ? -1 : 1) * unshuffle_sign(degrees, pick, true);
      Tuple t(j);
      std::copy(rest.begin(), rest.end(), t.begin() + 1);
      for (const auto& [idx, c] : first) {
        t[0] = idx;
        out.add_scaled(bracket_on_basis(g, t), c * sign);
      }
    });
  }
  return out;
}

std::string describe_tuple(const GradedSpace& space, const std::string& name, const Tuple& t) {
  std::ostringstream os;
  os << name << "(";
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? ", " : "") << space[t[i]].id;
  os << ")";
  return os.str();
}

StructureReport check_entries(const LInftyAlgebra& g, bool check_weights) {
  StructureReport report;
  const GradedSpace& space = *g.space;
  for (int k = 1; k <= g.max_arity(); ++k) {
    for (const auto& [t, v] : g.entries(k)) {
      ++report.tuples_checked;
      const std::string w = describe_tuple(space, "l" + std::to_string(k), t);
      int degree = 2 - k, max_in = 0;
      for (Index i : t) {
        degree += space[i].degree;
        max_in = std::max(max_in, space[i].weight);
      }
      for (const auto& [o, c] : v) {
        if (space[o].degree != degree) {
          report.violations.push_back({"degree", w,
                                       "term " + space[o].id + " has degree " + std::to_string(space[o].degree) +
                                           ", expected " + std::to_string(degree)});
        }
      }
      if (check_weights) {
        const int need = k == 1 ? max_in : max_in + 1;
        const int got = min_weight(space, v);
        if (got < need) {
          report.violations.push_back(
              {"weight", w, "output weight " + std::to_string(got) + " below " + std::to_string(need)});
        }
      }
      if (has_repeat_of_parity(space, t, false, 0)) {
        report.violations.push_back({"antisymmetry", w, "repeated even-degree input with nonzero value"});
      }
    }
  }
  return report;
}

StructureReport verify_structure(const LInftyAlgebra& g, int arity_bound, bool check_weights) {
  StructureReport report = check_entries(g, check_weights);
  const GradedSpace& space = *g.space;
  const auto degrees = space.degrees();
  auto degree_present = [&](int d) { return std::binary_search(degrees.begin(), degrees.end(), d); };
  const int useful = 2 * g.max_arity() - 1;
  for (int k = 1; k <= std::min(arity_bound, useful); ++k) {
    for_each_multiset(space.size(), k, [&](const Tuple& t) {
      int degree = 3 - k;
      for (Index i : t) degree += space[i].degree;
      if (!degree_present(degree)) return;
      ++report.tuples_checked;
      const Vector r = jacobi_residual(g, t);
      if (!r.is_zero()) {
        report.violations.push_back({"jacobi", describe_tuple(space, "J" + std::to_string(k), t), format_vector(space, r)});
      }
    });
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

int suspension_sign(const GradedSpace& base, const Tuple& t) {
  const auto k = t.size();
  int exponent = static_cast<int>((k - 1) * (k - 2) / 2);
  for (std::size_t i = 0; i < k; ++i) exponent += static_cast<int>(k - 1 - i) * base[t[i]].degree;
  return odd(exponent) ? -1 : 1;
}

SpacePtr suspend(const GradedSpace& base) {
  std::vector<BasisElement> b;
  b.reserve(base.size());
  for (const auto& e : base.elements()) b.push_back({"s" + e.id, e.degree - 1, e.weight});
  return make_space(std::move(b));
}

const Vector* component(const CoderivationPresentation& q, const Tuple& word) {
  if (word.empty() || word.size() > static_cast<std::size_t>(q.max_arity)) return nullptr;
  const auto& table = q.components[word.size() - 1];
  auto it = table.find(word);
  return it == table.end() ? nullptr : &it->second;
}

}  // namespace

CoderivationPresentation coderivation_from_brackets(const LInftyAlgebra& g) {
  CoderivationPresentation q;
  q.base = g.space;
  q.suspended = suspend(*g.space);
  q.max_arity = g.max_arity();
  q.components.resize(static_cast<std::size_t>(q.max_arity));
  for (int k = 1; k <= g.max_arity(); ++k) {
    for (const auto& [t, v] : g.entries(k)) {
      if (has_repeat_of_parity(*q.suspended, t, true, 0)) continue;  // vanishes in the symmetric coalgebra
      q.components[static_cast<std::size_t>(k - 1)][t] = scaled(v, suspension_sign(*g.space, t));
    }
  }
  return q;
}

LInftyAlgebra brackets_from_coderivation(const CoderivationPresentation& q) {
  LInftyAlgebra g(q.base, q.max_arity);
  for (int k = 1; k <= q.max_arity; ++k) {
    for (const auto& [w, v] : q.components[static_cast<std::size_t>(k - 1)]) {
      g.set_bracket(w, scaled(v, suspension_sign(*q.base, w)));
    }
  }
  return g;
}

WordCombination multiply_words(const GradedSpace& space, const Tuple& left, const Tuple& right) {
  Tuple w = left;
  w.insert(w.end(), right.begin(), right.end());
  const int sign = sort_with_sign(space, w, false, 0);
  if (has_repeat_of_parity(space, w, true, 0)) return {};
  return {{w, Rational(sign)}};
}

WordCombination apply_coderivation(const CoderivationPresentation& q, const Tuple& word) {
  const GradedSpace& v = *q.suspended;
  WordCombination out;
  if (has_repeat_of_parity(v, word, true, 0)) return out;
  const auto n = word.size();
  std::vector<int> degrees(n);
  for (std::size_t i = 0; i < n; ++i) degrees[i] = v[word[i]].degree;
  for (std::size_t k = 1; k <= std::min(n, static_cast<std::size_t>(q.max_arity)); ++k) {
    for_each_subset(n, k, [&](const std::vector<bool>& pick) {
      Tuple first, rest;
      for (std::size_t p = 0; p < n; ++p) (pick[p] ? first : rest).push_back(word[p]);
      const Vector* image = component(q, first);
      if (!image) return;
      const int sign = unshuffle_sign(degrees, pick, false);
      for (const auto& [g, c] : *image) {
        for (const auto& [w, s] : multiply_words(v, {g}, rest)) {
          Rational& slot = out[w];
          slot += c * s * sign;
          if (is_zero(slot)) out.erase(w);
        }
      }
    });
  }
  return out;
}

WordCombination apply_coderivation(const CoderivationPresentation& q, const WordCombination& words) {
  WordCombination out;
  for (const auto& [w, c] : words) {
    for (const auto& [w2, c2] : apply_coderivation(q, w)) {
      Rational& slot = out[w2];
      slot += c * c2;
      if (is_zero(slot)) out.erase(w2);
    }
  }
  return out;
}

std::string format_word(const GradedSpace& space, const Tuple& word) {
  std::string s;
  for (std::size_t i = 0; i < word.size(); ++i) s += (i ? " " : "") + space[word[i]].id;
  return s;
}

namespace {

// Generator component of Q(Q(word)). Q^2 is a coderivation, so it vanishes
// on all words of length <= n exactly when this projection does.
Vector projected_q_squared(const CoderivationPresentation& q, const Tuple& word) {
  const GradedSpace& v = *q.suspended;
  Vector out;
  const auto n = word.size();
  std::vector<int> degrees(n);
  for (std::size_t i = 0; i < n; ++i) degrees[i] = v[word[i]].degree;
  for (std::size_t k = 1; k <= std::min(n, static_cast<std::size_t>(q.max_arity)); ++k) {
    if (n - k + 1 > static_cast<std::size_t>(q.max_arity)) continue;
    for_each_subset(n, k, [&](const std::vector<bool>& pick) {
      Tuple first, rest;
      for (std::size_t p = 0; p < n; ++p) (pick[p] ? first : rest).push_back(word[p]);
      const Vector* image = component(q, first);
      if (!image) return;
      const int sign = unshuffle_sign(degrees, pick, false);
      for (const auto& [g, c] : *image) {
        for (const auto& [w, s] : multiply_words(v, {g}, rest)) {
          if (const Vector* outer = component(q, w)) out.add_scaled(*outer, c * s * sign);
        }
      }
    });
  }
  return out;
}

}  // namespace

ChevalleyEilenbergResult chevalley_eilenberg(const LInftyAlgebra& g, int word_length_bound) {
  ChevalleyEilenbergResult r;
  r.q = coderivation_from_brackets(g);
  r.word_length_bound = word_length_bound;
  const GradedSpace& v = *r.q.suspended;
  const auto degrees = v.degrees();
  auto degree_present = [&](int d) { return std::binary_search(degrees.begin(), degrees.end(), d); };
  for (int n = 1; n <= std::min(word_length_bound, 2 * r.q.max_arity - 1); ++n) {
    for_each_multiset(v.size(), n, [&](const Tuple& w) {
      if (has_repeat_of_parity(v, w, true, 0)) return;
      int degree = 2;
      for (Index i : w) degree += v[i].degree;
      if (!degree_present(degree)) return;
      ++r.words_checked;
      const Vector res = projected_q_squared(r.q, w);
      if (!res.is_zero()) r.q_squared.push_back({"q_squared", format_word(v, w), format_vector(v, res)});
    });
  }
  r.dual_differential.resize(v.size());
  for (const auto& table : r.q.components) {
    for (const auto& [w, image] : table) {
      for (const auto& [j, c] : image) r.dual_differential[j][w] = c;
    }
  }
  return r;
}

}  // namespace linf
