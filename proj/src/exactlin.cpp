#include "linf/exactlin.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace linf {

GradedSpace::GradedSpace(std::vector<BasisElement> basis) : basis_(std::move(basis)) {
  for (Index i = 0; i < basis_.size(); ++i) {
    const auto& e = basis_[i];
    if (e.id.empty()) throw StructuralError("basis element with empty identifier");
    if (e.weight < 1) throw StructuralError("basis element " + e.id + " has weight < 1");
    if (!index_.emplace(e.id, i).second) throw StructuralError("duplicate basis identifier " + e.id);
  }
}

std::optional<Index> GradedSpace::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Index GradedSpace::index_of(const std::string& id) const {
  auto i = find(id);
  if (!i) throw StructuralError("unknown basis identifier " + id);
  return *i;
}

std::vector<Index> GradedSpace::degree_slice(int degree) const {
  std::vector<Index> out;
  for (Index i = 0; i < basis_.size(); ++i) {
    if (basis_[i].degree == degree) out.push_back(i);
  }
  return out;
}

std::vector<int> GradedSpace::degrees() const {
  std::set<int> ds;
  for (const auto& e : basis_) ds.insert(e.degree);
  return {ds.begin(), ds.end()};
}

int GradedSpace::max_weight() const {
  int w = 0;
  for (const auto& e : basis_) w = std::max(w, e.weight);
  return w;
}

// ---------------------------------------------------------------------------

Vector Vector::unit(Index i, const Rational& c) {
  Vector v;
  v.add(i, c);
  return v;
}

Rational Vector::coeff(Index i) const {
  auto it = terms_.find(i);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Vector::add(Index i, const Rational& c) {
  if (linf::is_zero(c)) return;
  auto [it, inserted] = terms_.emplace(i, c);
  if (inserted) return;
  it->second += c;
  if (linf::is_zero(it->second)) terms_.erase(it);
}

void Vector::set(Index i, const Rational& c) {
  if (linf::is_zero(c)) {
    terms_.erase(i);
  } else {
    terms_[i] = c;
  }
}

Vector& Vector::operator+=(const Vector& other) {
  for (const auto& [i, c] : other.terms_) add(i, c);
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  for (const auto& [i, c] : other.terms_) add(i, -c);
  return *this;
}

Vector& Vector::operator*=(const Rational& c) {
  if (linf::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [i, x] : terms_) x *= c;
  return *this;
}

void Vector::add_scaled(const Vector& other, const Rational& c) {
  if (linf::is_zero(c)) return;
  for (const auto& [i, x] : other.terms_) add(i, x * c);
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator-(Vector a) { return a *= Rational(-1); }
Vector operator*(const Rational& c, Vector v) { return v *= c; }

std::optional<int> homogeneous_degree(const GradedSpace& space, const Vector& v, int fallback) {
  std::optional<int> d;
  for (const auto& [i, c] : v) {
    const int di = space[i].degree;
    if (d && *d != di) return std::nullopt;
    d = di;
  }
  return d ? d : std::optional<int>(fallback);
}

int min_weight(const GradedSpace& space, const Vector& v) {
  int w = 0;
  for (const auto& [i, c] : v) {
    w = w == 0 ? space[i].weight : std::min(w, space[i].weight);
  }
  return w;
}

Vector weight_component(const GradedSpace& space, const Vector& v, int weight) {
  Vector out;
  for (const auto& [i, c] : v) {
    if (space[i].weight == weight) out.add(i, c);
  }
  return out;
}

Vector vector_from_ids(const GradedSpace& space, const std::vector<std::pair<std::string, Rational>>& terms) {
  Vector v;
  for (const auto& [id, c] : terms) v.add(space.index_of(id), c);
  return v;
}

std::string format_vector(const GradedSpace& space, const Vector& v) {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : v) {
    const bool negative = c.sign() < 0;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    os << to_string(negative ? Rational(-c) : c) << "·" << space[i].id;
    first = false;
  }
  return os.str();
}

QVector to_dense(const Vector& v, const std::vector<Index>& slice) {
  QVector out = QVector::Zero(static_cast<Eigen::Index>(slice.size()));
  for (std::size_t r = 0; r < slice.size(); ++r) out(static_cast<Eigen::Index>(r)) = v.coeff(slice[r]);
  return out;
}

Vector from_dense(const QVector& v, const std::vector<Index>& slice) {
  Vector out;
  for (std::size_t r = 0; r < slice.size(); ++r) out.add(slice[r], v(static_cast<Eigen::Index>(r)));
  return out;
}

// ---------------------------------------------------------------------------

Vector LinearMap::apply(const Vector& v) const {
  Vector out;
  for (const auto& [i, c] : v) {
    if (i >= columns.size()) throw StructuralError("vector index outside the source space");
    out.add_scaled(columns[i], c);
  }
  return out;
}

LinearMap zero_map(SpacePtr source, SpacePtr target, int degree_shift) {
  LinearMap m{source, std::move(target), degree_shift, {}};
  m.columns.resize(source->size());
  return m;
}

LinearMap identity_map(SpacePtr space) {
  LinearMap m{space, space, 0, {}};
  for (Index i = 0; i < space->size(); ++i) m.columns.push_back(Vector::unit(i));
  return m;
}

LinearMap compose(const LinearMap& second, const LinearMap& first) {
  if (first.target->size() != second.source->size()) {
    throw StructuralError("composition of maps with mismatched dimensions");
  }
  LinearMap m{first.source, second.target, first.degree_shift + second.degree_shift, {}};
  m.columns.reserve(first.columns.size());
  for (const auto& col : first.columns) m.columns.push_back(second.apply(col));
  return m;
}

QMatrix slice_matrix(const LinearMap& map, int source_degree) {
  const auto cols = map.source->degree_slice(source_degree);
  const auto rows = map.target->degree_slice(source_degree + map.degree_shift);
  QMatrix m = QMatrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    m.col(static_cast<Eigen::Index>(c)) = to_dense(map.columns[cols[c]], rows);
  }
  return m;
}

QMatrix full_matrix(const LinearMap& map) {
  const auto rows = static_cast<Eigen::Index>(map.target->size());
  QMatrix m = QMatrix::Zero(rows, static_cast<Eigen::Index>(map.columns.size()));
  for (std::size_t c = 0; c < map.columns.size(); ++c) {
    for (const auto& [r, x] : map.columns[c]) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = x;
  }
  return m;
}

std::vector<std::string> check_linear_map(const LinearMap& map, bool filtered) {
  std::vector<std::string> problems;
  if (map.columns.size() != map.source->size()) {
    problems.push_back("column count does not match the source dimension");
    return problems;
  }
  for (Index i = 0; i < map.columns.size(); ++i) {
    const auto& src = (*map.source)[i];
    for (const auto& [r, c] : map.columns[i]) {
      if (r >= map.target->size()) {
        problems.push_back("image of " + src.id + " leaves the target space");
        break;
      }
      const auto& tgt = (*map.target)[r];
      if (tgt.degree != src.degree + map.degree_shift) {
        problems.push_back("image of " + src.id + " has a term " + tgt.id + " of the wrong degree");
      }
      if (filtered && tgt.weight < src.weight) {
        problems.push_back("image of " + src.id + " has a term " + tgt.id + " of lower weight");
      }
    }
  }
  return problems;
}

// ---------------------------------------------------------------------------

SolveResult solve_linear(const LinearMap& map, const Vector& target) {
  for (const auto& [i, c] : target) {
    if (i >= map.target->size()) throw StructuralError("target vector has an index outside the target space");
  }
  std::vector<Index> all_src(map.source->size()), all_tgt(map.target->size());
  for (Index i = 0; i < all_src.size(); ++i) all_src[i] = i;
  for (Index i = 0; i < all_tgt.size(); ++i) all_tgt[i] = i;
  const QMatrix m = full_matrix(map);
  SolveResult out;
  if (auto x = solve<Rational>(m, to_dense(target, all_tgt))) out.solution = from_dense(*x, all_src);
  const QMatrix k = kernel_basis<Rational>(m);
  for (Eigen::Index c = 0; c < k.cols(); ++c) out.kernel.push_back(from_dense(k.col(c), all_src));
  return out;
}

CohomologyResult cohomology(const LinearMap& incoming, const LinearMap& outgoing, int degree) {
  if (incoming.degree_shift != 1 || outgoing.degree_shift != 1) {
    throw StructuralError("cohomology expects differentials of degree +1");
  }
  if (!(*incoming.target == *outgoing.source)) {
    throw StructuralError("incoming map does not land in the source of the outgoing map");
  }
  for (Index i : incoming.source->degree_slice(degree - 1)) {
    if (!outgoing.apply(incoming.columns[i]).is_zero()) {
      const auto& id = (*incoming.source)[i].id;
      throw NotAComplexError("outgoing ∘ incoming is nonzero on " + id, id);
    }
  }
  CohomologyResult h;
  h.degree = degree;
  h.slice = outgoing.source->degree_slice(degree);

  const QMatrix out_m = slice_matrix(outgoing, degree);
  const QMatrix z = kernel_basis<Rational>(out_m);
  for (Eigen::Index c = 0; c < z.cols(); ++c) h.cocycles.push_back(from_dense(z.col(c), h.slice));

  const QMatrix in_m = slice_matrix(incoming, degree - 1);
  const auto b_cols = independent_columns<Rational>(in_m);
  for (auto c : b_cols) h.coboundaries.push_back(from_dense(in_m.col(c), h.slice));

  // Extend the coboundary basis to a cocycle basis; the added columns are the representatives.
  QMatrix joined(static_cast<Eigen::Index>(h.slice.size()),
                 static_cast<Eigen::Index>(h.coboundaries.size()) + z.cols());
  for (std::size_t c = 0; c < h.coboundaries.size(); ++c) {
    joined.col(static_cast<Eigen::Index>(c)) = to_dense(h.coboundaries[c], h.slice);
  }
  for (Eigen::Index c = 0; c < z.cols(); ++c) {
    joined.col(static_cast<Eigen::Index>(h.coboundaries.size()) + c) = z.col(c);
  }
  const auto nb = static_cast<Eigen::Index>(h.coboundaries.size());
  for (auto c : independent_columns<Rational>(joined)) {
    if (c >= nb) h.representatives.push_back(from_dense(joined.col(c), h.slice));
  }
  h.dimension = static_cast<int>(h.representatives.size());
  return h;
}

CohomologyResult cohomology(const LinearMap& differential, int degree) {
  return cohomology(differential, differential, degree);
}

namespace {

QMatrix class_matrix(const CohomologyResult& h) {
  QMatrix m(static_cast<Eigen::Index>(h.slice.size()),
            static_cast<Eigen::Index>(h.coboundaries.size() + h.representatives.size()));
  Eigen::Index c = 0;
  for (const auto& v : h.coboundaries) m.col(c++) = to_dense(v, h.slice);
  for (const auto& v : h.representatives) m.col(c++) = to_dense(v, h.slice);
  return m;
}

void require_in_slice(const CohomologyResult& h, const Vector& v) {
  for (const auto& [i, c] : v) {
    if (!std::binary_search(h.slice.begin(), h.slice.end(), i)) {
      throw StructuralError("vector has a component outside degree " + std::to_string(h.degree));
    }
  }
}

}  // namespace

QVector class_coordinates(const CohomologyResult& h, const Vector& cocycle) {
  require_in_slice(h, cocycle);
  auto x = solve<Rational>(class_matrix(h), to_dense(cocycle, h.slice));
  if (!x) throw StructuralError("vector is not a cocycle");
  return x->tail(static_cast<Eigen::Index>(h.representatives.size()));
}

bool is_coboundary(const CohomologyResult& h, const Vector& v) {
  require_in_slice(h, v);
  QMatrix b(static_cast<Eigen::Index>(h.slice.size()), static_cast<Eigen::Index>(h.coboundaries.size()));
  for (std::size_t c = 0; c < h.coboundaries.size(); ++c) {
    b.col(static_cast<Eigen::Index>(c)) = to_dense(h.coboundaries[c], h.slice);
  }
  return solve<Rational>(b, to_dense(v, h.slice)).has_value();
}

QMatrix induced_on_cohomology(const LinearMap& chain_map, const CohomologyResult& source,
                              const CohomologyResult& target) {
  QMatrix m(target.dimension, source.dimension);
  for (int c = 0; c < source.dimension; ++c) {
    m.col(c) = class_coordinates(target, chain_map.apply(source.representatives[static_cast<std::size_t>(c)]));
  }
  return m;
}

QuotientResult quotient_basis(const SpacePtr& space, const std::vector<Vector>& subspace) {
  for (const auto& v : subspace) {
    if (!homogeneous_degree(*space, v, 0)) throw StructuralError("quotient by a non-homogeneous vector");
  }
  std::vector<Index> all(space->size());
  for (Index i = 0; i < all.size(); ++i) all[i] = i;
  QMatrix rows(static_cast<Eigen::Index>(subspace.size()), static_cast<Eigen::Index>(space->size()));
  for (std::size_t r = 0; r < subspace.size(); ++r) {
    rows.row(static_cast<Eigen::Index>(r)) = to_dense(subspace[r], all).transpose();
  }
  const auto ech = row_reduce<Rational>(rows);
  std::vector<bool> is_pivot(space->size(), false);
  for (auto p : ech.pivots) is_pivot[static_cast<std::size_t>(p)] = true;

  std::vector<BasisElement> kept;
  std::vector<Index> position(space->size(), 0);
  for (Index i = 0; i < space->size(); ++i) {
    if (is_pivot[i]) continue;
    position[i] = kept.size();
    kept.push_back((*space)[i]);
  }
  auto quotient = make_space(std::move(kept));
  LinearMap proj{space, quotient, 0, std::vector<Vector>(space->size())};
  for (Index i = 0; i < space->size(); ++i) {
    if (!is_pivot[i]) proj.columns[i] = Vector::unit(position[i]);
  }
  // A pivot element equals minus the rest of its echelon row modulo the subspace.
  for (Eigen::Index r = 0; r < ech.rank(); ++r) {
    const auto p = static_cast<Index>(ech.pivots[static_cast<std::size_t>(r)]);
    Vector img;
    for (Index j = 0; j < space->size(); ++j) {
      if (is_pivot[j]) continue;
      const Rational& x = ech.reduced(r, static_cast<Eigen::Index>(j));
      if (!is_zero(x)) img.add(position[j], -x);
    }
    proj.columns[p] = std::move(img);
  }
  return {quotient, std::move(proj)};
}

}  // namespace linf
