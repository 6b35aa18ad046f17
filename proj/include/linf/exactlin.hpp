#pragma once

// Exact linear algebra over graded rational vector spaces.
//
// Elements are sparse (`Vector`), linear maps are stored column-wise and
// materialized as dense Eigen matrices one degree slice at a time. The
// elimination routines are templates on the scalar type; the rest of the
// library instantiates them with `Rational`.

#include "linf/errors.hpp"
#include "linf/rational.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace linf {

using Index = std::size_t;

struct BasisElement {
  std::string id;
  int degree = 0;
  int weight = 1;

  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

/// Ordered basis with a cohomological degree and a filtration weight per
/// element. Identifiers are unique and weights are at least 1.
class GradedSpace {
 public:
  GradedSpace() = default;
  explicit GradedSpace(std::vector<BasisElement> basis);

  std::size_t size() const { return basis_.size(); }
  const BasisElement& operator[](Index i) const { return basis_[i]; }
  const std::vector<BasisElement>& elements() const { return basis_; }

  std::optional<Index> find(const std::string& id) const;
  /// Throws StructuralError for unknown identifiers.
  Index index_of(const std::string& id) const;

  /// Indices of basis elements of the given degree, in basis order.
  std::vector<Index> degree_slice(int degree) const;
  /// Distinct degrees present, ascending.
  std::vector<int> degrees() const;
  int max_weight() const;

  friend bool operator==(const GradedSpace& a, const GradedSpace& b) { return a.basis_ == b.basis_; }

 private:
  std::vector<BasisElement> basis_;
  std::unordered_map<std::string, Index> index_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

inline SpacePtr make_space(std::vector<BasisElement> basis) {
  return std::make_shared<const GradedSpace>(std::move(basis));
}

/// Sparse coefficient vector keyed by basis index. Zero coefficients are never stored.
class Vector {
 public:
  using Storage = std::map<Index, Rational>;

  Vector() = default;
  static Vector unit(Index i, const Rational& c = Rational(1));

  Rational coeff(Index i) const;
  void add(Index i, const Rational& c);
  void set(Index i, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }
  Storage::const_iterator begin() const { return terms_.begin(); }
  Storage::const_iterator end() const { return terms_.end(); }

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(const Rational& c);
  void add_scaled(const Vector& other, const Rational& c);

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  Storage terms_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator-(Vector a);
Vector operator*(const Rational& c, Vector v);

/// Degree shared by every term, or nullopt for a mixed vector. The zero
/// vector is homogeneous of every degree and yields `fallback`.
std::optional<int> homogeneous_degree(const GradedSpace& space, const Vector& v, int fallback);
/// Smallest weight among the support; 0 for the zero vector.
int min_weight(const GradedSpace& space, const Vector& v);
/// Keeps only the terms whose basis element has the given weight.
Vector weight_component(const GradedSpace& space, const Vector& v, int weight);

Vector vector_from_ids(const GradedSpace& space, const std::vector<std::pair<std::string, Rational>>& terms);
/// Human-readable form "1/2·y - 3·x", "0" for the zero vector.
std::string format_vector(const GradedSpace& space, const Vector& v);

QVector to_dense(const Vector& v, const std::vector<Index>& slice);
Vector from_dense(const QVector& v, const std::vector<Index>& slice);

/// Linear map stored as one image column per source basis element. Every
/// column is homogeneous of degree (source degree + degree_shift).
struct LinearMap {
  SpacePtr source;
  SpacePtr target;
  int degree_shift = 0;
  std::vector<Vector> columns;

  Vector apply(const Vector& v) const;
};

LinearMap zero_map(SpacePtr source, SpacePtr target, int degree_shift);
LinearMap identity_map(SpacePtr space);
LinearMap compose(const LinearMap& second, const LinearMap& first);

/// Dense matrix of the map from the degree-`source_degree` slice of the
/// source to the degree-(source_degree + shift) slice of the target.
QMatrix slice_matrix(const LinearMap& map, int source_degree);
/// Dense matrix of the whole map in basis order.
QMatrix full_matrix(const LinearMap& map);
/// Checks that every column is homogeneous of the declared shift; when
/// `filtered` is set, also that no column lowers weight.
std::vector<std::string> check_linear_map(const LinearMap& map, bool filtered);

// ---------------------------------------------------------------------------
// Elimination templates

template <typename Scalar>
struct Echelon {
  MatrixX<Scalar> reduced;
  std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row, increasing

  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

/// Gauss-Jordan elimination. Columns are scanned left to right and the pivot
/// row is the first remaining row with a nonzero entry, so the result only
/// depends on the basis order.
template <typename Scalar>
Echelon<Scalar> row_reduce(MatrixX<Scalar> m) {
  const Scalar zero(0);
  Echelon<Scalar> out;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (m(r, col) != zero) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) {
      if (m(row, c) != zero) m(row, c) *= inv;
    }
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == zero) continue;
      const Scalar factor = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) {
        if (m(row, c) != zero) m(r, c) -= factor * m(row, c);
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <typename Scalar>
Eigen::Index rank(const MatrixX<Scalar>& m) {
  return row_reduce<Scalar>(m).rank();
}

/// Kernel basis as matrix columns, one per free column of the echelon form.
template <typename Scalar>
MatrixX<Scalar> kernel_basis(const MatrixX<Scalar>& m) {
  const auto ech = row_reduce<Scalar>(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto p : ech.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  MatrixX<Scalar> basis = MatrixX<Scalar>::Zero(m.cols(), m.cols() - ech.rank());
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, k) = Scalar(1);
    for (Eigen::Index r = 0; r < ech.rank(); ++r) {
      basis(ech.pivots[static_cast<std::size_t>(r)], k) = -ech.reduced(r, free);
    }
    ++k;
  }
  return basis;
}

/// One solution of m·x = b (free variables set to zero), or nullopt.
template <typename Scalar>
std::optional<VectorX<Scalar>> solve(const MatrixX<Scalar>& m, const VectorX<Scalar>& b) {
  MatrixX<Scalar> aug(m.rows(), m.cols() + 1);
  aug << m, b;
  const auto ech = row_reduce<Scalar>(aug);
  if (!ech.pivots.empty() && ech.pivots.back() == m.cols()) return std::nullopt;
  VectorX<Scalar> x = VectorX<Scalar>::Zero(m.cols());
  for (Eigen::Index r = 0; r < ech.rank(); ++r) {
    x(ech.pivots[static_cast<std::size_t>(r)]) = ech.reduced(r, m.cols());
  }
  return x;
}

/// Columns of `m` that form a basis of its column space (first-found order).
template <typename Scalar>
std::vector<Eigen::Index> independent_columns(const MatrixX<Scalar>& m) {
  return row_reduce<Scalar>(m).pivots;
}

// ---------------------------------------------------------------------------
// Graded operations

struct SolveResult {
  std::optional<Vector> solution;
  std::vector<Vector> kernel;
};

/// Exact preimage of `target` under `map` plus a kernel basis of the map.
SolveResult solve_linear(const LinearMap& map, const Vector& target);

struct CohomologyResult {
  int degree = 0;
  std::vector<Index> slice;  // basis indices of the degree slice
  std::vector<Vector> cocycles;
  std::vector<Vector> coboundaries;
  std::vector<Vector> representatives;
  int dimension = 0;
};

/// H = ker(outgoing) / im(incoming) in the given degree. `incoming` maps the
/// degree-1 slice into the degree slice of the space on which `outgoing` acts.
CohomologyResult cohomology(const LinearMap& incoming, const LinearMap& outgoing, int degree);

/// Convenience for a differential acting on a single space.
CohomologyResult cohomology(const LinearMap& differential, int degree);

/// Coordinates of a cocycle's class in the representative basis. Throws
/// StructuralError if `cocycle` is not in ker(outgoing).
QVector class_coordinates(const CohomologyResult& h, const Vector& cocycle);

/// True iff `v` lies in the coboundary span.
bool is_coboundary(const CohomologyResult& h, const Vector& v);

/// Matrix of the map induced by a chain map on cohomology in one degree.
QMatrix induced_on_cohomology(const LinearMap& chain_map, const CohomologyResult& source,
                              const CohomologyResult& target);

struct QuotientResult {
  SpacePtr quotient;
  LinearMap projection;
};

/// Basis of space/span(subspace) made of the non-pivot basis elements,
/// with the exact projection. Subspace vectors must be homogeneous.
QuotientResult quotient_basis(const SpacePtr& space, const std::vector<Vector>& subspace);

}  // namespace linf
