#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <string>
#include <string_view>

namespace linf {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator. Expression templates are off so the type behaves
/// as a plain value inside Eigen containers.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = MatrixX<Rational>;
using QVector = VectorX<Rational>;

/// Parses "p/q", "-p/q" or an integer literal. Anything else (decimal points,
/// exponents, zero denominators) is rejected with std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rational& q);

/// 1/k! as an exact rational.
Rational inverse_factorial(int k);

inline bool is_zero(const Rational& q) { return q.sign() == 0; }

}  // namespace linf
