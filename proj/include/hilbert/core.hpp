#pragma once

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace hilbert {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A point of the ambient space. Plain column vector; the dimension is
/// checked against the containing body or cone by each operation.
using Point = Vector;

/// Real number or +/- infinity. IEEE doubles already give the order
/// conventions we need: log(0) = -inf, log(+inf) = +inf.
using ExtendedReal = double;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Default geometric tolerance used for active-constraint detection,
/// interiority and boundary placement.
inline constexpr double kDefaultGeoTol = 1e-10;

/// Precondition violated by an input point or direction (not interior,
/// wrong dimension, zero direction, ...).
class DomainError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/// The operation does not support the given kind of body or cone.
class UnsupportedError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// An iterative construction ran out of budget.
class BudgetExhausted : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

inline void require_dim(const Vector& v, Eigen::Index dim, const char* what)
{
    if (v.size() != dim)
        throw DomainError(std::string(what) + ": dimension mismatch (got " +
                          std::to_string(v.size()) + ", expected " +
                          std::to_string(dim) + ")");
}

inline Vector make_vector(std::initializer_list<double> values)
{
    Vector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values)
        v[i++] = x;
    return v;
}

inline Vector to_vector(const std::vector<double>& values)
{
    return Eigen::Map<const Vector>(values.data(),
                                    static_cast<Eigen::Index>(values.size()));
}

inline std::vector<double> to_std(const Vector& v)
{
    return {v.data(), v.data() + v.size()};
}

}  // namespace hilbert
