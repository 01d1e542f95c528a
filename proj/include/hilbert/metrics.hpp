#pragma once

#include "hilbert/convex_body.hpp"
#include "hilbert/poly_cone.hpp"

#include <string>

namespace hilbert {

enum class Metric { Funk, Reverse, Hilbert };

Metric parse_metric(const std::string& name);
std::string metric_name(Metric m);

//! max(0, max_i ys_i / xs_i) for slack vectors with every xs_i > 0.
//! Returns 0 for empty vectors.
ExtendedReal m_ratio_from_slacks(const Vector& y_slacks, const Vector& x_slacks);

/// Same quantity in the log domain: log of the gauge for positive slack
/// vectors given by their logarithms. Never underflows.
double log_m_ratio_from_log_slacks(const Vector& y_log_slacks, const Vector& x_log_slacks);

/*!
 * Gauge M(y/x) = inf{λ > 0 : λx − y in the closed cone}.
 *
 * Evaluated through the dual generators as max(0, sup_i a_i·y / a_i·x).
 * x must be strictly inside the cone; y is arbitrary.
 */
ExtendedReal m_ratio(const PolyCone& c, const Point& y, const Point& x);

//! log M(x/y); y strictly inside, x arbitrary. Can be negative or -inf.
ExtendedReal funk_cone(const PolyCone& c, const Point& x, const Point& y);

//! log M(y/x); x strictly inside, y may lie on the boundary
ExtendedReal reverse_funk(const PolyCone& c, const Point& x, const Point& y);

ExtendedReal hilbert(const PolyCone& c, const Point& x, const Point& y);

//! Cross-ratio form log(t / (t − |x−y|)) with t the exit distance from x
//! through y. Points closer than the body's tolerance are at distance 0.
double funk_body(const ConvexBody& body, const Point& x, const Point& y);

double reverse_funk(const ConvexBody& body, const Point& x, const Point& y);

double hilbert(const ConvexBody& body, const Point& x, const Point& y);

double distance(const ConvexBody& body, Metric m, const Point& x, const Point& y);
ExtendedReal distance(const PolyCone& c, Metric m, const Point& x, const Point& y);

/*!
 * Funk distance computed from the gauge of the cone over the body, without
 * ray casting: the dual formula for polytopes, the quadratic for balls, and
 * bisection on membership for general intersections.
 */
double funk_gauge_route(const ConvexBody& body, const Point& x, const Point& y);

double distance_gauge_route(const ConvexBody& body, Metric m, const Point& x, const Point& y);

/// Gauge of the cone over a ball at height 1, evaluated on lifted points.
ExtendedReal m_ratio_ball(const Ball& ball, const Point& y_lift, const Point& x_lift);

struct HomogeneityResult
{
    double first = 0.0;            // funk((1−α)z + αx, y)
    double second = 0.0;           // funk(x, (1−α)z + αy)
    double expected_first = 0.0;   // log α + funk(x, y)
    double expected_second = 0.0;  // −log α + funk(x, y)
    double residual = 0.0;         // max deviation of the two pairs
};

//! Checks the shift identity for z in the lineality space of c.
//! Throws DomainError if z is not in the lineality space or α <= 0.
HomogeneityResult homogeneity_shift(const PolyCone& c, const Point& z, const Point& x,
                                    const Point& y, double alpha);

}  // namespace hilbert
