#pragma once

// Reference computations that share no code with the library routes.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using Vec = Eigen::VectorXd;

/// Exit distance from x along unit u for the box [-1,1]^d, by slab clipping.
inline double box_exit(const Vec& x, const Vec& u)
{
    double t = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        if (u[k] > 0)
            t = std::min(t, (1.0 - x[k]) / u[k]);
        else if (u[k] < 0)
            t = std::min(t, (-1.0 - x[k]) / u[k]);
    }
    return t;
}

/// Exit distance for a polygon given by counterclockwise vertices, by
/// intersecting the ray with every edge segment.
inline double polygon_exit(const std::vector<Vec>& poly, const Vec& x, const Vec& u)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec& a = poly[i];
        const Vec& b = poly[(i + 1) % poly.size()];
        const Vec e = b - a;
        const double den = u[0] * (-e[1]) - u[1] * (-e[0]);
        if (std::abs(den) < 1e-15)
            continue;
        const Vec r = a - x;
        const double t = (r[0] * (-e[1]) - r[1] * (-e[0])) / den;
        const double s = (u[0] * r[1] - u[1] * r[0]) / den;
        if (t > 0 && s >= -1e-12 && s <= 1 + 1e-12)
            best = std::min(best, t);
    }
    return best;
}

/// Exit distance from x along unit u for the disk of radius 1 at the origin.
inline double disk_exit(const Vec& x, const Vec& u)
{
    const double b = x.dot(u);
    const double c = x.squaredNorm() - 1.0;
    return -b + std::sqrt(b * b - c);
}

/// Funk distance log(|x z|/|y z|) from an exit-distance oracle.
template <class Exit>
double funk(const Exit& exit, const Vec& x, const Vec& y)
{
    const double len = (y - x).norm();
    if (len == 0)
        return 0.0;
    const Vec u = (y - x) / len;
    const double t = exit(x, u);
    return std::log(t / (t - len));
}

/// Hilbert distance as the log cross ratio of (w, x, y, z) on the chord.
template <class Exit>
double hilbert(const Exit& exit, const Vec& x, const Vec& y)
{
    const double len = (y - x).norm();
    if (len == 0)
        return 0.0;
    const Vec u = (y - x) / len;
    const double xz = exit(x, u);
    const double yw = exit(y, -u);
    const double yz = xz - len;
    const double xw = yw - len;
    return std::log((xz * yw) / (yz * xw));
}

/// M(y/x) = inf{λ > 0 : λx − y in the closed cone}, by bisection on λ with
/// a membership test given as a predicate on the closed cone.
template <class InClosedCone>
double gauge_bisect(const InClosedCone& inside, const Vec& y, const Vec& x)
{
    if (inside(Vec(-y)))
        return 0.0;
    double lo = 0.0, hi = 1.0;
    while (!inside(Vec(hi * x - y)))
        hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        (inside(Vec(mid * x - y)) ? hi : lo) = mid;
    }
    return hi;
}

/// Busemann function of the Klein disk toward (1, 0), basepoint 0.
inline double disk_busemann_east(const Vec& x)
{
    const Vec z = (Vec(2) << 1.0, 0.0).finished();
    const double r = (x - z).norm();
    const double chord = 2.0 * (1.0 - x[0]) / r;
    return std::log(1.0 - x[0]) + std::log(chord / (chord - r)) - std::log(2.0);
}

inline Vec random_in_box(std::mt19937_64& rng, Eigen::Index d, double half)
{
    std::uniform_real_distribution<double> u(-half, half);
    Vec v(d);
    for (Eigen::Index k = 0; k < d; ++k)
        v[k] = u(rng);
    return v;
}

}  // namespace oracle
