#include "hilbert/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace hilbert {

Metric parse_metric(const std::string& name)
{
    if (name == "funk")
        return Metric::Funk;
    if (name == "reverse" || name == "reverse-funk")
        return Metric::Reverse;
    if (name == "hilbert")
        return Metric::Hilbert;
    throw DomainError("unknown metric '" + name + "' (expected funk, reverse or hilbert)");
}

std::string metric_name(Metric m)
{
    switch (m) {
    case Metric::Funk:
        return "funk";
    case Metric::Reverse:
        return "reverse";
    default:
        return "hilbert";
    }
}

ExtendedReal m_ratio_from_slacks(const Vector& y_slacks, const Vector& x_slacks)
{
    if (y_slacks.size() != x_slacks.size())
        throw DomainError("m_ratio: slack vectors differ in length");
    double sup = -kInf;
    for (Eigen::Index i = 0; i < x_slacks.size(); ++i) {
        if (!(x_slacks[i] > 0))
            throw DomainError("m_ratio: reference point is not strictly inside the cone");
        sup = std::max(sup, y_slacks[i] / x_slacks[i]);
    }
    return sup > 0 ? sup : 0.0;
}

double log_m_ratio_from_log_slacks(const Vector& y_log_slacks, const Vector& x_log_slacks)
{
    if (y_log_slacks.size() != x_log_slacks.size())
        throw DomainError("m_ratio: slack vectors differ in length");
    if (y_log_slacks.size() == 0)
        return -kInf;
    return (y_log_slacks - x_log_slacks).maxCoeff();
}

ExtendedReal m_ratio(const PolyCone& c, const Point& y, const Point& x)
{
    require_dim(x, c.dim(), "m_ratio");
    require_dim(y, c.dim(), "m_ratio");
    const Vector xs = c.slacks(x);
    for (Eigen::Index i = 0; i < xs.size(); ++i)
        if (!(xs[i] > 0))
            throw DomainError("m_ratio: x is not strictly inside the cone");
    return m_ratio_from_slacks(c.slacks(y), xs);
}

ExtendedReal funk_cone(const PolyCone& c, const Point& x, const Point& y)
{
    return std::log(m_ratio(c, x, y));
}

ExtendedReal reverse_funk(const PolyCone& c, const Point& x, const Point& y)
{
    return std::log(m_ratio(c, y, x));
}

ExtendedReal hilbert(const PolyCone& c, const Point& x, const Point& y)
{
    return funk_cone(c, x, y) + funk_cone(c, y, x);
}

double funk_body(const ConvexBody& body, const Point& x, const Point& y)
{
    require_dim(x, body.dim(), "funk");
    require_dim(y, body.dim(), "funk");
    if (!body.contains(x))
        throw DomainError("funk: x is not interior (" + body.violated_constraint(x) + ")");
    if (!body.contains(y))
        throw DomainError("funk: y is not interior (" + body.violated_constraint(y) + ")");
    const Vector d = y - x;
    const double len = d.norm();
    if (len < body.tol())
        return 0.0;
    const double t = body.ray_exit(x, d / len);
    return std::log(t / std::max(t - len, 1e-300));
}

double reverse_funk(const ConvexBody& body, const Point& x, const Point& y)
{
    return funk_body(body, y, x);
}

double hilbert(const ConvexBody& body, const Point& x, const Point& y)
{
    return funk_body(body, x, y) + funk_body(body, y, x);
}

double distance(const ConvexBody& body, Metric m, const Point& x, const Point& y)
{
    switch (m) {
    case Metric::Funk:
        return funk_body(body, x, y);
    case Metric::Reverse:
        return reverse_funk(body, x, y);
    default:
        return hilbert(body, x, y);
    }
}

ExtendedReal distance(const PolyCone& c, Metric m, const Point& x, const Point& y)
{
    switch (m) {
    case Metric::Funk:
        return funk_cone(c, x, y);
    case Metric::Reverse:
        return reverse_funk(c, x, y);
    default:
        return hilbert(c, x, y);
    }
}

ExtendedReal m_ratio_ball(const Ball& ball, const Point& y_lift, const Point& x_lift)
{
    const auto d = ball.center.size();
    require_dim(x_lift, d + 1, "m_ratio_ball");
    require_dim(y_lift, d + 1, "m_ratio_ball");
    const double xs = x_lift[d];
    const double ys = y_lift[d];
    const Vector A = x_lift.head(d) - ball.center * xs;
    const Vector B = y_lift.head(d) - ball.center * ys;
    const double r2 = ball.radius * ball.radius;
    if (!(xs > 0) || !(A.squaredNorm() < r2 * xs * xs))
        throw DomainError("m_ratio_ball: x is not strictly inside the cone");
    // g(λ) = |λA − B|² − r²(λ xs − ys)², concave in λ.
    const double a = A.squaredNorm() - r2 * xs * xs;
    const double b = -2.0 * (A.dot(B) - r2 * xs * ys);
    const double c = B.squaredNorm() - r2 * ys * ys;
    const double disc = b * b - 4.0 * a * c;
    double lambda;
    if (disc < 0) {
        lambda = ys / xs;
    } else {
        const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        const double r1 = q / a;
        const double r2root = q != 0 ? c / q : r1;
        lambda = std::max(r1, r2root);
    }
    return lambda > 0 ? lambda : 0.0;
}

double funk_gauge_route(const ConvexBody& body, const Point& x, const Point& y)
{
    require_dim(x, body.dim(), "funk");
    require_dim(y, body.dim(), "funk");
    if (!body.contains(x))
        throw DomainError("funk: x is not interior (" + body.violated_constraint(x) + ")");
    if (!body.contains(y))
        throw DomainError("funk: y is not interior (" + body.violated_constraint(y) + ")");
    if ((x - y).norm() < body.tol())
        return 0.0;

    if (const auto* p = body.as_polytope()) {
        Vector sx(static_cast<Eigen::Index>(p->facets().size()));
        Vector sy(sx.size());
        for (std::size_t i = 0; i < p->facets().size(); ++i) {
            const auto& f = p->facets()[i];
            sx[static_cast<Eigen::Index>(i)] = f.offset - f.normal.dot(x);
            sy[static_cast<Eigen::Index>(i)] = f.offset - f.normal.dot(y);
        }
        return std::log(m_ratio_from_slacks(sx, sy));
    }
    if (const auto* b = body.as_ball()) {
        Point xl(x.size() + 1), yl(y.size() + 1);
        xl << x, 1.0;
        yl << y, 1.0;
        return std::log(m_ratio_ball(*b, xl, yl));
    }

    // M(x/y) = 1 + |x−y|/s where y + s·u is the first boundary point beyond y.
    const Vector d = y - x;
    const double len = d.norm();
    const Vector u = d / len;
    const auto [lo_box, hi_box] = body.bounding_box();
    double lo = 0.0;
    double hi = (hi_box - lo_box).norm();
    for (int i = 0; i < 400; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (body.margin(y + mid * u) > 0)
            lo = mid;
        else
            hi = mid;
    }
    return std::log1p(len / std::max(0.5 * (lo + hi), 1e-300));
}

double distance_gauge_route(const ConvexBody& body, Metric m, const Point& x, const Point& y)
{
    switch (m) {
    case Metric::Funk:
        return funk_gauge_route(body, x, y);
    case Metric::Reverse:
        return funk_gauge_route(body, y, x);
    default:
        return funk_gauge_route(body, x, y) + funk_gauge_route(body, y, x);
    }
}

HomogeneityResult homogeneity_shift(const PolyCone& c, const Point& z, const Point& x,
                                    const Point& y, double alpha)
{
    require_dim(z, c.dim(), "homogeneity_shift");
    if (!(alpha > 0) || !std::isfinite(alpha))
        throw DomainError("homogeneity_shift: alpha must be positive");
    const double scale = std::max(1.0, z.norm());
    for (const auto& a : c.normals())
        if (std::abs(a.dot(z)) > c.tol() * scale)
            throw DomainError("homogeneity_shift: z is not in the lineality space");
    HomogeneityResult r;
    const double base = funk_cone(c, x, y);
    r.first = funk_cone(c, (1.0 - alpha) * z + alpha * x, y);
    r.second = funk_cone(c, x, (1.0 - alpha) * z + alpha * y);
    r.expected_first = std::log(alpha) + base;
    r.expected_second = -std::log(alpha) + base;
    auto gap = [](double a, double b) { return a == b ? 0.0 : std::abs(a - b); };
    r.residual = std::max(gap(r.first, r.expected_first), gap(r.second, r.expected_second));
    return r;
}

}  // namespace hilbert
