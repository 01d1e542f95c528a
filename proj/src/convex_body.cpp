#include "hilbert/convex_body.hpp"

#include "hilbert/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace hilbert {

namespace {

constexpr double kDirectionFloor = 1e-14;

double quadratic_value(const QuadraticConstraint& q, const Point& x)
{
    return x.dot(q.Q * x) + q.c.dot(x) - q.r;
}

// Smallest positive root of A t² + B t + C = 0 given C < 0 (start inside).
double positive_root(double A, double B, double C)
{
    const double scale = std::abs(A) + std::abs(B) + std::abs(C);
    if (std::abs(A) <= 1e-15 * scale) {
        return B > 0 ? -C / B : kInf;
    }
    const double disc = std::max(0.0, B * B - 4.0 * A * C);
    const double sq = std::sqrt(disc);
    if (A > 0) {
        // Roots have opposite signs; take the positive one in stable form.
        return B >= 0 ? (2.0 * C) / (-B - sq) : (-B + sq) / (2.0 * A);
    }
    // Concave quadratic (not PSD); exit at the smallest positive root if any.
    if (B * B - 4.0 * A * C < 0)
        return kInf;
    const double r1 = (-B + sq) / (2.0 * A);
    const double r2 = (-B - sq) / (2.0 * A);
    double t = kInf;
    if (r1 > 0)
        t = std::min(t, r1);
    if (r2 > 0)
        t = std::min(t, r2);
    return t;
}

double box_exit(const Point& lo, const Point& hi, const Point& x, const Vector& u)
{
    double t = kInf;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        if (u[k] > 0)
            t = std::min(t, (hi[k] - x[k]) / u[k]);
        else if (u[k] < 0)
            t = std::min(t, (lo[k] - x[k]) / u[k]);
    }
    return t;
}

double halfspace_exit(const std::vector<Halfspace>& hs, const Point& x, const Vector& u)
{
    double t = kInf;
    for (const auto& h : hs) {
        const double rate = h.a.dot(u);
        if (rate > 0)
            t = std::min(t, (h.b - h.a.dot(x)) / rate);
    }
    return t;
}

double bisect_exit(const std::function<double(const Point&)>& g, const Point& x, const Vector& u,
                   double t_hi)
{
    if (g(x + t_hi * u) <= 0)
        return kInf;
    double lo = 0.0;
    double hi = t_hi;
    // Runs to machine resolution, well below 1e-12 relative width.
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (g(x + mid * u) < 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

ConvexBody::ConvexBody(Shape shape, Eigen::Index dim, double tol)
    : shape_(std::move(shape)), dim_(dim), tol_(tol)
{
    if (!(tol_ > 0))
        throw DomainError("tolerance must be positive");
}

ConvexBody ConvexBody::polytope(std::vector<Point> vertices, double tol)
{
    Polytope p(std::move(vertices), tol);
    const auto d = p.dim();
    ConvexBody body(std::move(p), d, tol);
    body.interior_ = std::get<Polytope>(body.shape_).centroid();
    return body;
}

ConvexBody ConvexBody::ball(Point center, double radius, double tol)
{
    if (!(radius > 0) || !std::isfinite(radius))
        throw DomainError("ball: radius must be positive and finite");
    const auto d = center.size();
    Point c = center;
    ConvexBody body(Ball{std::move(center), radius}, d, tol);
    body.interior_ = c;
    return body;
}

ConvexBody ConvexBody::intersection(Intersection parts, std::optional<Point> interior, double tol)
{
    const auto d = parts.bbox_lo.size();
    if (d == 0 || parts.bbox_hi.size() != d)
        throw DomainError("intersection: a bounding box is required");
    if ((parts.bbox_hi - parts.bbox_lo).minCoeff() <= 0 || !parts.bbox_lo.allFinite() ||
        !parts.bbox_hi.allFinite())
        throw DomainError("intersection: bounding box must be finite and nondegenerate");
    for (auto& h : parts.halfspaces) {
        require_dim(h.a, d, "intersection halfspace");
        const double n = h.a.norm();
        if (n <= 0)
            throw DomainError("intersection: zero halfspace normal");
        h.a /= n;
        h.b /= n;
    }
    for (auto& q : parts.quadratics) {
        if (q.Q.rows() != d || q.Q.cols() != d)
            throw DomainError("intersection quadratic: dimension mismatch");
        require_dim(q.c, d, "intersection quadratic");
        q.Q = 0.5 * (q.Q + q.Q.transpose());
    }

    ConvexBody body(std::move(parts), d, tol);
    if (interior) {
        require_dim(*interior, d, "intersection interior point");
        if (!body.contains(*interior))
            throw DomainError("intersection: supplied interior point is not interior");
        body.interior_ = *interior;
        return body;
    }
    const auto& box = std::get<Intersection>(body.shape_);
    Point best = 0.5 * (box.bbox_lo + box.bbox_hi);
    double best_margin = body.margin(best);
    ScrambledHalton seq(d, 0);
    for (std::uint64_t i = 0; i < 4096 && best_margin <= tol; ++i) {
        Point p = box.bbox_lo + seq(i).cwiseProduct(box.bbox_hi - box.bbox_lo);
        const double m = body.margin(p);
        if (m > best_margin) {
            best_margin = m;
            best = p;
        }
    }
    if (best_margin <= tol)
        throw DomainError("intersection: no interior point found (empty interior?)");
    body.interior_ = best;
    return body;
}

BodyKind ConvexBody::kind() const
{
    switch (shape_.index()) {
    case 0:
        return BodyKind::Polytope;
    case 1:
        return BodyKind::Ball;
    default:
        return BodyKind::Intersection;
    }
}

std::pair<Point, Point> ConvexBody::bounding_box() const
{
    if (const auto* p = as_polytope()) {
        Point lo = p->vertices().front();
        Point hi = lo;
        for (const auto& v : p->vertices()) {
            lo = lo.cwiseMin(v);
            hi = hi.cwiseMax(v);
        }
        return {lo, hi};
    }
    if (const auto* b = as_ball()) {
        const Vector r = Vector::Constant(dim_, b->radius);
        return {b->center - r, b->center + r};
    }
    const auto& s = std::get<Intersection>(shape_);
    return {s.bbox_lo, s.bbox_hi};
}

double ConvexBody::margin(const Point& x) const
{
    require_dim(x, dim_, "contains");
    if (const auto* p = as_polytope())
        return p->min_slack(x);
    if (const auto* b = as_ball())
        return b->radius - (x - b->center).norm();
    const auto& s = std::get<Intersection>(shape_);
    double m = kInf;
    for (Eigen::Index k = 0; k < dim_; ++k)
        m = std::min({m, x[k] - s.bbox_lo[k], s.bbox_hi[k] - x[k]});
    for (const auto& h : s.halfspaces)
        m = std::min(m, h.b - h.a.dot(x));
    for (const auto& q : s.quadratics)
        m = std::min(m, -quadratic_value(q, x));
    for (const auto& c : s.constraints)
        m = std::min(m, -c.g(x));
    return m;
}

std::string ConvexBody::violated_constraint(const Point& x) const
{
    if (x.size() != dim_)
        return "dimension mismatch";
    if (const auto* p = as_polytope()) {
        for (std::size_t f = 0; f < p->facets().size(); ++f)
            if (p->facets()[f].offset - p->facets()[f].normal.dot(x) <= tol_)
                return "facet " + std::to_string(f);
        return {};
    }
    if (const auto* b = as_ball())
        return b->radius - (x - b->center).norm() <= tol_ ? "ball radius" : "";
    const auto& s = std::get<Intersection>(shape_);
    for (Eigen::Index k = 0; k < dim_; ++k)
        if (x[k] - s.bbox_lo[k] <= tol_ || s.bbox_hi[k] - x[k] <= tol_)
            return "bounding box coordinate " + std::to_string(k);
    for (std::size_t i = 0; i < s.halfspaces.size(); ++i)
        if (s.halfspaces[i].b - s.halfspaces[i].a.dot(x) <= tol_)
            return "halfspace " + std::to_string(i);
    for (std::size_t i = 0; i < s.quadratics.size(); ++i)
        if (-quadratic_value(s.quadratics[i], x) <= tol_)
            return "quadratic " + std::to_string(i);
    for (const auto& c : s.constraints)
        if (-c.g(x) <= tol_)
            return c.name.empty() ? "convex constraint" : c.name;
    return {};
}

double ConvexBody::ray_exit(const Point& x, const Vector& u) const
{
    require_dim(x, dim_, "ray_exit");
    require_dim(u, dim_, "ray_exit direction");
    if (u.norm() <= kDirectionFloor)
        throw DomainError("ray_exit: direction below norm floor");
    if (!contains(x))
        throw DomainError("ray_exit: start point is not interior");

    if (const auto* p = as_polytope()) {
        double t = kInf;
        for (const auto& f : p->facets()) {
            const double rate = f.normal.dot(u);
            if (rate > 0)
                t = std::min(t, (f.offset - f.normal.dot(x)) / rate);
        }
        return t;
    }
    if (const auto* b = as_ball()) {
        const Vector w = x - b->center;
        return positive_root(u.squaredNorm(), 2.0 * w.dot(u), w.squaredNorm() - b->radius * b->radius);
    }
    const auto& s = std::get<Intersection>(shape_);
    const double t_box = box_exit(s.bbox_lo, s.bbox_hi, x, u);
    double t = std::min(t_box, halfspace_exit(s.halfspaces, x, u));
    for (const auto& q : s.quadratics) {
        const double A = u.dot(q.Q * u);
        const double B = 2.0 * x.dot(q.Q * u) + q.c.dot(u);
        const double C = quadratic_value(q, x);
        t = std::min(t, positive_root(A, B, C));
    }
    for (const auto& c : s.constraints)
        t = std::min(t, bisect_exit(c.g, x, u, t_box));
    return t;
}

Point boundary_point(const ConvexBody& body, const Point& x, const Vector& u)
{
    return x + body.ray_exit(x, u) * u;
}

}  // namespace hilbert
