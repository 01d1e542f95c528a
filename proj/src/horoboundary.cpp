#include "hilbert/horoboundary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hilbert {

std::string horo_kind_name(HoroKind k)
{
    switch (k) {
    case HoroKind::ReverseFunk:
        return "reverse";
    case HoroKind::Funk:
        return "funk";
    case HoroKind::Hilbert:
        return "hilbert";
    case HoroKind::Extended:
        return "extended";
    default:
        return "sampled";
    }
}

namespace {

void require_interior(const PolyCone& c, const Point& x, const char* what)
{
    require_dim(x, c.dim(), what);
    if (!c.contains(x))
        throw DomainError(std::string(what) + ": point is not strictly inside the cone");
}

Point unit_boundary_ray(const PolyCone& c, const Point& z, const char* what)
{
    require_dim(z, c.dim(), what);
    if (!(z.norm() > 0))
        throw DomainError(std::string(what) + ": boundary ray must be nonzero");
    const Point u = z / z.norm();
    if (!c.is_boundary_point(u))
        throw DomainError(std::string(what) + ": z is not a boundary point of the cone");
    if (c.active_set(u).size() == c.size())
        throw DomainError(std::string(what) + ": z lies in the lineality space");
    return u;
}

}  // namespace

HorofunctionEvaluator reverse_horofunction(const PolyCone& c, const Point& z, const Point& b)
{
    const Point u = unit_boundary_ray(c, z, "reverse_horofunction");
    require_interior(c, b, "reverse_horofunction basepoint");
    const double offset = std::log(m_ratio(c, u, b));
    return {HoroKind::ReverseFunk, b,
            [c, u, offset](const Point& x) { return std::log(m_ratio(c, u, x)) - offset; }};
}

HorofunctionEvaluator funk_horofunction(const PolyCone& t, const Point& p, const Point& b)
{
    require_interior(t, p, "funk_horofunction");
    require_dim(b, t.dim(), "funk_horofunction basepoint");
    const double mb = m_ratio(t, b, p);
    if (!(mb > 0))
        throw DomainError("funk_horofunction: basepoint is not inside the cone");
    const double offset = std::log(mb);
    return {HoroKind::Funk, b,
            [t, p, offset](const Point& x) { return std::log(m_ratio(t, x, p)) - offset; }};
}

void validate(const BusemannDescriptor& d)
{
    const Point u = unit_boundary_ray(d.cone, d.z, "descriptor");
    require_interior(d.cone, d.basepoint, "descriptor basepoint");
    if (!(d.chain.base == open_tangent_cone(d.cone, u)))
        throw DomainError("descriptor: chain does not start at the open tangent cone at z");
    const PolyCone target = d.chain.final_cone();
    require_interior(target, d.p, "descriptor p");
}

HorofunctionEvaluator busemann_horofunction(const BusemannDescriptor& d)
{
    validate(d);
    const auto r = reverse_horofunction(d.cone, d.z, d.basepoint);
    const auto f = funk_horofunction(d.chain.final_cone(), d.p, d.basepoint);
    return {HoroKind::Hilbert, d.basepoint, [r, f](const Point& x) { return r(x) + f(x); }};
}

double busemann_eval(const BusemannDescriptor& d, const Point& x)
{
    return busemann_horofunction(d)(x);
}

Point analytic_center(const PolyCone& t, const Vector& weights)
{
    const auto m = static_cast<Eigen::Index>(t.size());
    if (m == 0)
        return t.interior_point();
    Vector w = weights.size() == 0 ? Vector::Ones(m) : weights;
    require_dim(w, m, "analytic_center weights");
    if (w.minCoeff() <= 0)
        throw DomainError("analytic_center: weights must be positive");
    const double total = w.sum();
    Matrix a(m, t.dim());
    for (Eigen::Index i = 0; i < m; ++i)
        a.row(i) = t.normals()[static_cast<std::size_t>(i)].transpose();

    auto objective = [&](const Vector& v) {
        const Vector s = a * v;
        if (s.minCoeff() <= 0)
            return -kInf;
        return (w.array() * s.array().log()).sum() - 0.5 * total * v.squaredNorm();
    };

    Vector v = t.interior_point();
    for (int iter = 0; iter < 100; ++iter) {
        const Vector s = a * v;
        const Vector ws = w.array() / s.array();
        const Vector grad = a.transpose() * ws - total * v;
        if (grad.norm() < 1e-14)
            break;
        const Vector ws2 = w.array() / s.array().square();
        const Matrix hess = -(a.transpose() * ws2.asDiagonal() * a) - total * Matrix::Identity(t.dim(), t.dim());
        const Vector step = hess.ldlt().solve(-grad);
        const double f0 = objective(v);
        double alpha = 1.0;
        while (alpha > 1e-12 && !(objective(v + alpha * step) >= f0))
            alpha *= 0.5;
        if (alpha <= 1e-12)
            break;
        v += alpha * step;
    }
    return v;
}

std::vector<CatalogFamily> busemann_catalog(const PolyCone& c, const Point& b, const CatalogOptions& options)
{
    if (lineality(c).cols() != 0)
        throw DomainError("busemann_catalog: cone contains lines");
    require_interior(c, b, "busemann_catalog basepoint");
    const auto rays = extreme_rays(c);
    auto faces = proper_faces(c, rays);

    auto face_dim = [&](const ConeFace& f) {
        Matrix r(c.dim(), static_cast<Eigen::Index>(f.ray_indices.size()));
        for (std::size_t k = 0; k < f.ray_indices.size(); ++k)
            r.col(static_cast<Eigen::Index>(k)) = rays[static_cast<std::size_t>(f.ray_indices[k])];
        Eigen::FullPivLU<Matrix> lu(r);
        lu.setThreshold(1e-10);
        return static_cast<int>(lu.rank()) - 1;
    };
    std::stable_sort(faces.begin(), faces.end(), [&](const ConeFace& x, const ConeFace& y) {
        const int dx = face_dim(x), dy = face_dim(y);
        return dx != dy ? dx > dy : x.ray_indices < y.ray_indices;
    });

    const int body_dim = static_cast<int>(c.dim()) - 1;
    std::vector<CatalogFamily> families;
    for (const auto& face : faces) {
        CatalogFamily fam{face, {}, Point::Zero(c.dim()), c, {}};
        const int k = face_dim(face);
        if (k == 0)
            fam.label = "vertex";
        else if (k == 1)
            fam.label = "edge";
        else if (k == body_dim - 1)
            fam.label = "facet";
        else
            fam.label = "face-" + std::to_string(k);

        for (int r : face.ray_indices)
            fam.z += rays[static_cast<std::size_t>(r)];
        fam.z /= fam.z.norm();
        fam.tangent = open_tangent_cone(c, fam.z);

        for (const auto& member : tangent_cone_family(fam.tangent)) {
            std::vector<Point> centers{analytic_center(member.cone)};
            if (options.p_grid) {
                for (std::size_t i = 0; i < member.cone.size(); ++i) {
                    Vector w = Vector::Ones(static_cast<Eigen::Index>(member.cone.size()));
                    w[static_cast<Eigen::Index>(i)] = 3.0;
                    centers.push_back(analytic_center(member.cone, w));
                }
            }
            for (const auto& p : centers)
                fam.members.push_back({c, fam.z, member.chain, p, b});
        }
        families.push_back(std::move(fam));
    }
    return families;
}

HorofunctionEvaluator extend_homogeneous(const HorofunctionEvaluator& h, const PolyCone& t, const Point& x)
{
    require_dim(x, t.dim(), "extend_homogeneous");
    const PolyCone target = open_tangent_cone(t, x);

    std::vector<Point> samples{t.interior_point()};
    for (Eigen::Index k = 0; k < t.dim(); ++k)
        for (double s : {0.25, -0.25}) {
            Point y = t.interior_point();
            y[k] += s;
            if (t.contains(y))
                samples.push_back(y);
        }
    for (const auto& y : samples)
        for (double lambda : {0.5, 0.125}) {
            const double lhs = h(x + lambda * (y - x));
            const double rhs = std::log(lambda) + h(y);
            if (!(std::abs(lhs - rhs) <= 1e-8))
                throw DomainError("extend_homogeneous: homogeneity precondition fails");
        }

    auto fn = [h, t, target, x](const Point& y) {
        if (!target.contains(y))
            throw DomainError("extended horofunction: point outside the tangent cone");
        double lambda = 1.0;
        int halvings = 0;
        while (!t.contains(x + lambda * (y - x))) {
            lambda *= 0.5;
            if (++halvings > 1000)
                throw DomainError("extended horofunction: no admissible scaling found");
        }
        const double v1 = -std::log(lambda) + h(x + lambda * (y - x));
        const double half = 0.5 * lambda;
        const double v2 = -std::log(half) + h(x + half * (y - x));
        if (std::abs(v1 - v2) > 1e-10 * std::max(1.0, std::abs(v1)))
            throw DomainError("extended horofunction: value depends on the scaling");
        return v1;
    };
    return {HoroKind::Extended, h.basepoint, fn};
}

bool ZSet::contains(const Vector& z, double tol) const
{
    if (slice_normal.dot(z) > slice_rhs + tol)
        return false;
    GeneratedCone g{z.size(), generators};
    return g.contains(z, tol);
}

ZSet z_set(const PolyCone& t, const Point& x, const Point& b)
{
    require_interior(t, x, "z_set");
    require_dim(b, t.dim(), "z_set basepoint");
    const double m = m_ratio(t, b, x);
    if (!(m > 0))
        throw DomainError("z_set: slice is unbounded (basepoint gauge is zero)");
    ZSet z;
    z.generators = t.normals();
    z.slice_normal = m * x;
    z.vertices.push_back(Vector::Zero(t.dim()));
    for (const auto& a : t.normals())
        z.vertices.push_back(a / (m * a.dot(x)));
    return z;
}

double conjugate_check(const PolyCone& t, const Point& x, const Point& b, const std::vector<Point>& probes)
{
    const ZSet z = z_set(t, x, b);
    const double mb = m_ratio(t, b, x);
    double worst = 0.0;
    for (const auto& y : probes) {
        require_dim(y, t.dim(), "conjugate_check probe");
        const double lhs = m_ratio(t, y, x) / mb;
        double rhs = -kInf;
        for (const auto& v : z.vertices)
            rhs = std::max(rhs, v.dot(y));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

Point lambda_map(const Point& q)
{
    const auto n = q.size();
    if (n < 1)
        throw DomainError("lambda_map: empty point");
    const double y = q[n - 1];
    if (!(y > 0 && y <= 1))
        throw DomainError("lambda_map: last coordinate must lie in (0, 1]");
    Point r(n);
    r.head(n - 1) = q.head(n - 1) / y;
    r[n - 1] = 1.0 / y - 1.0;
    return r;
}

Point lambda_inv(const Point& q)
{
    const auto n = q.size();
    if (n < 1)
        throw DomainError("lambda_inv: empty point");
    const double y = q[n - 1];
    if (!(y >= 0) || !std::isfinite(y))
        throw DomainError("lambda_inv: last coordinate must be nonnegative");
    Point r(n);
    r.head(n - 1) = q.head(n - 1) / (1.0 + y);
    r[n - 1] = 1.0 / (1.0 + y);
    return r;
}

double collinearity_residual(const Point& a, const Point& b, const Point& c)
{
    const Vector d = c - a;
    const double len = d.norm();
    if (len == 0)
        return (b - a).norm();
    const Vector u = d / len;
    const Vector w = b - a;
    return (w - w.dot(u) * u).norm();
}

RayMatch match_reverse_ray(const PolyCone& c, const Point& b, const std::vector<Point>& probes,
                           const std::vector<double>& values, const std::vector<Point>& candidates)
{
    if (probes.size() != values.size())
        throw DomainError("match_reverse_ray: probe and value counts differ");
    RayMatch m;
    double best = kInf;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        const auto r = reverse_horofunction(c, candidates[k], b);
        double dev = 0.0;
        for (std::size_t j = 0; j < probes.size(); ++j)
            dev = std::max(dev, std::abs(values[j] - r(probes[j])));
        m.residuals.push_back(dev);
        if (dev < best) {
            best = dev;
            m.best = static_cast<int>(k);
        }
    }
    return m;
}

}  // namespace hilbert
