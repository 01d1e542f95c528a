#include "hilbert/polar.hpp"

#include "hilbert/lp.hpp"
#include "hilbert/poly_cone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace hilbert {

Polytope polar_polytope(const Polytope& p)
{
    if (!(p.min_slack(Point::Zero(p.dim())) > p.tol()))
        throw DomainError("polar: the origin is not an interior point");
    std::vector<Point> verts;
    for (const auto& f : p.facets())
        verts.push_back(f.normal / f.offset);
    return Polytope(std::move(verts), p.tol());
}

std::vector<int> ExtremeSetFamily::f_vector() const
{
    std::vector<int> counts;
    for (const auto& face : faces) {
        const Point& v0 = vertices[static_cast<std::size_t>(face.front())];
        Matrix span(v0.size(), static_cast<Eigen::Index>(face.size()));
        for (std::size_t k = 0; k < face.size(); ++k)
            span.col(static_cast<Eigen::Index>(k)) = vertices[static_cast<std::size_t>(face[k])] - v0;
        Eigen::FullPivLU<Matrix> lu(span);
        lu.setThreshold(1e-10);
        const auto d = static_cast<std::size_t>(lu.rank());
        if (counts.size() <= d)
            counts.resize(d + 1, 0);
        ++counts[d];
    }
    return counts;
}

ExtremeSetFamily extreme_sets(const Polytope& p)
{
    std::set<std::vector<int>> sets;
    for (const auto& fv : p.facet_vertices())
        sets.insert(fv);
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector<std::vector<int>> current(sets.begin(), sets.end());
        for (std::size_t i = 0; i < current.size(); ++i)
            for (std::size_t j = i + 1; j < current.size(); ++j) {
                std::vector<int> meet;
                std::set_intersection(current[i].begin(), current[i].end(), current[j].begin(),
                                      current[j].end(), std::back_inserter(meet));
                if (!meet.empty() && sets.insert(meet).second)
                    grew = true;
            }
    }
    std::vector<int> all(p.vertices().size());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = static_cast<int>(i);
    sets.insert(all);

    ExtremeSetFamily fam;
    fam.vertices = p.vertices();
    fam.faces.assign(sets.begin(), sets.end());
    std::stable_sort(fam.faces.begin(), fam.faces.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return fam;
}

int chord_violations(const Polytope& p, const std::vector<int>& face, int samples, std::uint64_t seed)
{
    if (face.empty())
        throw DomainError("chord test: empty face");
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, face.size() - 1);

    GeneratedCone hull{p.dim() + 1, {}};
    for (int i : face)
        hull.generators.push_back(lift_point(p.vertices()[static_cast<std::size_t>(i)]));
    auto vertex = [&](int i) -> const Point& { return p.vertices()[static_cast<std::size_t>(i)]; };

    int violations = 0;
    for (int s = 0; s < samples; ++s) {
        Point m = Point::Zero(p.dim());
        double total = 0.0;
        for (int i : face) {
            const double w = expo(rng);
            m += w * vertex(i);
            total += w;
        }
        m /= total;

        Vector d(p.dim());
        if (s % 2 == 0 && face.size() > 1) {
            d = vertex(face[pick(rng)]) - vertex(face[pick(rng)]);
            if (d.norm() == 0)
                d = vertex(face.front()) - vertex(face.back());
        } else {
            for (Eigen::Index k = 0; k < d.size(); ++k)
                d[k] = gauss(rng);
        }
        if (d.norm() == 0)
            continue;
        d /= d.norm();

        double t = kInf;
        for (const auto& f : p.facets()) {
            const double rate = std::abs(f.normal.dot(d));
            if (rate > 1e-14)
                t = std::min(t, std::max(0.0, f.offset - f.normal.dot(m)) / rate);
        }
        if (!(t > 1e-9))
            continue;
        for (const Point& e : {Point(m + t * d), Point(m - t * d)}) {
            if (!hull.contains(lift_point(e))) {
                ++violations;
                break;
            }
        }
    }
    return violations;
}

double hausdorff_distance(const std::vector<Point>& a, const std::vector<Point>& b)
{
    if (a.empty() || b.empty())
        throw DomainError("hausdorff_distance: empty set");
    auto directed = [](const std::vector<Point>& from, const std::vector<Point>& to) {
        double worst = 0.0;
        for (const auto& x : from) {
            require_dim(x, to.front().size(), "hausdorff_distance");
            double best = kInf;
            for (const auto& y : to)
                best = std::min(best, (x - y).norm());
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

std::string closedness_name(Closedness c)
{
    switch (c) {
    case Closedness::Closed:
        return "CLOSED";
    case Closedness::NotClosed:
        return "NOT_CLOSED";
    default:
        return "UNDETERMINED";
    }
}

ClosednessVerdict closedness_check(const Polytope& p)
{
    ClosednessVerdict v;
    v.polar_faces = extreme_sets(polar_polytope(p));
    v.verdict = Closedness::Closed;
    v.justification = "finite face family";
    return v;
}

ClosednessVerdict closedness_check(const ConvexBody& body)
{
    if (const auto* p = body.as_polytope())
        return closedness_check(*p);
    ClosednessVerdict v;
    if (body.dim() <= 2) {
        v.verdict = Closedness::Closed;
        v.justification = "dimension two";
        return v;
    }
    v.verdict = Closedness::Undetermined;
    v.justification = "no decision procedure for smooth bodies in dimension three or more";
    return v;
}

Eigen::Index CircleHull::dim() const
{
    if (!points.empty())
        return points.front().size();
    if (!circles.empty())
        return circles.front().center.size();
    return 0;
}

CircleHull::Face CircleHull::exposed_face(const Vector& d, double tol) const
{
    struct Piece
    {
        double value;
        Point at;
        int whole;  // circle index when the whole circle attains the value
    };
    std::vector<Piece> pieces;
    for (const auto& v : points)
        pieces.push_back({d.dot(v), v, -1});
    for (std::size_t i = 0; i < circles.size(); ++i) {
        const auto& c = circles[i];
        const double a = d.dot(c.e1), b = d.dot(c.e2);
        const double r = std::hypot(a, b);
        if (r <= tol)
            pieces.push_back({d.dot(c.center), c.center, static_cast<int>(i)});
        else
            pieces.push_back({d.dot(c.center) + c.radius * r, c.center + c.radius * (a * c.e1 + b * c.e2) / r, -1});
    }
    Face face;
    face.value = -kInf;
    for (const auto& p : pieces)
        face.value = std::max(face.value, p.value);
    const double cut = tol * std::max(1.0, std::abs(face.value));
    double runner_up = -kInf;
    for (const auto& p : pieces) {
        if (face.value - p.value <= cut) {
            if (p.whole >= 0)
                face.whole_circles.push_back(p.whole);
            else
                face.points.push_back(p.at);
        } else {
            runner_up = std::max(runner_up, p.value);
        }
    }
    face.gap = face.value - runner_up;
    return face;
}

std::vector<Point> CircleHull::inner_points(int per_circle, const std::vector<Point>& extra) const
{
    std::vector<Point> out = points;
    for (const auto& c : circles)
        for (int k = 0; k < per_circle; ++k) {
            const double a = 2.0 * std::numbers::pi * k / per_circle;
            out.push_back(c.center + c.radius * (std::cos(a) * c.e1 + std::sin(a) * c.e2));
        }
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
}

double CircleHull::chord_halfwidth(const Point& e, const Vector& d, const std::vector<Point>& inner) const
{
    const auto n = static_cast<int>(e.size());
    const int g = static_cast<int>(inner.size());
    lp::Program prog(2 * g + 1);
    prog.objective[2 * g] = 1.0;
    for (int k = 0; k < n; ++k) {
        std::vector<double> plus(2 * g + 1, 0.0), minus(2 * g + 1, 0.0);
        for (int j = 0; j < g; ++j) {
            plus[j] = inner[static_cast<std::size_t>(j)][k];
            minus[g + j] = inner[static_cast<std::size_t>(j)][k];
        }
        plus[2 * g] = -d[k];
        minus[2 * g] = d[k];
        prog.add(plus, lp::Relation::Equal, e[k]);
        prog.add(minus, lp::Relation::Equal, e[k]);
    }
    std::vector<double> s1(2 * g + 1, 0.0), s2(2 * g + 1, 0.0);
    for (int j = 0; j < g; ++j) {
        s1[j] = 1.0;
        s2[g + j] = 1.0;
    }
    prog.add(s1, lp::Relation::Equal, 1.0);
    prog.add(s2, lp::Relation::Equal, 1.0);
    const auto res = lp::solve(prog);
    if (res.status == lp::Status::Infeasible)
        return -1.0;
    if (res.status == lp::Status::Unbounded)
        return kInf;
    return res.objective;
}

CircleHull example2_polar()
{
    CircleHull h;
    for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0})
            h.points.push_back(make_vector({s1, 0.0, s2}));
    h.circles.push_back({Point::Zero(3), make_vector({1, 0, 0}), make_vector({0, 1, 0}), 1.0});
    return h;
}

CircleHull example4d_polar()
{
    CircleHull h;
    for (double s : {1.0, -1.0})
        h.circles.push_back({make_vector({0, 0, s, 0}), make_vector({1, 0, 0, 0}), make_vector({0, 1, 0, 0}), 1.0});
    for (double s : {1.0, -1.0})
        h.circles.push_back({make_vector({s, 0, 0, 0}), make_vector({0, 0, 1, 0}), make_vector({0, 0, 0, 1}), 1.0});
    return h;
}

namespace {

bool same_set(const std::vector<Point>& a, const std::vector<Point>& b, double tol)
{
    if (a.size() != b.size())
        return false;
    for (const auto& x : a) {
        bool found = false;
        for (const auto& y : b)
            found = found || (x - y).norm() <= tol;
        if (!found)
            return false;
    }
    return true;
}

}  // namespace

NonclosednessReport nonclosedness_witness(const std::string& fixture, int n_max, std::uint64_t seed)
{
    if (n_max < 1)
        throw DomainError("nonclosedness_witness: n_max must be positive");
    NonclosednessReport rep;
    rep.fixture = fixture;
    CircleHull hull;
    std::vector<Point> limit;
    std::vector<Point> (*set_at)(int) = nullptr;
    Vector (*functional_at)(int) = nullptr;
    double (*bound_at)(int) = nullptr;

    if (fixture == "example2") {
        hull = example2_polar();
        limit = {make_vector({1, 0, 0})};
        set_at = [](int n) {
            const double a = 1.0 / n;
            return std::vector<Point>{make_vector({std::cos(a), std::sin(a), 0.0})};
        };
        functional_at = [](int n) -> Vector {
            const double a = 1.0 / n;
            return make_vector({std::cos(a), std::sin(a), 0.0});
        };
        bound_at = [](int n) { return 2.0 * std::sin(1.0 / (2.0 * n)); };
        rep.chord_a = make_vector({1, 0, 1});
        rep.chord_b = make_vector({1, 0, -1});
    } else if (fixture == "example4d") {
        hull = example4d_polar();
        limit = {make_vector({1, 0, 1, 0}), make_vector({1, 0, -1, 0})};
        set_at = [](int n) {
            const double a = 1.0 / n;
            return std::vector<Point>{make_vector({std::cos(a), std::sin(a), 1.0, 0.0}),
                                      make_vector({std::cos(a), std::sin(a), -1.0, 0.0})};
        };
        functional_at = [](int n) -> Vector {
            const double a = 1.0 / n;
            return make_vector({std::cos(a), std::sin(a), 0.0, 0.0});
        };
        bound_at = [](int n) { return 2.0 * std::sin(1.0 / (2.0 * n)); };
        rep.chord_a = make_vector({1, 0, 0, 1});
        rep.chord_b = make_vector({1, 0, 0, -1});
    } else {
        throw DomainError("nonclosedness_witness: unknown fixture '" + fixture + "'");
    }
    rep.limit = limit;

    for (int n = 1; n <= n_max; ++n) {
        SequenceCheck chk;
        chk.n = n;
        chk.set = set_at(n);
        const auto face = hull.exposed_face(functional_at(n));
        chk.exposed = face.whole_circles.empty() && same_set(face.points, chk.set, 1e-12);
        chk.support_gap = face.gap;
        chk.hausdorff = hausdorff_distance(chk.set, limit);
        chk.bound = bound_at(n);
        rep.sequence.push_back(chk);
    }

    Vector limit_dir = Vector::Zero(hull.dim());
    limit_dir[0] = 1.0;
    const auto lface = hull.exposed_face(limit_dir);
    rep.limit_exposed = lface.whole_circles.empty() && same_set(lface.points, limit, 1e-12);

    const std::vector<Point> inner = hull.inner_points(256, set_at(n_max));
    const Point mid = 0.5 * (rep.chord_a + rep.chord_b);
    // The midpoint must lie in the limit set (a point, or a segment).
    double mid_err = kInf;
    if (limit.size() == 1) {
        mid_err = (mid - limit[0]).norm();
    } else {
        const Vector seg = limit[1] - limit[0];
        const double t = std::clamp((mid - limit[0]).dot(seg) / seg.squaredNorm(), 0.0, 1.0);
        mid_err = (mid - (limit[0] + t * seg)).norm();
    }
    rep.midpoint_error = mid_err;
    const Vector probe = Vector::Unit(hull.dim(), 1);
    rep.endpoints_in_polar = hull.chord_halfwidth(rep.chord_a, probe, inner) >= 0 &&
                             hull.chord_halfwidth(rep.chord_b, probe, inner) >= 0;
    auto outside = [&](const Point& e) {
        if (limit.size() == 1)
            return (e - limit[0]).norm() > 1e-9;
        const Vector seg = limit[1] - limit[0];
        const double t = std::clamp((e - limit[0]).dot(seg) / seg.squaredNorm(), 0.0, 1.0);
        return (e - (limit[0] + t * seg)).norm() > 1e-9;
    };
    rep.endpoints_outside_limit = outside(rep.chord_a) && outside(rep.chord_b);
    rep.limit_extreme = !(rep.midpoint_error == 0.0 && rep.endpoints_in_polar && rep.endpoints_outside_limit);

    // Random chord search around the last sequence set: the best halfwidth
    // should vanish for an extreme set.
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto last = set_at(n_max);
    Point centre = Point::Zero(hull.dim());
    for (const auto& v : last)
        centre += v;
    centre /= static_cast<double>(last.size());
    for (int s = 0; s < 1000; ++s) {
        Vector d(hull.dim());
        for (Eigen::Index k = 0; k < d.size(); ++k)
            d[k] = gauss(rng);
        d /= d.norm();
        if (last.size() == 2) {
            // Chords along the segment itself stay inside it.
            const Vector seg = (last[1] - last[0]).normalized();
            d -= d.dot(seg) * seg;
            if (d.norm() < 1e-9)
                continue;
            d /= d.norm();
        }
        rep.searched_halfwidth = std::max(rep.searched_halfwidth, hull.chord_halfwidth(centre, d, inner));
    }
    return rep;
}

}  // namespace hilbert
