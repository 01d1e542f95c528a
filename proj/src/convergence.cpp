#include "hilbert/convergence.hpp"

#include "hilbert/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hilbert {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Neumaier summation; the defect sums run over up to thousands of steps.
struct CompensatedSum
{
    double sum = 0.0;
    double comp = 0.0;

    void add(double v)
    {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace

ProbeGrid make_probe_grid(const ConvexBody& body, const Point& basepoint, std::size_t count,
                          std::uint64_t seed, double margin)
{
    require_dim(basepoint, body.dim(), "probe grid basepoint");
    if (!body.contains(basepoint))
        throw DomainError("probe grid: basepoint is not interior (" + body.violated_constraint(basepoint) + ")");
    if (margin < 0)
        margin = 10.0 * body.tol();
    ProbeGrid grid;
    grid.scheme = "basepoint + scrambled Halton (seed " + std::to_string(seed) + ") in bounding box";
    grid.points.push_back(basepoint);
    const auto [lo, hi] = body.bounding_box();
    ScrambledHalton seq(body.dim(), seed);
    for (std::uint64_t i = 0; grid.points.size() < count; ++i) {
        if (i > 1000000)
            throw DomainError("probe grid: too few interior samples");
        const Point p = lo + seq(i).cwiseProduct(hi - lo);
        if (body.margin(p) > margin)
            grid.points.push_back(p);
    }
    return grid;
}

ProbeGrid make_probe_grid(const PolyCone& c, const Point& basepoint, std::size_t count, std::uint64_t seed,
                          double margin)
{
    require_dim(basepoint, c.dim(), "probe grid basepoint");
    if (!c.contains(basepoint))
        throw DomainError("probe grid: basepoint is not inside the cone");
    if (margin < 0)
        margin = 10.0 * c.tol();
    ProbeGrid grid;
    grid.scheme = "basepoint + scrambled Halton (seed " + std::to_string(seed) + ") around basepoint";
    grid.points.push_back(basepoint);
    const double r = basepoint.norm();
    ScrambledHalton seq(c.dim(), seed);
    for (std::uint64_t i = 0; grid.points.size() < count; ++i) {
        if (i > 1000000)
            throw DomainError("probe grid: too few interior samples");
        const Point p = basepoint + r * (2.0 * seq(i) - Vector::Ones(c.dim()));
        const double n = p.norm();
        if (n > 0 && c.size() > 0 && c.slacks(p).minCoeff() / n > margin)
            grid.points.push_back(p);
        else if (n > 0 && c.size() == 0)
            grid.points.push_back(p);
    }
    return grid;
}

DistanceOracle DistanceOracle::for_body(const ConvexBody& body)
{
    DistanceOracle o;
    o.body_ = body;
    if (const auto* p = body.as_polytope()) {
        o.cone_ = lift_polytope_to_cone(*p);
        o.lifted_ = true;
    }
    return o;
}

DistanceOracle DistanceOracle::for_cone(const PolyCone& c)
{
    DistanceOracle o;
    o.cone_ = c;
    return o;
}

Eigen::Index DistanceOracle::dim() const
{
    if (body_)
        return body_->dim();
    return cone_->dim();
}

Vector DistanceOracle::lift(const Point& x) const
{
    return lifted_ ? lift_point(x) : x;
}

SeqPoint DistanceOracle::point(const Point& x) const
{
    require_dim(x, dim(), "sequence point");
    SeqPoint s{x, Vector(), 0.0};
    if (cone_) {
        const Vector sl = cone_->slacks(lift(x));
        if (sl.size() > 0 && !(sl.minCoeff() > 0))
            throw DomainError("sequence point is not interior");
        s.log_slacks = sl.array().log();
    } else if (!body_->contains(x)) {
        throw DomainError("sequence point is not interior (" + body_->violated_constraint(x) + ")");
    }
    return s;
}

SeqPoint DistanceOracle::segment_point(const Point& z, const Point& p, double log_lambda) const
{
    require_dim(z, dim(), "segment target");
    require_dim(p, dim(), "segment start");
    if (!(log_lambda <= 0))
        throw DomainError("segment point: lambda must lie in (0, 1]");
    const double lambda = std::exp(log_lambda);
    SeqPoint s{(1.0 - lambda) * z + lambda * p, Vector(), log_lambda};
    if (!cone_) {
        if (!body_->contains(s.x))
            throw DomainError("segment point is not interior (" + body_->violated_constraint(s.x) + ")");
        return s;
    }
    const Vector zl = lift(z);
    const Vector sz = cone_->slacks(zl);
    const Vector sp = cone_->slacks(lift(p));
    const double snap = cone_->tol() * std::max(1.0, zl.norm());
    s.log_slacks.resize(sz.size());
    for (Eigen::Index i = 0; i < sz.size(); ++i) {
        if (sz[i] < -snap)
            throw DomainError("segment target lies outside the closed domain");
        if (std::abs(sz[i]) <= snap) {
            if (!(sp[i] > 0))
                throw DomainError("segment start is not inside the tangent cone at the target");
            s.log_slacks[i] = log_lambda + std::log(sp[i]);
        } else {
            // NaN marks a point outside the domain
            const double f = lambda * (sp[i] / sz[i] - 1.0);
            s.log_slacks[i] = f > -1.0 ? std::log(sz[i]) + std::log1p(f) : kNaN;
        }
    }
    return s;
}

double DistanceOracle::funk(const SeqPoint& x, const SeqPoint& y) const
{
    if (cone_)
        return log_m_ratio_from_log_slacks(x.log_slacks, y.log_slacks);
    return funk_body(*body_, x.x, y.x);
}

double DistanceOracle::funk_restricted(const SeqPoint& x, const SeqPoint& y, const std::vector<int>& normals) const
{
    if (!cone_)
        throw UnsupportedError("restricted gauge needs a polyhedral geometry");
    double best = -kInf;
    for (int i : normals)
        best = std::max(best, x.log_slacks[i] - y.log_slacks[i]);
    return best;
}

double DistanceOracle::distance(Metric m, const SeqPoint& x, const SeqPoint& y) const
{
    switch (m) {
    case Metric::Funk:
        return funk(x, y);
    case Metric::Reverse:
        return funk(y, x);
    default:
        return funk(x, y) + funk(y, x);
    }
}

SequencePlan SequencePlan::segment(const Point& start, const Point& target, int count, int first)
{
    SequencePlan p;
    p.kind = Kind::Segment;
    p.start = start;
    p.targets = {target};
    p.count = count;
    p.first = first;
    return p;
}

SequencePlan SequencePlan::oscillating(const Point& start, const Point& a, const Point& b, int count, int first)
{
    if ((a - b).norm() <= kDefaultGeoTol)
        throw DomainError("oscillating plan: targets are equal");
    SequencePlan p;
    p.kind = Kind::Oscillating;
    p.start = start;
    p.targets = {a, b};
    p.count = count;
    p.first = first;
    return p;
}

SequencePlan SequencePlan::from_points(std::vector<Point> points)
{
    SequencePlan p;
    p.kind = Kind::Custom;
    p.custom = std::move(points);
    p.count = static_cast<int>(p.custom.size());
    return p;
}

std::vector<SeqPoint> SequencePlan::generate(const DistanceOracle& oracle) const
{
    std::vector<SeqPoint> out;
    if (kind == Kind::Custom) {
        for (const auto& x : custom)
            out.push_back(oracle.point(x));
        return out;
    }
    if (targets.empty() || count < 1 || first < 0)
        throw DomainError("sequence plan: needs a target and a positive count");
    for (int k = 0; k < count; ++k) {
        const int n = first + k;
        const Point& z = targets[static_cast<std::size_t>(k) % targets.size()];
        out.push_back(oracle.segment_point(z, start, -n * kLn2));
        if (!out.back().log_slacks.allFinite())
            throw DomainError("sequence point " + std::to_string(n) + " is not interior");
    }
    return out;
}

ConvergenceReport horofunction_limit(const DistanceOracle& oracle, const std::vector<SeqPoint>& sequence,
                                     const ProbeGrid& grid, Metric metric,
                                     const std::function<double(const Point&)>& reference)
{
    if (sequence.size() < 2)
        throw DomainError("horofunction_limit: need at least two sequence points");
    if (grid.points.empty())
        throw DomainError("horofunction_limit: empty probe grid");
    std::vector<SeqPoint> probes;
    for (const auto& x : grid.points)
        probes.push_back(oracle.point(x));

    ConvergenceReport rep;
    for (const auto& y : sequence) {
        const double base = oracle.distance(metric, probes[0], y);
        std::vector<double> row(probes.size());
        for (std::size_t j = 0; j < probes.size(); ++j)
            row[j] = oracle.distance(metric, probes[j], y) - base;
        rep.traces.push_back(std::move(row));
    }
    const std::size_t n = rep.traces.size();
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(rep.window), n);
    for (std::size_t j = 0; j < probes.size(); ++j) {
        double lo = kInf, hi = -kInf;
        for (std::size_t k = n - w; k < n; ++k) {
            lo = std::min(lo, rep.traces[k][j]);
            hi = std::max(hi, rep.traces[k][j]);
        }
        if (hi - lo > rep.tail_oscillation) {
            rep.tail_oscillation = hi - lo;
            rep.worst_probe = j;
        }
    }
    rep.final.points = grid.points;
    rep.final.values = rep.traces.back();
    if (reference) {
        double dev = 0.0;
        for (std::size_t j = 0; j < probes.size(); ++j)
            dev = std::max(dev, std::abs(rep.final.values[j] - reference(grid.points[j])));
        rep.sup_deviation = dev;
    }
    return rep;
}

ConvergenceReport horofunction_limit(const DistanceOracle& oracle, const SequencePlan& plan,
                                     const ProbeGrid& grid, Metric metric,
                                     const std::function<double(const Point&)>& reference)
{
    return horofunction_limit(oracle, plan.generate(oracle), grid, metric, reference);
}

DefectReport almost_geodesic_defect(std::size_t count, const std::function<double(std::size_t, std::size_t)>& d)
{
    if (count < 2)
        throw DomainError("almost_geodesic_defect: need at least two points");
    DefectReport rep;
    CompensatedSum path;
    for (std::size_t l = 1; l < count; ++l) {
        path.add(d(l - 1, l));
        rep.defect.push_back(path.value() - d(0, l));
    }
    rep.epsilon = std::max(0.0, *std::max_element(rep.defect.begin(), rep.defect.end()));
    return rep;
}

DefectReport almost_geodesic_defect(const DistanceOracle& oracle, Metric metric, const std::vector<SeqPoint>& points)
{
    return almost_geodesic_defect(points.size(), [&](std::size_t i, std::size_t j) {
        return oracle.distance(metric, points[i], points[j]);
    });
}

SplitDefect split_defect(const DistanceOracle& oracle, const std::vector<SeqPoint>& points)
{
    SplitDefect s;
    s.hilbert = almost_geodesic_defect(oracle, Metric::Hilbert, points);
    s.funk = almost_geodesic_defect(oracle, Metric::Funk, points);
    s.reverse = almost_geodesic_defect(oracle, Metric::Reverse, points);
    for (std::size_t l = 0; l < s.hilbert.defect.size(); ++l)
        s.split_residual = std::max(
            s.split_residual, std::abs(s.hilbert.defect[l] - s.funk.defect[l] - s.reverse.defect[l]));
    return s;
}

AlmostGeodesic construct_almost_geodesic(const BusemannDescriptor& d, const GeodesicOptions& options)
{
    validate(d);
    if (!d.chain.steps.empty())
        throw UnsupportedError("construct_almost_geodesic: only single-step chains are supported");
    if (options.count < 1 || options.budget < 0)
        throw DomainError("construct_almost_geodesic: count must be positive");

    const PolyCone& c = d.cone;
    const auto oracle = DistanceOracle::for_cone(c);
    const Point z = d.z / d.z.norm();
    const Point& p = d.p;
    const std::vector<int> active = c.active_set(z);

    Vector log_sz = c.slacks(z);
    for (Eigen::Index i = 0; i < log_sz.size(); ++i)
        log_sz[i] = std::abs(log_sz[i]) <= c.tol() ? -kInf : std::log(log_sz[i]);
    auto log_rev_gauge = [&](const SeqPoint& y) { return log_m_ratio_from_log_slacks(log_sz, y.log_slacks); };

    const SeqPoint b = oracle.point(d.basepoint);
    std::vector<SeqPoint> probes;
    for (const auto& q : options.probes)
        probes.push_back(oracle.point(q));
    if (probes.empty())
        probes.push_back(b);

    auto funk_gap = [&](const SeqPoint& u, const SeqPoint& y) {
        return oracle.funk(u, y) - oracle.funk_restricted(u, y, active);
    };

    AlmostGeodesic out;
    const double pz = (p - z).norm();
    double log_lambda = -kLn2;
    for (int n = 1; n <= options.count; ++n) {
        if (n > 1)
            log_lambda -= kLn2;
        int halvings = 0;
        while (true) {
            const SeqPoint y = oracle.segment_point(z, p, log_lambda);
            bool ok = y.log_slacks.allFinite();
            ok = ok && std::exp(log_lambda) * pz < 1.0 / n;
            ok = ok && funk_gap(probes[static_cast<std::size_t>(n - 1) % probes.size()], y) < 1.0 / n;
            ok = ok && funk_gap(b, y) < 1.0 / n;
            if (ok && n > 1) {
                const SeqPoint& prev = out.points.back();
                const double tol = std::ldexp(1.0, -(n - 1));
                ok = funk_gap(prev, y) < tol;
                ok = ok && oracle.funk(y, prev) + log_rev_gauge(y) - log_rev_gauge(prev) < tol;
            }
            if (ok) {
                out.points.push_back(y);
                out.halvings.push_back(halvings);
                break;
            }
            if (++halvings > options.budget)
                throw BudgetExhausted("construct_almost_geodesic: budget exhausted at step " + std::to_string(n));
            log_lambda -= kLn2;
        }
    }
    return out;
}

double cross_ratio_separation(const ConvexBody& body, const Point& x, const Point& y)
{
    require_dim(x, body.dim(), "cross_ratio_separation");
    require_dim(y, body.dim(), "cross_ratio_separation");
    const double len = (x - y).norm();
    if (len <= body.tol())
        throw DomainError("cross_ratio_separation: points are equal");
    const Vector u = (x - y) / len;
    const auto [lo, hi] = body.bounding_box();
    const double diam = (hi - lo).norm();
    const double closure_tol = 1e-9;
    auto reach = [&](const Point& from, const Vector& dir) {
        double a = 0.0, b = diam;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b)
                break;
            if (body.margin(from + mid * dir) >= -closure_tol)
                a = mid;
            else
                b = mid;
        }
        return a;
    };
    const double wx = reach(x, u);
    const double zy = reach(y, -u);
    if (wx <= 1e-6 * diam || zy <= 1e-6 * diam)
        return kInf;
    return std::log(((wx + len) * (zy + len)) / (wx * zy));
}

OscillationReport theorem2_harness(const ConvexBody& body, const Point& a, const Point& b, const ProbeGrid& grid,
                                int count)
{
    if ((a - b).norm() <= body.tol())
        throw DomainError("theorem2_harness: targets are equal");
    const auto oracle = DistanceOracle::for_body(body);
    OscillationReport rep;
    if (!oracle.polyhedral())
        count = std::min(count, kPlainDepth);
    rep.limit = horofunction_limit(oracle, SequencePlan::oscillating(grid.points.at(0), a, b, count), grid,
                                   Metric::Hilbert);
    rep.separation = cross_ratio_separation(body, a, b);
    return rep;
}

namespace {

// (1 − a·u) / (1 − a·q) for the polar extreme point a(θ) = (cos θ, sin θ, 0)
double circle_ratio(const Point& u, double theta, double phi, double delta)
{
    const double num = 1.0 - std::cos(theta) * u[0] - std::sin(theta) * u[1];
    const double s = std::sin(0.5 * (theta - phi));
    return num / (2.0 * s * s + delta * std::cos(theta - phi));
}

}  // namespace

double example2_log_gauge(const Point& u, double phi, double delta)
{
    require_dim(u, 3, "example2_log_gauge");
    if (!(delta > 0 && delta < 1))
        throw DomainError("example2_log_gauge: delta must lie in (0, 1)");
    double best = -kInf;
    const double cp = std::cos(phi);
    const double sh = std::sin(0.5 * phi);
    for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0}) {
            const double num = 1.0 - s1 * u[0] - s2 * u[2];
            const double gap = s1 > 0 ? 2.0 * sh * sh : 1.0 + cp;
            best = std::max(best, num / (gap + delta * s1 * cp));
        }

    std::vector<double> thetas;
    constexpr int kUniform = 4096;
    for (int k = 0; k < kUniform; ++k)
        thetas.push_back(phi - std::numbers::pi + 2.0 * std::numbers::pi * k / kUniform);
    for (int e = -440; e <= 20; ++e) {
        const double off = std::pow(10.0, e / 40.0);
        thetas.push_back(phi + off);
        thetas.push_back(phi - off);
    }
    thetas.push_back(phi);
    std::sort(thetas.begin(), thetas.end());
    std::size_t arg = 0;
    double top = -kInf;
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        const double v = circle_ratio(u, thetas[k], phi, delta);
        if (v > top) {
            top = v;
            arg = k;
        }
    }
    double lo = thetas[arg > 0 ? arg - 1 : arg];
    double hi = thetas[arg + 1 < thetas.size() ? arg + 1 : arg];
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
    double fc = circle_ratio(u, c, phi, delta), fd = circle_ratio(u, d, phi, delta);
    for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, std::abs(phi)); ++it) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - g * (hi - lo);
            fc = circle_ratio(u, c, phi, delta);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + g * (hi - lo);
            fd = circle_ratio(u, d, phi, delta);
        }
    }
    top = std::max({top, fc, fd});
    return std::log(std::max(best, top));
}

Example2Report example2_harness(const ProbeGrid& grid, int n_max)
{
    if (grid.points.empty())
        throw DomainError("example2_harness: empty grid");
    if (n_max < 10)
        throw DomainError("example2_harness: n_max must be at least 10");
    const Point& b = grid.points[0];
    Example2Report rep;
    for (double e = 1.0; std::pow(10.0, e) <= n_max * (1 + 1e-12); e += 0.5)
        rep.schedule.push_back(static_cast<int>(std::lround(std::pow(10.0, e))));

    auto sample = [&](double phi, double delta) {
        SampledFunction f;
        f.points = grid.points;
        const double base = example2_log_gauge(b, phi, delta);
        for (const auto& u : grid.points)
            f.values.push_back(example2_log_gauge(u, phi, delta) - base);
        return f;
    };

    for (int n : rep.schedule) {
        const double nn = static_cast<double>(n);
        rep.funk_limit = sample(1.0 / nn, 1.0 / (nn * nn * nn));
        double dev = 0.0;
        for (std::size_t j = 0; j < grid.points.size(); ++j) {
            const auto& u = grid.points[j];
            const double target = std::log(1.0 - u[0]) - std::log(1.0 - b[0]);
            dev = std::max(dev, std::abs(rep.funk_limit.values[j] - target));
        }
        rep.deviation.push_back(dev);
    }

    rep.radial_limit = sample(0.0, std::ldexp(1.0, -40));
    for (std::size_t j = 0; j < grid.points.size(); ++j) {
        const auto& u = grid.points[j];
        const double target =
            std::log(1.0 - u[0] + std::abs(u[2])) - std::log(1.0 - b[0] + std::abs(b[2]));
        rep.radial_deviation = std::max(rep.radial_deviation, std::abs(rep.radial_limit.values[j] - target));
        const double gap = std::abs(rep.funk_limit.values[j] - rep.radial_limit.values[j]);
        if (gap > rep.separation) {
            rep.separation = gap;
            rep.separation_probe = j;
        }
    }
    return rep;
}

}  // namespace hilbert
