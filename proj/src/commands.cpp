#include "hilbert/commands.hpp"

#include "hilbert/convergence.hpp"
#include "hilbert/fixtures.hpp"
#include "hilbert/io.hpp"
#include "hilbert/polar.hpp"
#include "hilbert/sampling.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace hilbert::cli {

using io::json;

namespace {

std::string body_label(const RunConfig& config)
{
    if (config.fixture)
        return *config.fixture;
    return config.body_path.value_or("");
}

void require_interior(const ConvexBody& body, const Point& x, const char* what)
{
    require_dim(x, body.dim(), what);
    if (!body.contains(x)) {
        const std::string c = body.violated_constraint(x);
        throw DomainError(std::string(what) + " is not interior (violates " + (c.empty() ? "margin" : c) + ")");
    }
}

/// Uniform interior samples by rejection from the bounding box.
class InteriorSampler
{
  public:
    InteriorSampler(const ConvexBody& body, std::uint64_t seed) : body_(body), rng_(seed)
    {
        std::tie(lo_, hi_) = body.bounding_box();
    }

    Point operator()()
    {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int tries = 0; tries < 100000; ++tries) {
            Point p(body_.dim());
            for (Eigen::Index k = 0; k < p.size(); ++k)
                p[k] = lo_[k] + unit(rng_) * (hi_[k] - lo_[k]);
            if (body_.margin(p) > 10.0 * body_.tol())
                return p;
        }
        throw DomainError("interior sampler: body too thin for its bounding box");
    }

    Vector direction()
    {
        std::normal_distribution<double> gauss(0.0, 1.0);
        Vector u(body_.dim());
        do {
            for (Eigen::Index k = 0; k < u.size(); ++k)
                u[k] = gauss(rng_);
        } while (u.norm() < 1e-6);
        return u / u.norm();
    }

  private:
    const ConvexBody& body_;
    std::mt19937_64 rng_;
    Point lo_, hi_;
};

struct Property
{
    std::string name;
    bool pass = true;
    double max_residual = 0.0;
    long samples = 0;
    std::string note;
};

Property convex_position(const Polytope& p)
{
    Property prop{"convex-position", true, 0.0, static_cast<long>(p.input_vertices().size()), ""};
    const auto bad = p.non_extreme_inputs();
    if (!bad.empty()) {
        prop.pass = false;
        prop.note = "input vertex " + std::to_string(bad.front()) + " is not extreme";
        for (int i : bad)
            prop.max_residual = std::max(prop.max_residual, p.min_slack(p.input_vertices()[static_cast<std::size_t>(i)]));
    }
    return prop;
}

std::vector<Property> metric_axioms(const ConvexBody& body, std::uint64_t seed, int samples)
{
    InteriorSampler draw(body, seed);
    Property sym{"hilbert-symmetry", true, 0.0, samples, ""};
    Property nonneg{"hilbert-nonnegativity", true, 0.0, samples, ""};
    Property ident{"identity-of-indiscernibles", true, 0.0, samples, ""};
    Property tri{"hilbert-triangle", true, 0.0, samples, ""};
    Property ftri{"funk-triangle", true, 0.0, samples, ""};
    Property asym{"funk-asymmetry", true, 0.0, samples, ""};
    for (int s = 0; s < samples; ++s) {
        const Point x = draw(), y = draw(), z = draw();
        const double hxy = hilbert(body, x, y), hyx = hilbert(body, y, x);
        sym.max_residual = std::max(sym.max_residual, std::abs(hxy - hyx));
        nonneg.max_residual = std::max(nonneg.max_residual, -hxy);
        ident.max_residual = std::max(ident.max_residual, std::abs(hilbert(body, x, x)));
        if ((x - y).norm() > 10.0 * body.tol() && !(hxy > 0))
            ident.max_residual = std::max(ident.max_residual, 1.0);
        tri.max_residual = std::max(tri.max_residual, hilbert(body, x, z) - hxy - hilbert(body, y, z));
        const double fxy = funk_body(body, x, y);
        ftri.max_residual = std::max(ftri.max_residual, funk_body(body, x, z) - fxy - funk_body(body, y, z));
        asym.max_residual = std::max(asym.max_residual, std::abs(fxy - funk_body(body, y, x)));
    }
    sym.pass = sym.max_residual <= 1e-10;
    nonneg.pass = nonneg.max_residual <= 0.0;
    ident.pass = ident.max_residual == 0.0;
    tri.pass = tri.max_residual <= 1e-9;
    ftri.pass = ftri.max_residual <= 1e-9;
    asym.pass = asym.max_residual > 0.0;
    asym.note = "largest |funk(x,y) - funk(y,x)|";
    return {sym, nonneg, ident, tri, ftri, asym};
}

std::vector<Property> route_equivalence(const ConvexBody& body, std::uint64_t seed, int samples)
{
    InteriorSampler draw(body, seed);
    Property funk{"route-equivalence-funk", true, 0.0, samples, ""};
    Property hil{"route-equivalence-hilbert", true, 0.0, samples, ""};
    for (int s = 0; s < samples; ++s) {
        const Point x = draw(), y = draw();
        funk.max_residual = std::max(funk.max_residual, std::abs(funk_body(body, x, y) - funk_gauge_route(body, x, y)));
        hil.max_residual = std::max(hil.max_residual, std::abs(hilbert(body, x, y) -
                                                               distance_gauge_route(body, Metric::Hilbert, x, y)));
    }
    funk.pass = funk.max_residual <= 1e-9;
    hil.pass = hil.max_residual <= 1e-9;
    return {funk, hil};
}

std::vector<Property> geodesic_segments(const ConvexBody& body, std::uint64_t seed, int samples)
{
    InteriorSampler draw(body, seed);
    std::mt19937_64 rng(seed + 1);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    Property funk{"funk-segments-additive", true, 0.0, samples, ""};
    Property hil{"hilbert-segments-additive", true, 0.0, samples, ""};
    for (int s = 0; s < samples; ++s) {
        const Point x = draw(), z = draw();
        const Point y = x + unit(rng) * (z - x);
        funk.max_residual =
            std::max(funk.max_residual, std::abs(funk_body(body, x, z) - funk_body(body, x, y) - funk_body(body, y, z)));
        hil.max_residual =
            std::max(hil.max_residual, std::abs(hilbert(body, x, z) - hilbert(body, x, y) - hilbert(body, y, z)));
    }
    funk.pass = funk.max_residual <= 1e-9;
    hil.pass = hil.max_residual <= 1e-9;
    return {funk, hil};
}

std::vector<Property> ray_exit_consistency(const ConvexBody& body, std::uint64_t seed, int samples)
{
    InteriorSampler draw(body, seed);
    Property prop{"ray-exit-consistency", true, 0.0, samples, ""};
    const double eps = 10.0 * body.tol();
    int failures = 0;
    for (int s = 0; s < samples; ++s) {
        const Point x = draw();
        const Vector u = draw.direction();
        const double t = body.ray_exit(x, u);
        const bool before = body.margin(x + (t - eps) * u) > 0;
        const bool after = body.margin(x + (t + eps) * u) < 0;
        if (!before || !after)
            ++failures;
        prop.max_residual = std::max(prop.max_residual, std::abs(body.margin(x + t * u)));
    }
    prop.pass = failures == 0;
    if (failures > 0)
        prop.note = std::to_string(failures) + " inconsistent rays";
    return {prop};
}

std::vector<Property> polar_suite(const Polytope& p, std::uint64_t seed)
{
    Property bip{"bipolar", true, 0.0, 1, ""};
    Property chords{"face-chords", true, 0.0, 0, ""};
    if (!(p.min_slack(Point::Zero(p.dim())) > p.tol())) {
        bip.pass = false;
        bip.note = "origin is not interior";
        return {bip};
    }
    const Polytope polar = polar_polytope(p);
    const Polytope bipolar = polar_polytope(polar);
    bip.max_residual = hausdorff_distance(bipolar.vertices(), p.vertices());
    bip.pass = bip.max_residual <= 1e-9;
    const auto fam = extreme_sets(p);
    int violations = 0;
    for (std::size_t f = 0; f < fam.faces.size(); ++f) {
        violations += chord_violations(p, fam.faces[f], 1000, seed + f);
        chords.samples += 1000;
    }
    chords.max_residual = violations;
    chords.pass = violations == 0;
    return {bip, chords};
}

json properties_json(const std::vector<Property>& props)
{
    json out = json::array();
    for (const auto& p : props) {
        json j = {{"property", p.name}, {"pass", p.pass}, {"max_residual", p.max_residual}, {"samples", p.samples}};
        if (!p.note.empty())
            j["note"] = p.note;
        out.push_back(j);
    }
    return out;
}

std::vector<Point> sphere_directions(Eigen::Index d, int resolution, std::uint64_t seed)
{
    std::vector<Point> dirs;
    if (d == 1)
        return {make_vector({1.0}), make_vector({-1.0})};
    if (d == 2) {
        for (int k = 0; k < resolution; ++k) {
            const double a = 2.0 * std::numbers::pi * k / resolution;
            dirs.push_back(make_vector({std::cos(a), std::sin(a)}));
        }
        return dirs;
    }
    ScrambledHalton seq(d, seed);
    for (std::uint64_t i = 0; static_cast<int>(dirs.size()) < resolution; ++i) {
        const Vector v = 2.0 * seq(i) - Vector::Ones(d);
        const double n = v.norm();
        if (n > 0.1 && n <= 1.0)
            dirs.push_back(v / n);
    }
    return dirs;
}

struct LevelCrossing
{
    Point x;
    double value = 0.0;
    int flag = 0;  // 0 found, 1 unreachable, 2 tolerance not met
};

LevelCrossing find_level(const std::function<double(const Point&)>& f, const Point& origin, const Vector& u,
                         double t_exit, double level)
{
    constexpr int kScan = 160;
    auto at = [&](double s) { return Point(origin + s * t_exit * u); };
    auto g = [&](double s) { return f(at(s)) - level; };
    double prev_s = 1.0 - std::exp2(-0.25);
    double prev_g = g(prev_s);
    for (int k = 2; k <= kScan; ++k) {
        const double s = 1.0 - std::exp2(-0.25 * k);
        const double gs = g(s);
        if (std::signbit(gs) != std::signbit(prev_g) || gs == 0.0) {
            double lo = prev_s, hi = s, glo = prev_g;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi)
                    break;
                const double gm = g(mid);
                if (gm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (std::signbit(gm) == std::signbit(glo)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            const double gl = g(lo), gh = g(hi);
            const double best = std::abs(gl) <= std::abs(gh) ? lo : hi;
            LevelCrossing c{at(best), f(at(best)), 0};
            if (!(std::abs(c.value - level) <= 1e-8))
                c.flag = 2;
            return c;
        }
        prev_s = s;
        prev_g = gs;
    }
    const double g0 = f(origin) - level;
    if (std::abs(g0) <= 1e-12)
        return {origin, f(origin), 0};
    return {at(prev_s), prev_g + level, 1};
}

}  // namespace

ConvexBody load_body(const RunConfig& config)
{
    if (!(config.tol > 0))
        throw DomainError("tolerance must be positive");
    if (config.fixture && config.body_path)
        throw DomainError("give either --fixture or --body, not both");
    if (config.fixture)
        return fixture_body(*config.fixture, config.tol);
    if (config.body_path)
        return io::load_body(*config.body_path, config.tol);
    throw DomainError("no body given (use --fixture or --body)");
}

Point load_basepoint(const RunConfig& config, const ConvexBody& body)
{
    Point b = config.basepoint.value_or(config.fixture ? fixture_basepoint(*config.fixture) : body.interior_point());
    require_interior(body, b, "basepoint");
    return b;
}

CommandResult cmd_dist(const RunConfig& config, const Point& x, const Point& y, Metric metric)
{
    const ConvexBody body = load_body(config);
    require_interior(body, x, "x");
    require_interior(body, y, "y");
    const double cross = distance(body, metric, x, y);
    const double cone = distance_gauge_route(body, metric, x, y);
    if (config.format == "csv") {
        return {Ok, "metric,cross_ratio,cone,difference\n" + metric_name(metric) + "," + io::format_double(cross) +
                        "," + io::format_double(cone) + "," + io::format_double(std::abs(cross - cone)) + "\n"};
    }
    json out = {{"body", body_label(config)},
                {"metric", metric_name(metric)},
                {"x", io::to_json(x)},
                {"y", io::to_json(y)},
                {"cross_ratio", cross},
                {"cone", cone},
                {"difference", std::abs(cross - cone)}};
    return {Ok, out.dump(2) + "\n"};
}

CommandResult cmd_horosphere(const RunConfig& config, const HorosphereRequest& request)
{
    if (request.resolution < 8)
        throw DomainError("horosphere resolution must be at least 8");
    if (!std::isfinite(request.level))
        throw DomainError("horosphere level must be finite");
    if (request.center && request.descriptor)
        throw DomainError("give either a center point or a descriptor");
    const ConvexBody body = load_body(config);
    const Point b = load_basepoint(config, body);

    std::function<double(const Point&)> f;
    Point origin = b;
    if (request.descriptor) {
        const auto* poly = body.as_polytope();
        if (!poly)
            throw UnsupportedError("descriptor horospheres need a polytope body");
        std::ifstream in(*request.descriptor);
        if (!in)
            throw DomainError("cannot open descriptor '" + *request.descriptor + "'");
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw DomainError(std::string("cannot parse descriptor: ") + e.what());
        }
        const PolyCone cone = lift_polytope_to_cone(*poly);
        const auto d = io::descriptor_from_json(j, cone, b);
        HorofunctionEvaluator h;
        switch (request.metric) {
        case Metric::Reverse:
            h = reverse_horofunction(cone, d.z, d.basepoint);
            break;
        case Metric::Funk:
            h = funk_horofunction(d.chain.final_cone(), d.p, d.basepoint);
            break;
        default:
            h = busemann_horofunction(d);
        }
        f = [h](const Point& x) { return h(lift_point(x)); };
    } else {
        const Point c = request.center.value_or(b);
        require_interior(body, c, "center");
        origin = c;
        const Metric m = request.metric;
        f = [&body, c, m](const Point& x) { return distance(body, m, c, x); };
    }

    const auto dirs = sphere_directions(body.dim(), request.resolution, config.seed);
    std::vector<LevelCrossing> rows;
    for (const auto& u : dirs)
        rows.push_back(find_level(f, origin, u, body.ray_exit(origin, u), request.level));

    std::vector<std::string> cols{"dir_index"};
    for (Eigen::Index k = 0; k < body.dim(); ++k)
        cols.push_back("x" + std::to_string(k));
    cols.push_back("value");
    cols.push_back("flag");
    if (config.format == "csv") {
        std::string out;
        for (std::size_t i = 0; i < cols.size(); ++i)
            out += (i ? "," : "") + cols[i];
        out += "\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out += std::to_string(i);
            for (Eigen::Index k = 0; k < body.dim(); ++k)
                out += "," + io::format_double(rows[i].x[k]);
            out += "," + io::format_double(rows[i].value) + "," + std::to_string(rows[i].flag) + "\n";
        }
        return {Ok, out};
    }
    json jrows = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        json r = json::array({i});
        for (Eigen::Index k = 0; k < body.dim(); ++k)
            r.push_back(rows[i].x[k]);
        r.push_back(rows[i].value);
        r.push_back(rows[i].flag);
        jrows.push_back(r);
    }
    json out = {{"body", body_label(config)},
                {"metric", metric_name(request.metric)},
                {"level", request.level},
                {"columns", cols},
                {"rows", jrows}};
    return {Ok, out.dump(2) + "\n"};
}

CommandResult cmd_catalog(const RunConfig& config, bool p_grid)
{
    const ConvexBody body = load_body(config);
    const auto* poly = body.as_polytope();
    if (!poly)
        throw UnsupportedError("catalog needs a polytope body");
    const Point b = load_basepoint(config, body);
    const PolyCone cone = lift_polytope_to_cone(*poly);
    const auto families = busemann_catalog(cone, lift_point(b), CatalogOptions{p_grid});
    json fj = json::array();
    std::size_t count = 0;
    for (const auto& f : families) {
        fj.push_back(io::to_json(f));
        count += f.members.size();
    }
    json out = {{"body", body_label(config)},
                {"cone_dimension", cone.dim()},
                {"family_count", families.size()},
                {"descriptor_count", count},
                {"families", fj}};
    return {Ok, out.dump(2) + "\n"};
}

CommandResult cmd_verify(const RunConfig& config, const std::string& suite, int samples)
{
    static const std::vector<std::string> suites{"metric-axioms", "route-equivalence", "geodesic-segments",
                                                 "ray-exit", "polar", "all"};
    if (std::find(suites.begin(), suites.end(), suite) == suites.end())
        throw DomainError("unknown suite '" + suite + "'");
    if (samples < 1)
        throw DomainError("samples must be positive");
    const ConvexBody body = load_body(config);
    const auto* poly = body.as_polytope();
    std::vector<Property> props;
    auto append = [&props](std::vector<Property> more) { props.insert(props.end(), more.begin(), more.end()); };
    if (poly)
        props.push_back(convex_position(*poly));
    const bool all = suite == "all";
    if (all || suite == "metric-axioms")
        append(metric_axioms(body, config.seed, samples));
    if (all || suite == "route-equivalence")
        append(route_equivalence(body, config.seed, samples));
    if (all || suite == "geodesic-segments")
        append(geodesic_segments(body, config.seed, samples));
    if (all || suite == "ray-exit")
        append(ray_exit_consistency(body, config.seed, samples));
    if (suite == "polar" || (all && poly)) {
        if (!poly)
            throw UnsupportedError("polar suite needs a polytope body");
        append(polar_suite(*poly, config.seed));
    }
    bool pass = true;
    for (const auto& p : props)
        pass = pass && p.pass;
    const int code = pass ? Ok : PropertyFailure;
    if (config.format == "csv") {
        std::string out = "property,pass,max_residual,samples\n";
        for (const auto& p : props)
            out += p.name + "," + (p.pass ? "true" : "false") + "," + io::format_double(p.max_residual) + "," +
                   std::to_string(p.samples) + "\n";
        return {code, out};
    }
    json out = {{"suite", suite},
                {"body", body_label(config)},
                {"seed", config.seed},
                {"pass", pass},
                {"properties", properties_json(props)}};
    return {code, out.dump(2) + "\n"};
}

CommandResult cmd_closedness(const RunConfig& config)
{
    const ConvexBody body = load_body(config);
    const auto v = closedness_check(body);
    json out = {{"body", body_label(config)},
                {"verdict", closedness_name(v.verdict)},
                {"justification", v.justification}};
    if (v.polar_faces) {
        out["polar_faces"] = v.polar_faces->faces.size();
        out["polar_f_vector"] = v.polar_faces->f_vector();
    }
    return {Ok, out.dump(2) + "\n"};
}

CommandResult cmd_witness(const RunConfig& config, const std::string& fixture, int n_max)
{
    const auto rep = nonclosedness_witness(fixture, n_max, config.seed);
    bool certified = !rep.limit_extreme && rep.endpoints_in_polar && rep.endpoints_outside_limit &&
                     rep.searched_halfwidth <= 1e-9;
    for (const auto& s : rep.sequence)
        certified = certified && s.exposed && s.hausdorff <= s.bound + 1e-12;
    json out = io::to_json(rep);
    out["certified"] = certified;
    return {certified ? Ok : PropertyFailure, out.dump(2) + "\n"};
}

CommandResult cmd_harness(const RunConfig& config, const std::string& name, const std::optional<Point>& a,
                          const std::optional<Point>& b, int n_max, Metric metric)
{
    if (name == "example2") {
        const ConvexBody body = example2_body(config.tol);
        const Point base = load_basepoint(config, body);
        const auto grid = make_probe_grid(body, base, 200, config.seed);
        const auto rep = example2_harness(grid, n_max);
        const bool pass = !rep.deviation.empty() && rep.deviation.back() <= 1e-3 && rep.separation >= 0.01;
        if (config.format == "csv")
            return {pass ? Ok : PropertyFailure, io::to_csv(rep.funk_limit)};
        json out = io::to_json(rep);
        out["pass"] = pass;
        return {pass ? Ok : PropertyFailure, out.dump(2) + "\n"};
    }
    const ConvexBody body = load_body(config);
    const Point base = load_basepoint(config, body);
    const auto grid = make_probe_grid(body, base, 200, config.seed);
    if (name == "theorem2") {
        if (!a || !b)
            throw DomainError("theorem2 needs two targets");
        require_dim(*a, body.dim(), "target a");
        require_dim(*b, body.dim(), "target b");
        const auto rep = theorem2_harness(body, *a, *b, grid);
        const bool pass = rep.limit.tail_oscillation >= 0.1;
        json out = {{"body", body_label(config)},
                    {"tail_oscillation", rep.limit.tail_oscillation},
                    {"worst_probe", io::to_json(grid.points[rep.limit.worst_probe])},
                    {"separation", std::isfinite(rep.separation) ? json(rep.separation) : json("inf")},
                    {"pass", pass}};
        return {pass ? Ok : PropertyFailure, out.dump(2) + "\n"};
    }
    if (name == "limit") {
        if (!a)
            throw DomainError("limit needs a target");
        require_dim(*a, body.dim(), "target");
        const auto oracle = DistanceOracle::for_body(body);
        const auto rep = horofunction_limit(oracle, SequencePlan::segment(base, *a), grid, metric);
        if (config.format == "csv")
            return {Ok, io::to_csv(rep.final)};
        json out = io::to_json(rep);
        out["body"] = body_label(config);
        return {Ok, out.dump(2) + "\n"};
    }
    throw DomainError("unknown harness '" + name + "'");
}

CommandResult run_guarded(const std::function<CommandResult()>& fn)
{
    try {
        return fn();
    } catch (const UnsupportedError& e) {
        return {Unsupported, std::string("error: ") + e.what() + "\n"};
    } catch (const BudgetExhausted& e) {
        return {PropertyFailure, std::string("error: ") + e.what() + "\n"};
    } catch (const DomainError& e) {
        return {DomainFailure, std::string("error: ") + e.what() + "\n"};
    }
}

}  // namespace hilbert::cli
