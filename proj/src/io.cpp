#include "hilbert/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hilbert::io {

namespace {

Matrix matrix_from_json(const json& j)
{
    if (!j.is_array() || j.empty())
        throw DomainError("expected a nonempty matrix");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Vector row = vector_from_json(j[static_cast<std::size_t>(r)]);
        if (row.size() != cols)
            throw DomainError("ragged matrix");
        m.row(r) = row.transpose();
    }
    return m;
}

// JSON has no infinities; they are written as strings.
json number(double v)
{
    if (std::isfinite(v))
        return v;
    if (std::isnan(v))
        return "nan";
    return v > 0 ? "inf" : "-inf";
}

Point lift_if_needed(const Vector& v, Eigen::Index cone_dim, const char* what)
{
    if (v.size() == cone_dim)
        return v;
    if (v.size() == cone_dim - 1)
        return lift_point(v);
    throw DomainError(std::string(what) + ": dimension mismatch");
}

}  // namespace

Vector vector_from_json(const json& j)
{
    if (!j.is_array())
        throw DomainError("expected an array of numbers");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number())
            throw DomainError("expected an array of numbers");
        v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    }
    return v;
}

json to_json(const Vector& v)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(number(v[i]));
    return out;
}

ConvexBody body_from_json(const json& j, double tol)
{
    try {
        const std::string type = j.at("type").get<std::string>();
        if (type == "polytope") {
            std::vector<Point> verts;
            for (const auto& v : j.at("vertices"))
                verts.push_back(vector_from_json(v));
            return ConvexBody::polytope(std::move(verts), tol);
        }
        if (type == "ball")
            return ConvexBody::ball(vector_from_json(j.at("center")), j.at("radius").get<double>(), tol);
        if (type == "intersection") {
            Intersection parts;
            for (const auto& h : j.value("halfspaces", json::array()))
                parts.halfspaces.push_back({vector_from_json(h.at("a")), h.at("b").get<double>()});
            for (const auto& q : j.value("quadratics", json::array()))
                parts.quadratics.push_back(
                    {matrix_from_json(q.at("Q")), vector_from_json(q.at("c")), q.at("r").get<double>()});
            const auto& box = j.at("bbox");
            parts.bbox_lo = vector_from_json(box.at(0));
            parts.bbox_hi = vector_from_json(box.at(1));
            std::optional<Point> interior;
            if (j.contains("interior"))
                interior = vector_from_json(j.at("interior"));
            return ConvexBody::intersection(std::move(parts), interior, tol);
        }
        throw DomainError("unknown body type '" + type + "'");
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed body description: ") + e.what());
    }
}

ConvexBody load_body(const std::string& path, double tol)
{
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot open body file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw DomainError("cannot parse '" + path + "': " + e.what());
    }
    return body_from_json(j, tol);
}

Point parse_point(const std::string& text)
{
    std::string cleaned = text;
    for (char& c : cleaned)
        if (c == ',' || c == '(' || c == ')' || c == '[' || c == ']')
            c = ' ';
    std::istringstream in(cleaned);
    std::vector<double> values;
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size())
            throw DomainError("cannot parse coordinate '" + tok + "'");
        values.push_back(v);
    }
    if (values.empty())
        throw DomainError("empty point");
    return to_vector(values);
}

json to_json(const BusemannDescriptor& d)
{
    json chain = json::array();
    for (const auto& s : d.chain.steps)
        chain.push_back(to_json(s));
    return {{"z", to_json(d.z)}, {"chain", chain}, {"p", to_json(d.p)}, {"basepoint", to_json(d.basepoint)}};
}

BusemannDescriptor descriptor_from_json(const json& j, const PolyCone& cone, const Point& basepoint)
{
    try {
        const auto n = cone.dim();
        Point z = lift_if_needed(vector_from_json(j.at("z")), n, "descriptor z");
        z /= z.norm();
        Point b = j.contains("basepoint") ? lift_if_needed(vector_from_json(j.at("basepoint")), n, "basepoint")
                                          : lift_if_needed(basepoint, n, "basepoint");
        std::vector<Point> steps;
        for (const auto& s : j.value("chain", json::array()))
            steps.push_back(lift_if_needed(vector_from_json(s), n, "chain step"));
        if (!cone.is_boundary_point(z))
            throw DomainError("descriptor z is not a boundary ray");
        ConeChain chain{open_tangent_cone(cone, z), std::move(steps)};
        Point p;
        if (j.contains("p"))
            p = lift_if_needed(vector_from_json(j.at("p")), n, "descriptor p");
        else
            p = analytic_center(chain.final_cone());
        BusemannDescriptor d{cone, z, std::move(chain), p, b};
        validate(d);
        return d;
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed descriptor: ") + e.what());
    }
}

json to_json(const CatalogFamily& f)
{
    json normals = json::array();
    for (const auto& a : f.tangent.normals())
        normals.push_back(to_json(a));
    json members = json::array();
    for (const auto& m : f.members) {
        json mj = to_json(m);
        json tn = json::array();
        const PolyCone t = m.chain.final_cone();
        for (const auto& a : t.normals())
            tn.push_back(to_json(a));
        mj["cone_normals"] = tn;
        members.push_back(mj);
    }
    return {{"label", f.label},
            {"face_normals", f.face.normal_indices},
            {"face_rays", f.face.ray_indices},
            {"z", to_json(f.z)},
            {"tangent_normals", normals},
            {"members", members}};
}

json to_json(const ConvergenceReport& r)
{
    json traces = json::array();
    for (const auto& t : r.traces) {
        json row = json::array();
        for (double v : t)
            row.push_back(number(v));
        traces.push_back(row);
    }
    json out = {{"window", r.window},
                {"tail_oscillation", number(r.tail_oscillation)},
                {"worst_probe", r.worst_probe},
                {"converged", r.converged()},
                {"traces", traces}};
    if (r.sup_deviation)
        out["sup_deviation"] = number(*r.sup_deviation);
    return out;
}

json to_json(const NonclosednessReport& r)
{
    json seq = json::array();
    for (const auto& s : r.sequence) {
        json set = json::array();
        for (const auto& p : s.set)
            set.push_back(to_json(p));
        seq.push_back({{"n", s.n},
                       {"set", set},
                       {"exposed", s.exposed},
                       {"support_gap", number(s.support_gap)},
                       {"hausdorff", number(s.hausdorff)},
                       {"bound", number(s.bound)}});
    }
    json limit = json::array();
    for (const auto& p : r.limit)
        limit.push_back(to_json(p));
    return {{"fixture", r.fixture},
            {"limit", limit},
            {"limit_exposed", r.limit_exposed},
            {"limit_extreme", r.limit_extreme},
            {"chord", {to_json(r.chord_a), to_json(r.chord_b)}},
            {"midpoint_error", number(r.midpoint_error)},
            {"endpoints_in_polar", r.endpoints_in_polar},
            {"endpoints_outside_limit", r.endpoints_outside_limit},
            {"searched_halfwidth", number(r.searched_halfwidth)},
            {"sequence", seq}};
}

json to_json(const Example2Report& r)
{
    json dev = json::array();
    for (double v : r.deviation)
        dev.push_back(number(v));
    return {{"schedule", r.schedule},
            {"deviation", dev},
            {"radial_deviation", number(r.radial_deviation)},
            {"separation", number(r.separation)},
            {"separation_probe", r.separation_probe}};
}

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_csv(const SampledFunction& f)
{
    std::string out;
    const Eigen::Index d = f.points.empty() ? 0 : f.points.front().size();
    for (Eigen::Index k = 0; k < d; ++k)
        out += "x" + std::to_string(k) + ",";
    out += "value\n";
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        for (Eigen::Index k = 0; k < d; ++k)
            out += format_double(f.points[i][k]) + ",";
        out += format_double(f.values[i]) + "\n";
    }
    return out;
}

}  // namespace hilbert::io
