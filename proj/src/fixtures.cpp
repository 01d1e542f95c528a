#include "hilbert/fixtures.hpp"

#include <cmath>

namespace hilbert {

ConvexBody example2_body(double tol)
{
    Intersection parts;
    for (double sx : {1.0, -1.0})
        for (double sz : {1.0, -1.0})
            parts.halfspaces.push_back({make_vector({sx, 0.0, sz}) / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
    Matrix q = Matrix::Zero(3, 3);
    q(0, 0) = q(1, 1) = 1.0;
    parts.quadratics.push_back({q, Vector::Zero(3), 1.0});
    parts.bbox_lo = Point::Constant(3, -1.0);
    parts.bbox_hi = Point::Constant(3, 1.0);
    return ConvexBody::intersection(std::move(parts), Point::Zero(3), tol);
}

ConvexBody example4d_body(double tol)
{
    Intersection parts;
    parts.constraints.push_back({"cone-sum 12|3", [](const Point& x) {
                                     return std::hypot(x[0], x[1]) + std::abs(x[2]) - 1.0;
                                 }});
    parts.constraints.push_back({"cone-sum 1|34", [](const Point& x) {
                                     return std::abs(x[0]) + std::hypot(x[2], x[3]) - 1.0;
                                 }});
    parts.bbox_lo = Point::Constant(4, -1.0);
    parts.bbox_hi = Point::Constant(4, 1.0);
    return ConvexBody::intersection(std::move(parts), Point::Zero(4), tol);
}

ConvexBody fixture_body(const std::string& name, double tol)
{
    if (name == "disk")
        return ConvexBody::ball(Point::Zero(2), 1.0, tol);
    if (name == "square")
        return ConvexBody::polytope({make_vector({1, 1}), make_vector({-1, 1}), make_vector({-1, -1}),
                                     make_vector({1, -1})},
                                    tol);
    if (name == "triangle") {
        const double h = std::sqrt(3.0) / 2.0;
        return ConvexBody::polytope({make_vector({1, 0}), make_vector({-0.5, h}), make_vector({-0.5, -h})}, tol);
    }
    if (name == "cube") {
        std::vector<Point> v;
        for (int m = 0; m < 8; ++m)
            v.push_back(make_vector({m & 1 ? 1.0 : -1.0, m & 2 ? 1.0 : -1.0, m & 4 ? 1.0 : -1.0}));
        return ConvexBody::polytope(std::move(v), tol);
    }
    if (name == "segment")
        return ConvexBody::polytope({make_vector({-1}), make_vector({1})}, tol);
    if (name == "example2")
        return example2_body(tol);
    if (name == "example4d")
        return example4d_body(tol);
    throw DomainError("unknown fixture '" + name + "'");
}

std::vector<std::string> fixture_names()
{
    return {"disk", "square", "triangle", "cube", "segment", "example2", "example4d"};
}

Point fixture_basepoint(const std::string& name)
{
    return Point::Zero(fixture_body(name).dim());
}

}  // namespace hilbert
