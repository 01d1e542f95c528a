#pragma once

#include "hilbert/core.hpp"
#include "hilbert/polytope.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hilbert {

struct Ball
{
    Point center;
    double radius = 1.0;
};

//! a·x <= b; stored with a unit normal
struct Halfspace
{
    Vector a;
    double b = 0.0;
};

//! xᵀQx + c·x <= r with Q positive semidefinite
struct QuadraticConstraint
{
    Matrix Q;
    Vector c;
    double r = 0.0;
};

//! Black-box convex constraint g(x) <= 0
struct ConvexConstraint
{
    std::string name;
    std::function<double(const Point&)> g;
};

struct Intersection
{
    std::vector<Halfspace> halfspaces;
    std::vector<QuadraticConstraint> quadratics;
    std::vector<ConvexConstraint> constraints;
    Point bbox_lo;
    Point bbox_hi;
};

enum class BodyKind { Polytope, Ball, Intersection };

/*!
 * Bounded convex open domain.
 *
 * Membership is strict: a point is inside when every constraint holds with
 * slack larger than the body's tolerance. A certified interior point is
 * stored at construction. Immutable after construction.
 */
class ConvexBody
{
  public:
    static ConvexBody polytope(std::vector<Point> vertices, double tol = kDefaultGeoTol);
    static ConvexBody ball(Point center, double radius, double tol = kDefaultGeoTol);
    //! The bounding box is required; when no interior point is given one is
    //! searched for inside the box.
    static ConvexBody intersection(Intersection parts,
                                   std::optional<Point> interior = std::nullopt,
                                   double tol = kDefaultGeoTol);

    BodyKind kind() const;
    Eigen::Index dim() const { return dim_; }
    double tol() const { return tol_; }
    const Point& interior_point() const { return interior_; }

    //! Null unless kind() == Polytope
    const Polytope* as_polytope() const { return std::get_if<Polytope>(&shape_); }
    const Ball* as_ball() const { return std::get_if<Ball>(&shape_); }
    const Intersection* as_intersection() const { return std::get_if<Intersection>(&shape_); }

    std::pair<Point, Point> bounding_box() const;

    bool contains(const Point& x) const { return margin(x) > tol_; }

    //! Smallest constraint slack at x: positive inside, zero on the boundary.
    //! Units depend on the constraint (distance for linear ones).
    double margin(const Point& x) const;

    //! Name of the first constraint not satisfied strictly at x, or empty
    std::string violated_constraint(const Point& x) const;

    //! sup{t > 0 : x + t·u in the body}; x must be interior
    double ray_exit(const Point& x, const Vector& u) const;

  private:
    using Shape = std::variant<Polytope, Ball, Intersection>;

    ConvexBody(Shape shape, Eigen::Index dim, double tol);

    Shape shape_;
    Eigen::Index dim_;
    double tol_;
    Point interior_;
};

//! Boundary point x + ray_exit(x, u)·u
Point boundary_point(const ConvexBody& body, const Point& x, const Vector& u);

}  // namespace hilbert
