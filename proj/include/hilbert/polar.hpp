#pragma once

#include "hilbert/convex_body.hpp"
#include "hilbert/polytope.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hilbert {

//! {z : z·v <= 1 for every vertex v}; vertices are a/b over the facets a·x <= b.
//! Requires the origin strictly inside.
Polytope polar_polytope(const Polytope& p);

/// Nonempty faces of a polytope as vertex-index sets, the full set included.
struct ExtremeSetFamily
{
    std::vector<Point> vertices;
    std::vector<std::vector<int>> faces;  // sorted; largest faces first

    //! Number of faces of each dimension, indexed by dimension
    std::vector<int> f_vector() const;
};

ExtremeSetFamily extreme_sets(const Polytope& p);

//! Maximal chords of p centred in conv(face) whose endpoints leave
//! conv(face); zero for a genuine face.
int chord_violations(const Polytope& p, const std::vector<int>& face, int samples, std::uint64_t seed);

double hausdorff_distance(const std::vector<Point>& a, const std::vector<Point>& b);

enum class Closedness { Closed, NotClosed, Undetermined };

std::string closedness_name(Closedness c);

struct ClosednessVerdict
{
    Closedness verdict = Closedness::Undetermined;
    std::string justification;
    std::optional<ExtremeSetFamily> polar_faces;
};

ClosednessVerdict closedness_check(const Polytope& p);
ClosednessVerdict closedness_check(const ConvexBody& body);

/// Closed convex hull of finitely many points and circles.
struct CircleHull
{
    struct Circle
    {
        Point center;
        Vector e1, e2;  // orthonormal
        double radius = 1.0;
    };

    std::vector<Point> points;
    std::vector<Circle> circles;

    struct Face
    {
        double value = 0.0;                // support value
        std::vector<Point> points;         // maximizing points
        std::vector<int> whole_circles;    // circles lying entirely in the face
        double gap = 0.0;                  // support value minus best non-maximizing value
    };

    Eigen::Index dim() const;

    //! Face exposed by the linear functional d
    Face exposed_face(const Vector& d, double tol = 1e-12) const;

    //! Points plus `per_circle` samples of each circle, with `extra` appended
    std::vector<Point> inner_points(int per_circle, const std::vector<Point>& extra = {}) const;

    //! Largest t with e ± t·d both in the hull of the inner points
    double chord_halfwidth(const Point& e, const Vector& d, const std::vector<Point>& inner) const;
};

CircleHull example2_polar();
CircleHull example4d_polar();

struct SequenceCheck
{
    int n = 0;
    std::vector<Point> set;        // the extreme set (point or segment endpoints)
    bool exposed = false;          // exposed face equals the set
    double support_gap = 0.0;
    double hausdorff = 0.0;        // to the limit set
    double bound = 0.0;            // closed-form distance to the limit set
};

struct NonclosednessReport
{
    std::string fixture;
    std::vector<SequenceCheck> sequence;
    std::vector<Point> limit;      // the limit set
    bool limit_exposed = false;    // whether the limit is an exposed face on its own
    Point chord_a, chord_b;        // chord with midpoint in the limit, endpoints outside
    double midpoint_error = 0.0;
    bool endpoints_in_polar = false;
    bool endpoints_outside_limit = false;
    double searched_halfwidth = 0.0;  // best chord found around the sequence points
    bool limit_extreme = true;
};

NonclosednessReport nonclosedness_witness(const std::string& fixture, int n_max, std::uint64_t seed = 0);

}  // namespace hilbert
