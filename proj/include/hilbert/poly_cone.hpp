#pragma once

#include "hilbert/core.hpp"
#include "hilbert/polytope.hpp"

#include <vector>

namespace hilbert {

/*!
 * Open polyhedral cone {v : a_i·v > 0 for all i}.
 *
 * The normals a_i double as generators of the dual cone. They are stored
 * canonically: unit Euclidean norm, duplicates and redundant normals removed,
 * sorted lexicographically. Two cones are equal iff their canonical normal
 * lists coincide. An empty normal list is the whole space (minus the origin).
 * Construction fails unless the cone is solid.
 */
class PolyCone
{
  public:
    PolyCone(Eigen::Index dim, std::vector<Vector> normals, double tol = kDefaultGeoTol);

    Eigen::Index dim() const { return dim_; }
    double tol() const { return tol_; }
    const std::vector<Vector>& normals() const { return normals_; }
    std::size_t size() const { return normals_.size(); }

    //! A point with every a_i·v > 0 found by maximizing the minimum slack
    const Point& interior_point() const { return interior_; }

    //! a_i·x for every normal, in canonical order
    Vector slacks(const Point& x) const;

    bool contains(const Point& x) const;

    //! Indices of normals with |a_i·x| <= tol after scaling x to unit norm
    std::vector<int> active_set(const Point& x) const;

    //! Nonzero-or-apex point of the closure with at least one active normal
    bool is_boundary_point(const Point& x) const;

    //! Cone defined by a subset of this cone's normals
    PolyCone subcone(const std::vector<int>& indices) const;

    bool operator==(const PolyCone& other) const;

  private:
    Eigen::Index dim_;
    double tol_;
    std::vector<Vector> normals_;
    Point interior_;
};

/// Closed convex cone given by generators: {sum μ_j g_j : μ >= 0}.
/// The empty generator list is {0}.
struct GeneratedCone
{
    Eigen::Index dim = 0;
    std::vector<Vector> generators;

    //! Closure membership through a feasibility LP
    bool contains(const Vector& z, double tol = 1e-9) const;
};

//! Dual cone of an open polyhedral cone: generated by its normals
GeneratedCone dual_cone(const PolyCone& c);

//! Dual of a generated cone as an open cone (the interior of the dual);
//! dual_cone(dual_cone(c)) == c for every solid polyhedral c
PolyCone dual_cone(const GeneratedCone& g, double tol = kDefaultGeoTol);

//! Basis (as columns) of the common kernel of the normals, [0]_c
Matrix lineality(const PolyCone& c);

//! Open tangent cone τ(c, x) at a boundary point: the active normals
PolyCone open_tangent_cone(const PolyCone& c, const Point& x);

/// Base cone plus a sequence of boundary points; each step replaces the
/// current cone by its open tangent cone at the step point.
struct ConeChain
{
    PolyCone base;
    std::vector<Point> steps;

    //! Cone reached after all steps; throws if a step is not a boundary point
    PolyCone final_cone() const;
};

struct TangentMember
{
    PolyCone cone;
    std::vector<int> normal_indices;  // into the root cone's normals
    ConeChain chain;
};

/*!
 * The iterated tangent-cone family of a polyhedral cone: closure of {c}
 * under taking open tangent cones at boundary points. Members are keyed by
 * their normal subsets; each carries a chain of boundary points that
 * produces it from c. The root cone comes first.
 */
std::vector<TangentMember> tangent_cone_family(const PolyCone& c);

//! Cone over the polytope placed at last coordinate 1
PolyCone lift_polytope_to_cone(const Polytope& body);

//! (x, 1)
Point lift_point(const Point& x);

//! Unit extreme rays of a pointed cone's closure
std::vector<Vector> extreme_rays(const PolyCone& c);

struct ConeFace
{
    std::vector<int> normal_indices;  // normals vanishing on the face
    std::vector<int> ray_indices;     // extreme rays spanning the face
};

/// Nonzero faces of a pointed cone's closure other than the closure itself,
/// computed from extreme-ray incidences.
std::vector<ConeFace> proper_faces(const PolyCone& c, const std::vector<Vector>& rays);

//! Is cone(small) an exposed face of cone(big)? Generators of small must be
//! among those of big.
bool is_exposed_face(const GeneratedCone& big, const GeneratedCone& small);

}  // namespace hilbert
