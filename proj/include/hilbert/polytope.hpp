#pragma once

#include "hilbert/core.hpp"

#include <vector>

namespace hilbert {

/// Supporting halfspace normal·x <= offset with a unit outward normal.
struct Facet
{
    Vector normal;
    double offset = 0.0;
};

inline constexpr int kMaxFacetDim = 4;
inline constexpr std::size_t kMaxFacetVertices = 64;

/// Facets of conv(vertices) by brute force over d-subsets of the vertices.
/// Requires 1 <= d <= 4, at most 64 vertices, and a full-dimensional hull.
std::vector<Facet> polytope_facets(const std::vector<Point>& vertices,
                                   double tol = kDefaultGeoTol);

/*!
 * Full-dimensional convex polytope in V- and H-representation.
 *
 * The input point list may contain points that are not extreme; those are
 * dropped from vertices() but remain visible through input_vertices() so
 * that convex-position checks can report them.
 */
class Polytope
{
  public:
    explicit Polytope(std::vector<Point> points, double tol = kDefaultGeoTol);

    Eigen::Index dim() const { return dim_; }
    double tol() const { return tol_; }

    const std::vector<Point>& vertices() const { return vertices_; }
    const std::vector<Point>& input_vertices() const { return input_; }
    const std::vector<Facet>& facets() const { return facets_; }

    //! Indices into vertices() of the vertices lying on each facet
    const std::vector<std::vector<int>>& facet_vertices() const { return facet_vertices_; }

    //! Input points that are not extreme points of the hull
    std::vector<int> non_extreme_inputs() const;

    //! Vertex centroid; strictly interior for a full-dimensional polytope
    const Point& centroid() const { return centroid_; }

    //! Smallest facet slack b - a·x (positive iff x is strictly inside)
    double min_slack(const Point& x) const;

  private:
    Eigen::Index dim_;
    double tol_;
    std::vector<Point> input_;
    std::vector<Point> vertices_;
    std::vector<Facet> facets_;
    std::vector<std::vector<int>> facet_vertices_;
    Point centroid_;
};

}  // namespace hilbert
