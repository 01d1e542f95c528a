#pragma once

#include "hilbert/convex_body.hpp"
#include "hilbert/horoboundary.hpp"
#include "hilbert/metrics.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hilbert {

/// Interior probe points; points[0] is the basepoint.
struct ProbeGrid
{
    std::vector<Point> points;
    std::string scheme;
};

//! Basepoint followed by scrambled Halton points of the bounding box kept
//! when their margin exceeds `margin` (default 10·tol).
ProbeGrid make_probe_grid(const ConvexBody& body, const Point& basepoint, std::size_t count = 200,
                          std::uint64_t seed = 0, double margin = -1.0);

//! Same for an open cone: points of the box [b − |b|, b + |b|] with
//! relative slack above `margin`.
ProbeGrid make_probe_grid(const PolyCone& c, const Point& basepoint, std::size_t count = 200,
                          std::uint64_t seed = 0, double margin = -1.0);

/// A sequence point. For polyhedral geometries `log_slacks` holds the
/// logarithms of the (lifted) cone slacks, computed relative to the segment
/// the point was generated on, so points far closer to the boundary than
/// double resolution keep exact ratios.
struct SeqPoint
{
    Point x;
    Vector log_slacks;
    double log_lambda = 0.0;
};

/*!
 * Funk, reverse-Funk and Hilbert distances on a body or a cone.
 *
 * Polytopes are handled through the cone over the polytope and the dual
 * formula; other bodies use the cross-ratio route on plain points.
 */
class DistanceOracle
{
  public:
    static DistanceOracle for_body(const ConvexBody& body);
    static DistanceOracle for_cone(const PolyCone& c);

    bool polyhedral() const { return cone_.has_value(); }
    Eigen::Index dim() const;
    const std::optional<PolyCone>& cone() const { return cone_; }

    SeqPoint point(const Point& x) const;

    //! (1−λ)z + λp with λ = exp(log_lambda); z on the boundary, p inside the
    //! tangent cone at z. On polyhedral geometries a point outside the domain
    //! gets NaN log-slacks.
    SeqPoint segment_point(const Point& z, const Point& p, double log_lambda) const;

    //! funk(x, y) = log M(x/y)
    double funk(const SeqPoint& x, const SeqPoint& y) const;
    double distance(Metric m, const SeqPoint& x, const SeqPoint& y) const;

    //! Gauge log M(x/y) restricted to a subset of the cone normals
    double funk_restricted(const SeqPoint& x, const SeqPoint& y, const std::vector<int>& normals) const;

  private:
    DistanceOracle() = default;

    std::optional<ConvexBody> body_;
    std::optional<PolyCone> cone_;
    bool lifted_ = false;

    Vector lift(const Point& x) const;
};

/// Points y_n = (1 − λ_n)·target + λ_n·start with λ_n = 2^-n, n in
/// [first, first + count). Oscillating plans cycle through the targets.
struct SequencePlan
{
    enum class Kind { Segment, Oscillating, Custom };

    Kind kind = Kind::Segment;
    Point start;
    std::vector<Point> targets;
    int first = 1;
    int count = 40;
    std::vector<Point> custom;

    static SequencePlan segment(const Point& start, const Point& target, int count = 40, int first = 1);
    static SequencePlan oscillating(const Point& start, const Point& a, const Point& b, int count = 40,
                                    int first = 1);
    static SequencePlan from_points(std::vector<Point> points);

    std::vector<SeqPoint> generate(const DistanceOracle& oracle) const;
};

/// Probe points with values.
struct SampledFunction
{
    std::vector<Point> points;
    std::vector<double> values;
};

struct ConvergenceReport
{
    std::vector<std::vector<double>> traces;  // traces[n][probe]
    SampledFunction final;
    int window = 10;
    double tail_oscillation = 0.0;  // max over probes of the spread in the last `window` iterates
    std::size_t worst_probe = 0;
    std::optional<double> sup_deviation;  // final iterate vs reference

    bool converged(double tol = 1e-6) const { return tail_oscillation < tol; }
};

//! d(·, y_n) − d(b, y_n) on the grid for each generated y_n; b = grid.points[0]
ConvergenceReport horofunction_limit(const DistanceOracle& oracle, const SequencePlan& plan,
                                     const ProbeGrid& grid, Metric metric,
                                     const std::function<double(const Point&)>& reference = {});

ConvergenceReport horofunction_limit(const DistanceOracle& oracle, const std::vector<SeqPoint>& sequence,
                                     const ProbeGrid& grid, Metric metric,
                                     const std::function<double(const Point&)>& reference = {});

struct DefectReport
{
    double epsilon = 0.0;          // max_l defect[l]
    std::vector<double> defect;    // Σ_{i<=l} d(x_{i−1}, x_i) − d(x_0, x_l), l >= 1
};

//! Defect of x_0..x_{count−1} for a distance given by index pairs
DefectReport almost_geodesic_defect(std::size_t count, const std::function<double(std::size_t, std::size_t)>& d);

DefectReport almost_geodesic_defect(const DistanceOracle& oracle, Metric metric,
                                    const std::vector<SeqPoint>& points);

/// Hilbert, Funk and reverse-Funk defects of one sequence. The Hilbert
/// partial sums are accumulated independently of the other two.
struct SplitDefect
{
    DefectReport hilbert;
    DefectReport funk;
    DefectReport reverse;
    double split_residual = 0.0;  // max_l |L(l) − F(l) − R(l)|
};

SplitDefect split_defect(const DistanceOracle& oracle, const std::vector<SeqPoint>& points);

struct GeodesicOptions
{
    int count = 1000;
    int budget = 200;             // halvings allowed per step
    std::vector<Point> probes;    // interior points cycled through as z_n
};

struct AlmostGeodesic
{
    std::vector<SeqPoint> points;
    std::vector<int> halvings;
};

/*!
 * Sequence y_n = (1 − λ_n)z + λ_n p for a descriptor whose chain has no
 * steps. Each λ_n starts at λ_{n−1}/2 and is halved until y_n is interior,
 * |y_n − z| < 1/n, the Funk gaps between the cone and the tangent cone at
 * z_n and at the basepoint are below 1/n, and the two step gaps against
 * y_{n−1} are below 2^-(n−1). Throws BudgetExhausted when a step needs more
 * than `budget` halvings.
 */
AlmostGeodesic construct_almost_geodesic(const BusemannDescriptor& d, const GeodesicOptions& options);

//! Deepest λ = 2^-n used on non-polyhedral bodies, where sequence points
//! are plain coordinates and must stay farther than the tolerance from the
//! boundary.
inline constexpr int kPlainDepth = 24;

struct OscillationReport
{
    ConvergenceReport limit;
    double separation = 0.0;  // cross-ratio separation of the two targets; may be +inf
};

OscillationReport theorem2_harness(const ConvexBody& body, const Point& a, const Point& b,
                                const ProbeGrid& grid, int count = 40);

//! log(|wy||zx| / (|wx||zy|)) for boundary points x, y, with w and z the
//! farthest boundary points of the line xy beyond x and beyond y. +inf when
//! the segment xy crosses the interior.
double cross_ratio_separation(const ConvexBody& body, const Point& x, const Point& y);

/// Funk gauge on the example2 body through the extreme points of its polar
/// (unit circle in z = 0 and corners (±1, 0, ±1)), for points
/// q = (1 − δ)(cos φ, sin φ, 0) given ray-relatively.
double example2_log_gauge(const Point& u, double phi, double delta);

struct Example2Report
{
    std::vector<int> schedule;                 // n values
    std::vector<double> deviation;             // sup over grid vs log(1 − x) per n
    SampledFunction funk_limit;                // at the last n
    SampledFunction radial_limit;              // radial approach to (1, 0, 0)
    double radial_deviation = 0.0;             // vs log(1 − x + |z|)
    double separation = 0.0;                   // sup |funk_limit − radial_limit|
    std::size_t separation_probe = 0;
};

Example2Report example2_harness(const ProbeGrid& grid, int n_max = 100000);

}  // namespace hilbert
