#pragma once

#include "hilbert/metrics.hpp"
#include "hilbert/poly_cone.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hilbert {

enum class HoroKind { ReverseFunk, Funk, Hilbert, Extended, Sampled };

std::string horo_kind_name(HoroKind k);

/// Horofunction given as a closure. Normalized to vanish at the basepoint.
struct HorofunctionEvaluator
{
    HoroKind kind = HoroKind::Sampled;
    Point basepoint;
    std::function<double(const Point&)> fn;

    double operator()(const Point& x) const { return fn(x); }
};

//! x ↦ log M(z/x) − log M(z/b) for a boundary ray z outside the lineality space
HorofunctionEvaluator reverse_horofunction(const PolyCone& c, const Point& z, const Point& b);

//! x ↦ log M_t(x/p) − log M_t(b/p) for p strictly inside t
HorofunctionEvaluator funk_horofunction(const PolyCone& t, const Point& p, const Point& b);

/*!
 * Names one Busemann point of the Hilbert geometry on `cone`: the reverse
 * part is attached to the boundary ray z, the Funk part to the cone reached
 * by `chain` (which starts at the open tangent cone at z) and a point p
 * inside that cone.
 */
struct BusemannDescriptor
{
    PolyCone cone;
    Point z;
    ConeChain chain;
    Point p;
    Point basepoint;
};

//! Checks the descriptor invariants; throws DomainError naming the first failure
void validate(const BusemannDescriptor& d);

HorofunctionEvaluator busemann_horofunction(const BusemannDescriptor& d);

double busemann_eval(const BusemannDescriptor& d, const Point& x);

//! Maximizer of Σ w_i log(a_i·v) − (Σ w_i / 2)|v|²; has unit norm.
//! Equal weights when `weights` is empty.
Point analytic_center(const PolyCone& t, const Vector& weights = Vector());

struct CatalogOptions
{
    //! Also emit descriptors for weighted analytic centers (one per normal)
    bool p_grid = false;
};

struct CatalogFamily
{
    ConeFace face;
    std::string label;  // vertex / edge / facet / face-k, for lifted polytopes
    Point z;
    PolyCone tangent;   // open tangent cone at z
    std::vector<BusemannDescriptor> members;
};

/// One family per proper face of a pointed polyhedral cone, each carrying a
/// descriptor per member of the tangent-cone family at the face barycenter.
std::vector<CatalogFamily> busemann_catalog(const PolyCone& c, const Point& b,
                                            const CatalogOptions& options = {});

/*!
 * Extension of h from T to the open tangent cone τ(T,x): y ↦ −log λ + h(x + λ(y−x))
 * for any admissible λ. The homogeneity of h along x is spot-checked at
 * construction (tolerance 1e-8); every evaluation cross-checks two choices
 * of λ and throws on disagreement beyond 1e-10.
 */
HorofunctionEvaluator extend_homogeneous(const HorofunctionEvaluator& h, const PolyCone& t,
                                         const Point& x);

/// Z_{t,x} = t* ∩ {z : M(b/x)⟨z,x⟩ <= 1}, bounded for solid t.
struct ZSet
{
    std::vector<Vector> generators;  // of t*
    Vector slice_normal;             // M(b/x)·x
    double slice_rhs = 1.0;
    std::vector<Vector> vertices;    // 0 first, then one per generator

    bool contains(const Vector& z, double tol = 1e-9) const;
};

ZSet z_set(const PolyCone& t, const Point& x, const Point& b);

//! max over probes of |exp(f_{t,x}(y)) − max_{v in Z} ⟨v,y⟩|, with
//! f_{t,x}(y) = log M(y/x) − log M(b/x)
double conjugate_check(const PolyCone& t, const Point& x, const Point& b,
                       const std::vector<Point>& probes);

//! (x, y) ↦ (x/y, 1/y − 1) for last coordinate y in (0, 1]
Point lambda_map(const Point& q);
//! (x, y) ↦ (x/(1+y), 1/(1+y)) for last coordinate y >= 0
Point lambda_inv(const Point& q);

//! Distance from b to the line through a and c
double collinearity_residual(const Point& a, const Point& b, const Point& c);

struct RayMatch
{
    int best = -1;
    std::vector<double> residuals;  // sup deviation per candidate
};

//! Picks the candidate ray whose reverse horofunction best matches sampled
//! values on the probe points.
RayMatch match_reverse_ray(const PolyCone& c, const Point& b, const std::vector<Point>& probes,
                           const std::vector<double>& values, const std::vector<Point>& candidates);

}  // namespace hilbert
