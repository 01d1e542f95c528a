#include "hilbert/convergence.hpp"
#include "hilbert/fixtures.hpp"
#include "hilbert/horoboundary.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace hilbert;

namespace {

Point p2(double a, double b) { return make_vector({a, b}); }

const PolyCone& orthant()
{
    static const PolyCone c(2, {p2(1, 0), p2(0, 1)});
    return c;
}

const PolyCone& square_cone()
{
    static const PolyCone c = lift_polytope_to_cone(*fixture_body("square").as_polytope());
    return c;
}

Point in_cone(const PolyCone& c, std::mt19937_64& rng)
{
    while (true) {
        const Point p = c.interior_point() + 0.9 * oracle::random_in_box(rng, c.dim(), 1.0);
        if (c.slacks(p).minCoeff() > 1e-3)
            return p;
    }
}

}  // namespace

TEST(ReverseHorofunction, OrthantExample)
{
    const auto r = reverse_horofunction(orthant(), p2(1, 0), p2(1, 1));
    for (const Point& x : {p2(1, 1), p2(2, 0.5), p2(0.1, 7)})
        EXPECT_NEAR(r(x), -std::log(x[0]), 1e-15);
    EXPECT_EQ(r(p2(1, 1)), 0.0);
    const auto r2 = reverse_horofunction(orthant(), p2(2, 0), p2(1, 1));
    EXPECT_NEAR(r2(p2(0.3, 4)), r(p2(0.3, 4)), 1e-15);
    EXPECT_THROW(reverse_horofunction(orthant(), p2(1, 1), p2(1, 1)), DomainError);
    const PolyCone half(2, {p2(0, 1)});
    EXPECT_THROW(reverse_horofunction(half, p2(1, 0), p2(0, 1)), DomainError);
}

TEST(FunkHorofunction, Examples)
{
    const PolyCone half(2, {p2(0, 1)});
    const auto f = funk_horofunction(half, p2(0, 1), p2(0, 1));
    for (const Point& x : {p2(0, 1), p2(3, 0.5), p2(-2, 9)})
        EXPECT_NEAR(f(x), std::log(x[1]), 1e-15);
    const Point p = p2(0.5, 2);
    const auto g = funk_horofunction(orthant(), p, p2(1, 1));
    EXPECT_NEAR(g(p2(3, 1)), funk_cone(orthant(), p2(3, 1), p) - funk_cone(orthant(), p2(1, 1), p), 1e-15);
    EXPECT_EQ(g(p2(1, 1)), 0.0);
    EXPECT_THROW(funk_horofunction(half, p2(0, -1), p2(0, 1)), DomainError);
}

TEST(Busemann, OrthantExample)
{
    const Point z = p2(1, 0);
    const PolyCone tau = open_tangent_cone(orthant(), z);
    const BusemannDescriptor d{orthant(), z, ConeChain{tau, {}}, p2(0, 1), p2(1, 1)};
    for (const Point& x : {p2(1, 1), p2(2, 0.5), p2(0.1, 7)})
        EXPECT_NEAR(busemann_eval(d, x), -std::log(x[0]) + std::log(x[1]), 1e-15);
    EXPECT_EQ(busemann_eval(d, p2(1, 1)), 0.0);
}

TEST(Busemann, ValidateRejectsBadDescriptors)
{
    const Point z = p2(1, 0);
    const PolyCone tau = open_tangent_cone(orthant(), z);
    EXPECT_THROW(validate({orthant(), z, ConeChain{tau, {}}, p2(0, -1), p2(1, 1)}), DomainError);
    EXPECT_THROW(validate({orthant(), p2(1, 1), ConeChain{tau, {}}, p2(0, 1), p2(1, 1)}), DomainError);
    EXPECT_THROW(validate({orthant(), z, ConeChain{orthant(), {}}, p2(0, 1), p2(1, 1)}), DomainError);
    EXPECT_THROW(validate({orthant(), z, ConeChain{tau, {}}, p2(0, 1), p2(1, -1)}), DomainError);
}

TEST(Busemann, RayInvariance)
{
    std::mt19937_64 rng(31);
    const auto fam = busemann_catalog(square_cone(), lift_point(p2(0, 0)));
    for (const auto& f : fam)
        for (const auto& d : f.members) {
            BusemannDescriptor scaled = d;
            scaled.z = 3.0 * d.z;
            scaled.p = 0.25 * d.p;
            for (int s = 0; s < 20; ++s) {
                const Point x = in_cone(square_cone(), rng);
                EXPECT_NEAR(busemann_eval(scaled, x), busemann_eval(d, x), 1e-10);
            }
        }
}

TEST(Catalog, FamilyCounts)
{
    EXPECT_EQ(busemann_catalog(orthant(), p2(1, 1)).size(), 2u);
    const auto sq = busemann_catalog(square_cone(), lift_point(p2(0, 0)));
    ASSERT_EQ(sq.size(), 8u);
    std::map<std::string, int> labels;
    std::size_t members = 0;
    for (const auto& f : sq) {
        ++labels[f.label];
        members += f.members.size();
        const auto t = tangent_cone_family(f.tangent);
        EXPECT_EQ(f.members.size(), t.size());
    }
    EXPECT_EQ(labels["edge"], 4);
    EXPECT_EQ(labels["vertex"], 4);
    // edges: 𝒯(half-space) = 1; vertices: 𝒯(wedge) = 3
    EXPECT_EQ(members, 16u);
    const auto tri = busemann_catalog(lift_polytope_to_cone(*fixture_body("triangle").as_polytope()),
                                      lift_point(p2(0, 0)));
    EXPECT_EQ(tri.size(), 6u);
    const auto seg =
        busemann_catalog(lift_polytope_to_cone(*fixture_body("segment").as_polytope()), lift_point(make_vector({0})));
    EXPECT_EQ(seg.size(), 2u);
    const PolyCone half(2, {p2(0, 1)});
    EXPECT_THROW(busemann_catalog(half, p2(0, 1)), DomainError);
}

TEST(Catalog, PGridAddsWeightedCenters)
{
    const auto plain = busemann_catalog(square_cone(), lift_point(p2(0, 0)));
    const auto grid = busemann_catalog(square_cone(), lift_point(p2(0, 0)), CatalogOptions{true});
    std::size_t a = 0, b = 0;
    for (const auto& f : plain)
        a += f.members.size();
    for (const auto& f : grid)
        b += f.members.size();
    EXPECT_GT(b, a);
}

TEST(Catalog, DescriptorsAreOneLipschitzAndNormalized)
{
    std::mt19937_64 rng(32);
    const Point b = lift_point(p2(0, 0));
    for (const std::string name : {"square", "triangle", "cube"}) {
        const PolyCone c = lift_polytope_to_cone(*fixture_body(name).as_polytope());
        const Point bl = lift_point(Point::Zero(c.dim() - 1));
        for (const auto& f : busemann_catalog(c, bl))
            for (const auto& d : f.members) {
                EXPECT_NEAR(busemann_eval(d, bl), 0.0, 1e-12);
                const auto fh = funk_horofunction(d.chain.final_cone(), d.p, d.basepoint);
                for (int s = 0; s < 50; ++s) {
                    const Point x = in_cone(c, rng), y = in_cone(c, rng);
                    EXPECT_LE(busemann_eval(d, x) - busemann_eval(d, y), hilbert::hilbert(c, y, x) + 1e-9);
                    EXPECT_LE(fh(x) - fh(y), funk_cone(c, x, y) + 1e-9);
                }
            }
        (void)b;
    }
}

TEST(Catalog, DistinctFacesGiveDistinctFunctions)
{
    const Point bl = lift_point(p2(0, 0));
    const auto fam = busemann_catalog(square_cone(), bl);
    const auto grid = make_probe_grid(square_cone(), bl, 200, 0);
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = i + 1; j < fam.size(); ++j)
            for (const auto& di : fam[i].members)
                for (const auto& dj : fam[j].members) {
                    double gap = 0;
                    for (const auto& x : grid.points)
                        gap = std::max(gap, std::abs(busemann_eval(di, x) - busemann_eval(dj, x)));
                    EXPECT_GE(gap, 1e-6) << fam[i].label << " vs " << fam[j].label;
                }
}

TEST(Catalog, UniqueDecompositionRecoversRay)
{
    // Sampled reverse-Funk limit along a segment toward each face ray; the
    // generating ray must be the best match among all catalog rays.
    const Point b = p2(0, 0);
    const ConvexBody body = fixture_body("square");
    const auto oracle = DistanceOracle::for_body(body);
    const auto fam = busemann_catalog(square_cone(), lift_point(b));
    std::vector<Point> rays;
    for (const auto& f : fam)
        rays.push_back(f.z);
    const auto grid = make_probe_grid(body, b, 100, 0);
    std::vector<Point> probes;
    for (const auto& x : grid.points)
        probes.push_back(lift_point(x));
    for (std::size_t k = 0; k < fam.size(); ++k) {
        const Point target = fam[k].z.head(2) / fam[k].z[2];
        const auto rep = horofunction_limit(oracle, SequencePlan::segment(b, target), grid, Metric::Reverse);
        const auto m = match_reverse_ray(square_cone(), lift_point(b), probes, rep.final.values, rays);
        EXPECT_EQ(m.best, static_cast<int>(k));
        EXPECT_LE(m.residuals[k], 1e-6);
    }
}

TEST(AnalyticCenter, InteriorUnitAndStationary)
{
    for (const PolyCone& t : {orthant(), square_cone(), open_tangent_cone(square_cone(), make_vector({1, 1, 1}))}) {
        const Point p = analytic_center(t);
        EXPECT_NEAR(p.norm(), 1.0, 1e-10);
        EXPECT_TRUE(t.contains(p));
        Vector grad = -static_cast<double>(t.size()) * p;
        for (const auto& a : t.normals())
            grad += a / a.dot(p);
        EXPECT_LE(grad.norm(), 1e-9);
    }
    const Point q = analytic_center(orthant());
    EXPECT_NEAR(q[0], q[1], 1e-12);
}

TEST(Extension, FunkHorofunctionOnLinealityDirection)
{
    // x in [0]_T: the extension of f_{T,p} to τ(T,x) = T is f_{T,p} itself
    const PolyCone half(2, {p2(0, 1)});
    const auto f = funk_horofunction(half, p2(0, 1), p2(0, 1));
    const auto e = extend_homogeneous(f, half, p2(1, 0));
    for (const Point& y : {p2(0, 1), p2(5, 0.2), p2(-3, 4)})
        EXPECT_NEAR(e(y), f(y), 1e-10);
}

TEST(Extension, TangentConeFunkPartExtendsToItself)
{
    // f_{τ,p} with τ = τ(T,x) is homogeneous along x, and its extension from
    // T to τ is f_{τ,p} again
    const Point x = p2(1, 0);
    const PolyCone tau = open_tangent_cone(orthant(), x);
    const auto f = funk_horofunction(tau, p2(1, 2), p2(1, 1));
    HorofunctionEvaluator on_t{HoroKind::Funk, p2(1, 1), [&](const Point& y) {
                                   if (!orthant().contains(y))
                                       throw DomainError("outside T");
                                   return f(y);
                               }};
    const auto e = extend_homogeneous(on_t, orthant(), x);
    for (const Point& y : {p2(2, 3), p2(-5, 0.5), p2(-100, 1e-3)}) {
        EXPECT_TRUE(tau.contains(y));
        EXPECT_NEAR(e(y), f(y), 1e-10);
    }
}

TEST(Extension, RejectsNonHomogeneous)
{
    HorofunctionEvaluator h{HoroKind::Sampled, p2(1, 1), [](const Point& v) { return v[0] * v[0] - 1.0; }};
    EXPECT_THROW(extend_homogeneous(h, orthant(), p2(1, 0)), DomainError);
}

TEST(ZSet, Examples)
{
    const auto z = z_set(orthant(), p2(1, 1), p2(1, 1));
    EXPECT_NEAR(z.slice_normal[0], 1.0, 1e-15);
    EXPECT_NEAR(z.slice_normal[1], 1.0, 1e-15);
    EXPECT_TRUE(z.contains(p2(0.5, 0.5)));
    EXPECT_FALSE(z.contains(p2(0.6, 0.5)));
    EXPECT_FALSE(z.contains(p2(-0.1, 0.5)));
    const auto z2 = z_set(orthant(), p2(2, 1), p2(1, 1));
    // M(b/x) = max(1/2, 1) = 1, so the slice is 2z1 + z2 <= 1
    EXPECT_NEAR(z2.slice_normal[0], 2.0, 1e-15);
    EXPECT_NEAR(z2.slice_normal[1], 1.0, 1e-15);
    EXPECT_EQ(z2.vertices.size(), 3u);
    EXPECT_THROW(z_set(orthant(), p2(1, -1), p2(1, 1)), DomainError);
}

TEST(ZSet, ConjugateExamples)
{
    EXPECT_NEAR(conjugate_check(orthant(), p2(1, 1), p2(1, 1), {p2(3, 2), p2(1, 1), p2(0, 0)}), 0.0, 1e-12);
    std::mt19937_64 rng(33);
    std::vector<Point> probes;
    for (int s = 0; s < 500; ++s)
        probes.push_back(lift_point(oracle::random_in_box(rng, 2, 1.0)) * std::exp(oracle::random_in_box(rng, 1, 2)[0]));
    EXPECT_LE(conjugate_check(square_cone(), lift_point(p2(0.3, -0.6)), lift_point(p2(0, 0)), probes), 1e-8);
}

TEST(LambdaMap, Examples)
{
    const Point q = make_vector({0.3, -0.2, 1.0});
    const Point l = lambda_map(q);
    EXPECT_EQ(l, make_vector({0.3, -0.2, 0.0}));
    EXPECT_EQ(lambda_map(make_vector({1, 0, 0.5})), make_vector({2, 0, 1}));
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> h(0.05, 1.0), t(0.0, 1.0);
    for (int s = 0; s < 300; ++s) {
        Point a = oracle::random_in_box(rng, 3, 1.0), c = oracle::random_in_box(rng, 3, 1.0);
        a[2] = h(rng);
        c[2] = h(rng);
        EXPECT_LE((lambda_inv(lambda_map(a)) - a).norm(), 1e-12);
        const Point m = a + t(rng) * (c - a);
        EXPECT_LE(collinearity_residual(lambda_map(a), lambda_map(m), lambda_map(c)),
                  1e-10 * std::max(1.0, (lambda_map(a) - lambda_map(c)).norm()));
    }
    EXPECT_THROW(lambda_map(make_vector({1, 0, 0})), DomainError);
    EXPECT_THROW(lambda_inv(make_vector({1, 0, -1})), DomainError);
}
