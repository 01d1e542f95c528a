#include "hilbert/fixtures.hpp"
#include "hilbert/metrics.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hilbert;

namespace {

Point p2(double a, double b) { return make_vector({a, b}); }

const PolyCone& orthant()
{
    static const PolyCone c(2, {p2(1, 0), p2(0, 1)});
    return c;
}

Point draw_interior(const ConvexBody& body, std::mt19937_64& rng)
{
    const auto [lo, hi] = body.bounding_box();
    std::uniform_real_distribution<double> u(0.0, 1.0);
    while (true) {
        Point p(body.dim());
        for (Eigen::Index k = 0; k < p.size(); ++k)
            p[k] = lo[k] + u(rng) * (hi[k] - lo[k]);
        if (body.margin(p) > 1e-6)
            return p;
    }
}

}  // namespace

TEST(MRatio, Examples)
{
    EXPECT_DOUBLE_EQ(m_ratio(orthant(), p2(2, 3), p2(1, 1)), 3.0);
    EXPECT_DOUBLE_EQ(m_ratio(orthant(), p2(0.4, 0.7), p2(0.4, 0.7)), 1.0);
    EXPECT_DOUBLE_EQ(m_ratio(orthant(), p2(-1, -2), p2(1, 1)), 0.0);
    EXPECT_THROW(m_ratio(orthant(), p2(1, 1), p2(1, 0)), DomainError);
}

TEST(MRatio, AgreesWithBisectionOnTheDefinition)
{
    // inf{λ > 0 : λx − y in the closed square cone}, membership via the section
    std::mt19937_64 rng(21);
    const PolyCone sq = lift_polytope_to_cone(*fixture_body("square").as_polytope());
    auto inside = [](const oracle::Vec& v) {
        if (v[2] < 0)
            return false;
        return std::abs(v[0]) <= v[2] * (1 + 1e-15) && std::abs(v[1]) <= v[2] * (1 + 1e-15);
    };
    for (int s = 0; s < 300; ++s) {
        const Point x = lift_point(oracle::random_in_box(rng, 2, 0.95));
        Point y = oracle::random_in_box(rng, 3, 2.0);
        const double want = oracle::gauge_bisect(inside, y, x);
        EXPECT_NEAR(m_ratio(sq, y, x), want, 1e-12 * std::max(1.0, want));
    }
}

TEST(FunkCone, Examples)
{
    EXPECT_NEAR(funk_cone(orthant(), p2(1, 1), p2(2, 3)), std::log(0.5), 1e-15);
    EXPECT_EQ(funk_cone(orthant(), p2(0.3, 2), p2(0.3, 2)), 0.0);
    EXPECT_NEAR(funk_cone(orthant(), p2(2, 3), p2(1, 1)), std::log(3.0), 1e-15);
    EXPECT_EQ(funk_cone(orthant(), p2(-1, -1), p2(1, 1)), -kInf);
}

TEST(FunkBody, Examples)
{
    const auto sq = fixture_body("square");
    EXPECT_NEAR(funk_body(sq, p2(0, 0), p2(0.5, 0)), std::log(2.0), 1e-15);
    EXPECT_EQ(funk_body(sq, p2(0.1, 0.2), p2(0.1, 0.2)), 0.0);
    const auto disk = fixture_body("disk");
    for (double r : {0.1, 0.5, 0.9, 0.999})
        EXPECT_NEAR(funk_body(disk, p2(0, 0), p2(r, 0)), std::log(1 / (1 - r)), 1e-12);
    EXPECT_THROW(funk_body(sq, p2(1, 0), p2(0, 0)), DomainError);
}

TEST(FunkBody, HandCrossRatioOracle)
{
    std::mt19937_64 rng(22);
    const auto sq = fixture_body("square");
    const auto disk = fixture_body("disk");
    for (int s = 0; s < 1000; ++s) {
        const Point x = oracle::random_in_box(rng, 2, 0.7), y = oracle::random_in_box(rng, 2, 0.7);
        EXPECT_NEAR(funk_body(sq, x, y), oracle::funk(oracle::box_exit, x, y), 1e-12);
        EXPECT_NEAR(hilbert::hilbert(sq, x, y), oracle::hilbert(oracle::box_exit, x, y), 1e-12);
        EXPECT_NEAR(hilbert::hilbert(disk, x, y), oracle::hilbert(oracle::disk_exit, x, y), 1e-12);
    }
}

TEST(ReverseFunk, Examples)
{
    const auto sq = fixture_body("square");
    EXPECT_NEAR(reverse_funk(sq, p2(0, 0), p2(0.5, 0)), std::log(1.5), 1e-15);
    EXPECT_EQ(reverse_funk(sq, p2(0.3, 0.3), p2(0.3, 0.3)), 0.0);
    // boundary second argument on a cone
    EXPECT_NEAR(reverse_funk(orthant(), p2(1, 1), p2(1, 0)), 0.0, 1e-15);
}

TEST(Hilbert, Examples)
{
    const auto sq = fixture_body("square");
    EXPECT_NEAR(hilbert::hilbert(sq, p2(0, 0), p2(0.5, 0)), std::log(3.0), 1e-15);
    const auto disk = fixture_body("disk");
    for (double r : {0.1, 0.3, 0.5, 0.7, 0.9})
        EXPECT_NEAR(hilbert::hilbert(disk, p2(0, 0), p2(r, 0)), std::log((1 + r) / (1 - r)), 1e-12);
    EXPECT_NEAR(hilbert::hilbert(orthant(), p2(1, 2), p2(3, 6)), 0.0, 1e-15);
}

TEST(Hilbert, ProjectiveInvariance)
{
    std::mt19937_64 rng(23);
    const PolyCone sq = lift_polytope_to_cone(*fixture_body("square").as_polytope());
    std::uniform_real_distribution<double> scale(0.01, 100.0);
    for (int s = 0; s < 500; ++s) {
        const Point x = lift_point(oracle::random_in_box(rng, 2, 0.9));
        const Point y = lift_point(oracle::random_in_box(rng, 2, 0.9));
        EXPECT_NEAR(hilbert::hilbert(sq, scale(rng) * x, scale(rng) * y), hilbert::hilbert(sq, x, y), 1e-12);
    }
}

TEST(GaugeRoute, AgreesWithCrossRatioOnAllFixtures)
{
    std::mt19937_64 rng(24);
    for (const std::string name : {"disk", "square", "triangle", "cube", "segment", "example2", "example4d"}) {
        const auto body = fixture_body(name);
        double worst = 0;
        for (int s = 0; s < 500; ++s) {
            const Point x = draw_interior(body, rng), y = draw_interior(body, rng);
            for (Metric m : {Metric::Funk, Metric::Reverse, Metric::Hilbert})
                worst = std::max(worst, std::abs(distance(body, m, x, y) - distance_gauge_route(body, m, x, y)));
        }
        EXPECT_LE(worst, 1e-9) << name;
    }
}

TEST(Metric, TriangleInequalities)
{
    std::mt19937_64 rng(25);
    for (const std::string name : {"disk", "triangle", "example4d"}) {
        const auto body = fixture_body(name);
        for (int s = 0; s < 2000; ++s) {
            const Point x = draw_interior(body, rng), y = draw_interior(body, rng), z = draw_interior(body, rng);
            EXPECT_LE(funk_body(body, x, z), funk_body(body, x, y) + funk_body(body, y, z) + 1e-9) << name;
            EXPECT_LE(hilbert::hilbert(body, x, z), hilbert::hilbert(body, x, y) + hilbert::hilbert(body, y, z) + 1e-9)
                << name;
        }
    }
}

TEST(Metric, SegmentsAreGeodesics)
{
    std::mt19937_64 rng(26);
    std::uniform_real_distribution<double> t(0.01, 0.99);
    for (const std::string name : {"disk", "square", "example2"}) {
        const auto body = fixture_body(name);
        for (int s = 0; s < 1000; ++s) {
            const Point x = draw_interior(body, rng), z = draw_interior(body, rng);
            const Point y = x + t(rng) * (z - x);
            EXPECT_NEAR(funk_body(body, x, z), funk_body(body, x, y) + funk_body(body, y, z), 1e-9) << name;
            EXPECT_NEAR(hilbert::hilbert(body, x, z), hilbert::hilbert(body, x, y) + hilbert::hilbert(body, y, z), 1e-9)
                << name;
        }
    }
}

TEST(Metric, BiggerConeGivesSmallerFunk)
{
    // T1 = square cone ⊂ T2 = cone over [-2,2]², and ⊂ the half-space of one facet
    std::mt19937_64 rng(27);
    const PolyCone t1 = lift_polytope_to_cone(*fixture_body("square").as_polytope());
    const PolyCone t2 = lift_polytope_to_cone(
        Polytope({p2(2, 2), p2(-2, 2), p2(-2, -2), p2(2, -2)}));
    const PolyCone t3 = t1.subcone({0, 1});
    for (int s = 0; s < 500; ++s) {
        const Point x = lift_point(oracle::random_in_box(rng, 2, 0.95));
        const Point y = lift_point(oracle::random_in_box(rng, 2, 0.95));
        EXPECT_GE(funk_cone(t1, x, y), funk_cone(t2, x, y) - 1e-12);
        EXPECT_GE(funk_cone(t1, x, y), funk_cone(t3, x, y) - 1e-12);
    }
}

TEST(Metric, MRatioContinuityModulus)
{
    std::mt19937_64 rng(28);
    const PolyCone sq = lift_polytope_to_cone(*fixture_body("square").as_polytope());
    for (int s = 0; s < 300; ++s) {
        const Point x = lift_point(oracle::random_in_box(rng, 2, 0.8));
        const Point y = oracle::random_in_box(rng, 3, 2.0);
        const double base = m_ratio(sq, y, x);
        for (double delta : {1e-3, 1e-5, 1e-7}) {
            const Vector dy = delta * oracle::random_in_box(rng, 3, 1.0);
            const Vector dx = delta * oracle::random_in_box(rng, 3, 1.0);
            // slacks of x are at least 0.2/√2, so the ratio moves by O(δ)
            EXPECT_LE(std::abs(m_ratio(sq, y + dy, x + dx) - base), 100 * delta * (1 + std::abs(base)));
        }
    }
}

TEST(Homogeneity, Examples)
{
    const PolyCone half(2, {p2(0, 1)});
    const auto r = homogeneity_shift(half, p2(1, 0), p2(0, 1), p2(0, 1), 2.0);
    EXPECT_NEAR(r.first, std::log(2.0), 1e-15);
    EXPECT_NEAR(r.second, -std::log(2.0), 1e-15);
    const auto id = homogeneity_shift(half, p2(1, 0), p2(1, 2), p2(0, 1), 1.0);
    EXPECT_NEAR(id.first, funk_cone(half, p2(1, 2), p2(0, 1)), 1e-15);
    EXPECT_NEAR(id.second, funk_cone(half, p2(1, 2), p2(0, 1)), 1e-15);
    const auto h = homogeneity_shift(half, p2(1, 0), p2(1, 2), p2(0, 1), 0.5);
    EXPECT_NEAR(h.first, std::log(0.5) + funk_cone(half, p2(1, 2), p2(0, 1)), 1e-15);
    EXPECT_LE(h.residual, 1e-10);
    EXPECT_THROW(homogeneity_shift(half, p2(0, 1), p2(1, 2), p2(0, 1), 0.5), DomainError);
    EXPECT_THROW(homogeneity_shift(half, p2(1, 0), p2(1, 2), p2(0, 1), 0.0), DomainError);
}

TEST(MetricName, ParseRoundTrip)
{
    for (Metric m : {Metric::Funk, Metric::Reverse, Metric::Hilbert})
        EXPECT_EQ(parse_metric(metric_name(m)), m);
    EXPECT_EQ(parse_metric("reverse-funk"), Metric::Reverse);
    EXPECT_THROW(parse_metric("euclid"), DomainError);
}
