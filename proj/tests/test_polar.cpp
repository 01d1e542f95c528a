#include "hilbert/fixtures.hpp"
#include "hilbert/polar.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace hilbert;

namespace {

Point p2(double a, double b) { return make_vector({a, b}); }

bool has_point(const std::vector<Point>& pts, const Point& q)
{
    return std::any_of(pts.begin(), pts.end(), [&](const Point& p) { return (p - q).norm() < 1e-12; });
}

}  // namespace

TEST(Polar, SquareIsDiamond)
{
    const Polytope sq = *fixture_body("square").as_polytope();
    const Polytope pol = polar_polytope(sq);
    ASSERT_EQ(pol.vertices().size(), 4u);
    for (const Point& v : {p2(1, 0), p2(-1, 0), p2(0, 1), p2(0, -1)})
        EXPECT_TRUE(has_point(pol.vertices(), v));
}

TEST(Polar, BipolarIsIdentity)
{
    for (const std::string name : {"square", "triangle", "cube"}) {
        const Polytope p = *fixture_body(name).as_polytope();
        const Polytope bb = polar_polytope(polar_polytope(p));
        ASSERT_EQ(bb.vertices().size(), p.vertices().size()) << name;
        for (const auto& v : p.vertices())
            EXPECT_TRUE(has_point(bb.vertices(), v)) << name;
        EXPECT_LE(hausdorff_distance(bb.vertices(), p.vertices()), 1e-9) << name;
        EXPECT_EQ(polar_polytope(p).vertices().size(), p.facets().size()) << name;
    }
}

TEST(Polar, RequiresOriginInside)
{
    const Polytope shifted({p2(0, 0), p2(1, 0), p2(0, 1)});
    EXPECT_THROW(polar_polytope(shifted), DomainError);
}

TEST(ExtremeSets, FaceCounts)
{
    const auto sq = extreme_sets(*fixture_body("square").as_polytope());
    EXPECT_EQ(sq.faces.size(), 9u);
    EXPECT_EQ(sq.f_vector(), (std::vector<int>{4, 4, 1}));
    const auto seg = extreme_sets(*fixture_body("segment").as_polytope());
    EXPECT_EQ(seg.faces.size(), 3u);
    const auto cube = extreme_sets(*fixture_body("cube").as_polytope());
    EXPECT_EQ(cube.faces.size(), 27u);
    EXPECT_EQ(cube.f_vector(), (std::vector<int>{8, 12, 6, 1}));
    EXPECT_EQ(cube.faces.front().size(), 8u);
    for (std::size_t k = 1; k < cube.faces.size(); ++k)
        EXPECT_GE(cube.faces[k - 1].size(), cube.faces[k].size());
}

TEST(ExtremeSets, ChordTestOnFaces)
{
    const Polytope cube = *fixture_body("cube").as_polytope();
    const auto fam = extreme_sets(cube);
    for (const auto& f : fam.faces)
        EXPECT_EQ(chord_violations(cube, f, 50, 1), 0);
    // two opposite vertices of the square do not form a face
    const Polytope sq = *fixture_body("square").as_polytope();
    const auto& v = sq.vertices();
    int a = -1, b = -1;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(v.size()); ++j)
            if ((v[i] + v[j]).norm() < 1e-12)
                a = i, b = j;
    ASSERT_GE(a, 0);
    EXPECT_GT(chord_violations(sq, {a, b}, 50, 1), 0);
}

TEST(Hausdorff, Examples)
{
    EXPECT_NEAR(hausdorff_distance({p2(0, 0)}, {p2(0.1, 0.1)}), 0.1 * std::sqrt(2.0), 1e-15);
    EXPECT_EQ(hausdorff_distance({p2(0, 0), p2(1, 0)}, {p2(1, 0), p2(0, 0)}), 0.0);
    EXPECT_NEAR(hausdorff_distance({p2(0, 0), p2(3, 4)}, {p2(0, 0)}), 5.0, 1e-15);
    const auto body = fixture_body("square");
    const auto& sq = body.as_polytope()->vertices();
    std::vector<Point> scaled;
    for (const auto& v : sq)
        scaled.push_back(0.9 * v);
    EXPECT_NEAR(hausdorff_distance(sq, scaled), 0.1 * std::sqrt(2.0), 1e-15);
}

TEST(Closedness, Verdicts)
{
    for (const std::string name : {"disk", "square", "triangle", "cube", "segment"})
        EXPECT_EQ(closedness_check(fixture_body(name)).verdict, Closedness::Closed) << name;
    const auto cube = closedness_check(*fixture_body("cube").as_polytope());
    ASSERT_TRUE(cube.polar_faces.has_value());
    EXPECT_EQ(cube.polar_faces->faces.size(), 27u);
    EXPECT_EQ(closedness_check(fixture_body("example2")).verdict, Closedness::Undetermined);
    EXPECT_EQ(closedness_name(Closedness::NotClosed), "NOT_CLOSED");
}

TEST(CircleHull, ExposedFacesOfExample2Polar)
{
    const auto hull = example2_polar();
    const double a = 0.01;
    const auto f = hull.exposed_face(make_vector({std::cos(a), std::sin(a), 0}));
    ASSERT_EQ(f.points.size(), 1u);
    EXPECT_LE((f.points[0] - make_vector({std::cos(a), std::sin(a), 0})).norm(), 1e-12);
    EXPECT_GT(f.gap, 0.0);
    const auto lim = hull.exposed_face(make_vector({1, 0, 0}));
    EXPECT_GE(lim.points.size(), 2u);
    const auto top = hull.exposed_face(make_vector({0, 0, 1}));
    EXPECT_NEAR(top.value, 1.0, 1e-12);
}

TEST(CircleHull, ChordHalfwidth)
{
    const auto hull = example2_polar();
    const auto inner = hull.inner_points(256);
    EXPECT_GT(hull.chord_halfwidth(make_vector({1, 0, 0}), make_vector({0, 0, 1}), inner), 0.5);
    EXPECT_LT(hull.chord_halfwidth(make_vector({2, 0, 0}), make_vector({0, 0, 1}), inner), 0.0);
}

TEST(Witness, Example2AtHundred)
{
    const auto w = nonclosedness_witness("example2", 100);
    ASSERT_EQ(w.sequence.size(), 100u);
    for (const auto& s : w.sequence) {
        EXPECT_TRUE(s.exposed) << s.n;
        EXPECT_GT(s.support_gap, 0.0) << s.n;
        EXPECT_LE(s.hausdorff, s.bound + 1e-12) << s.n;
    }
    EXPECT_NEAR(w.sequence.back().hausdorff, 2 * std::sin(0.005), 1e-12);
    EXPECT_FALSE(w.limit_exposed);
    EXPECT_EQ(w.midpoint_error, 0.0);
    EXPECT_TRUE(w.endpoints_in_polar);
    EXPECT_FALSE(w.limit_extreme);
    EXPECT_LE(w.searched_halfwidth, 1e-9);
}

TEST(Witness, Example4dAtHundred)
{
    const auto w = nonclosedness_witness("example4d", 100);
    for (const auto& s : w.sequence) {
        EXPECT_TRUE(s.exposed) << s.n;
        EXPECT_LE(s.hausdorff, s.bound + 1e-12) << s.n;
    }
    EXPECT_FALSE(w.limit_extreme);
    EXPECT_THROW(nonclosedness_witness("square", 10), DomainError);
    EXPECT_THROW(nonclosedness_witness("example2", 0), DomainError);
}
