#include "hilbert/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace hilbert {

namespace {

double coordinate_scale(const std::vector<Point>& pts)
{
    double s = 1.0;
    for (const auto& p : pts)
        s = std::max(s, p.cwiseAbs().maxCoeff());
    return s;
}

int affine_rank(const std::vector<Point>& pts, double tol)
{
    if (pts.size() < 2)
        return 0;
    Matrix diffs(static_cast<Eigen::Index>(pts.size() - 1), pts.front().size());
    for (std::size_t i = 1; i < pts.size(); ++i)
        diffs.row(static_cast<Eigen::Index>(i - 1)) = (pts[i] - pts[0]).transpose();
    Eigen::FullPivLU<Matrix> lu(diffs);
    lu.setThreshold(tol);
    return static_cast<int>(lu.rank());
}

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn)
{
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i)
        idx[i] = i;
    if (k > n)
        return;
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i)
            --i;
        if (i < 0)
            return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

std::vector<Facet> polytope_facets(const std::vector<Point>& vertices, double tol)
{
    if (vertices.empty())
        throw DomainError("polytope_facets: no vertices");
    const auto d = vertices.front().size();
    for (const auto& v : vertices)
        require_dim(v, d, "polytope_facets");
    if (d < 1 || d > kMaxFacetDim)
        throw DomainError("polytope_facets: dimension must be between 1 and 4");
    if (vertices.size() > kMaxFacetVertices)
        throw DomainError("polytope_facets: at most 64 vertices supported");
    if (static_cast<Eigen::Index>(vertices.size()) < d + 1 ||
        affine_rank(vertices, 1e-9) < d)
        throw DomainError("polytope_facets: degenerate hull (not full-dimensional)");

    const double scale = coordinate_scale(vertices);
    const double side_tol = std::max(tol, 1e-12) * scale * 10.0;
    const int n = static_cast<int>(vertices.size());

    std::vector<Facet> facets;
    auto add_unique = [&](const Vector& normal, double offset) {
        for (const auto& f : facets)
            if ((f.normal - normal).norm() < 1e-9 && std::abs(f.offset - offset) < 1e-9 * scale)
                return;
        facets.push_back({normal, offset});
    };

    for_each_subset(n, static_cast<int>(d), [&](const std::vector<int>& subset) {
        Vector normal(d);
        if (d == 1) {
            normal << 1.0;
        } else {
            Matrix m(d - 1, d);
            for (Eigen::Index r = 0; r + 1 < d; ++r)
                m.row(r) = (vertices[subset[r + 1]] - vertices[subset[0]]).transpose();
            Eigen::FullPivLU<Matrix> lu(m);
            lu.setThreshold(1e-10);
            if (lu.rank() != d - 1)
                return;
            normal = lu.kernel().col(0);
        }
        normal.normalize();
        const double offset = normal.dot(vertices[subset[0]]);
        bool below = true;
        bool above = true;
        for (const auto& v : vertices) {
            const double s = normal.dot(v) - offset;
            below = below && s <= side_tol;
            above = above && s >= -side_tol;
        }
        if (below)
            add_unique(normal, offset);
        else if (above)
            add_unique(-normal, -offset);
    });

    std::sort(facets.begin(), facets.end(), [](const Facet& a, const Facet& b) {
        return std::lexicographical_compare(a.normal.data(), a.normal.data() + a.normal.size(),
                                            b.normal.data(), b.normal.data() + b.normal.size());
    });
    return facets;
}

Polytope::Polytope(std::vector<Point> points, double tol)
    : dim_(points.empty() ? 0 : points.front().size()), tol_(tol), input_(std::move(points))
{
    facets_ = polytope_facets(input_, tol_);
    const double scale = coordinate_scale(input_);
    const double on_tol = std::max(tol_, 1e-12) * scale * 10.0;

    for (const auto& p : input_) {
        std::vector<Eigen::Index> active;
        for (std::size_t f = 0; f < facets_.size(); ++f)
            if (std::abs(facets_[f].normal.dot(p) - facets_[f].offset) <= on_tol)
                active.push_back(static_cast<Eigen::Index>(f));
        if (static_cast<Eigen::Index>(active.size()) < dim_)
            continue;
        Matrix normals(static_cast<Eigen::Index>(active.size()), dim_);
        for (std::size_t r = 0; r < active.size(); ++r)
            normals.row(static_cast<Eigen::Index>(r)) = facets_[active[r]].normal.transpose();
        Eigen::FullPivLU<Matrix> lu(normals);
        lu.setThreshold(1e-9);
        if (lu.rank() < dim_)
            continue;
        bool duplicate = false;
        for (const auto& v : vertices_)
            duplicate = duplicate || (v - p).norm() <= on_tol;
        if (!duplicate)
            vertices_.push_back(p);
    }

    facet_vertices_.resize(facets_.size());
    for (std::size_t f = 0; f < facets_.size(); ++f)
        for (std::size_t v = 0; v < vertices_.size(); ++v)
            if (std::abs(facets_[f].normal.dot(vertices_[v]) - facets_[f].offset) <= on_tol)
                facet_vertices_[f].push_back(static_cast<int>(v));

    centroid_ = Vector::Zero(dim_);
    for (const auto& v : vertices_)
        centroid_ += v;
    centroid_ /= static_cast<double>(vertices_.size());
}

std::vector<int> Polytope::non_extreme_inputs() const
{
    const double scale = coordinate_scale(input_);
    std::vector<int> out;
    for (std::size_t i = 0; i < input_.size(); ++i) {
        bool found = false;
        for (const auto& v : vertices_)
            found = found || (v - input_[i]).norm() <= 10.0 * tol_ * scale;
        if (!found)
            out.push_back(static_cast<int>(i));
    }
    return out;
}

double Polytope::min_slack(const Point& x) const
{
    double s = kInf;
    for (const auto& f : facets_)
        s = std::min(s, f.offset - f.normal.dot(x));
    return s;
}

}  // namespace hilbert
