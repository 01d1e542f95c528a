#include "hilbert/poly_cone.hpp"

#include "hilbert/lp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>

namespace hilbert {

namespace {

bool lex_less(const Vector& a, const Vector& b)
{
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        if (a[k] < b[k] - 1e-13)
            return true;
        if (a[k] > b[k] + 1e-13)
            return false;
    }
    return false;
}

std::vector<double> row(const Vector& v, double extra_sign = 0.0)
{
    std::vector<double> r(v.data(), v.data() + v.size());
    if (extra_sign != 0.0)
        r.push_back(extra_sign);
    return r;
}

// max t s.t. a_i·v >= t, |v_k| <= 1, t <= 1; returns (t, v)
std::pair<double, Vector> max_min_slack(Eigen::Index dim, const std::vector<Vector>& normals)
{
    const int n = static_cast<int>(dim);
    lp::Program prog(n + 1);
    for (int k = 0; k <= n; ++k)
        prog.free_var[k] = true;
    prog.objective[n] = 1.0;
    for (const auto& a : normals)
        prog.add(row(a, -1.0), lp::Relation::GreaterEqual, 0.0);
    for (int k = 0; k < n; ++k) {
        std::vector<double> e(n + 1, 0.0);
        e[k] = 1.0;
        prog.add(e, lp::Relation::LessEqual, 1.0);
        prog.add(e, lp::Relation::GreaterEqual, -1.0);
    }
    std::vector<double> t(n + 1, 0.0);
    t[n] = 1.0;
    prog.add(t, lp::Relation::LessEqual, 1.0);
    const auto res = lp::solve(prog);
    if (res.status != lp::Status::Optimal)
        return {-kInf, Vector::Zero(dim)};
    Vector v(dim);
    for (int k = 0; k < n; ++k)
        v[k] = res.x[k];
    return {res.x[n], v};
}

// Is `a` nonnegative on the closed cone {v : b·v >= 0 for b in others}?
bool implied_by(Eigen::Index dim, const Vector& a, const std::vector<Vector>& others, double tol)
{
    const int n = static_cast<int>(dim);
    lp::Program prog(n);
    for (int k = 0; k < n; ++k) {
        prog.free_var[k] = true;
        prog.objective[k] = -a[k];
    }
    for (const auto& b : others)
        prog.add(row(b), lp::Relation::GreaterEqual, 0.0);
    for (int k = 0; k < n; ++k) {
        std::vector<double> e(n, 0.0);
        e[k] = 1.0;
        prog.add(e, lp::Relation::LessEqual, 1.0);
        prog.add(e, lp::Relation::GreaterEqual, -1.0);
    }
    const auto res = lp::solve(prog);
    return res.status == lp::Status::Optimal && res.objective <= tol;
}

// Point x with a_i·x = 0 (i in zero) and a_j·x >= 1 (j in positive)
std::optional<Vector> face_witness(Eigen::Index dim, const std::vector<Vector>& zero,
                                   const std::vector<Vector>& positive)
{
    const int n = static_cast<int>(dim);
    lp::Program prog(n);
    for (int k = 0; k < n; ++k)
        prog.free_var[k] = true;
    for (const auto& a : zero)
        prog.add(row(a), lp::Relation::Equal, 0.0);
    for (const auto& a : positive)
        prog.add(row(a), lp::Relation::GreaterEqual, 1.0);
    const auto res = lp::solve(prog);
    if (res.status == lp::Status::Infeasible)
        return std::nullopt;
    Vector x(dim);
    for (int k = 0; k < n; ++k)
        x[k] = res.status == lp::Status::Optimal ? res.x[k] : 0.0;
    // Verify rather than trust the solver's tolerances.
    const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
    for (const auto& a : zero)
        if (std::abs(a.dot(x)) > 1e-8 * scale)
            return std::nullopt;
    for (const auto& a : positive)
        if (a.dot(x) < 1.0 - 1e-8 * scale)
            return std::nullopt;
    return x;
}

}  // namespace

PolyCone::PolyCone(Eigen::Index dim, std::vector<Vector> normals, double tol)
    : dim_(dim), tol_(tol)
{
    if (dim_ < 1)
        throw DomainError("PolyCone: dimension must be positive");
    if (!(tol_ > 0))
        throw DomainError("PolyCone: tolerance must be positive");
    std::vector<Vector> unit;
    for (auto& a : normals) {
        require_dim(a, dim_, "PolyCone normal");
        const double n = a.norm();
        if (!(n > 0) || !a.allFinite())
            throw DomainError("PolyCone: zero or non-finite normal");
        Vector u = a / n;
        bool dup = false;
        for (const auto& w : unit)
            dup = dup || (w - u).norm() <= 1e-12;
        if (!dup)
            unit.push_back(u);
    }

    auto [t, v] = max_min_slack(dim_, unit);
    if (!(t > tol_))
        throw DomainError("PolyCone: cone is not solid (no strictly interior point)");

    // Drop normals implied by the others; the open cone is unchanged.
    for (std::size_t j = 0; j < unit.size();) {
        std::vector<Vector> others;
        for (std::size_t i = 0; i < unit.size(); ++i)
            if (i != j)
                others.push_back(unit[i]);
        if (!others.empty() && implied_by(dim_, unit[j], others, 1e-10))
            unit.erase(unit.begin() + static_cast<std::ptrdiff_t>(j));
        else
            ++j;
    }
    std::sort(unit.begin(), unit.end(), lex_less);
    normals_ = std::move(unit);

    if (normals_.empty()) {
        interior_ = Vector::Zero(dim_);
        interior_[0] = 1.0;
    } else {
        interior_ = v / v.norm();
    }
}

Vector PolyCone::slacks(const Point& x) const
{
    require_dim(x, dim_, "PolyCone::slacks");
    Vector s(static_cast<Eigen::Index>(normals_.size()));
    for (std::size_t i = 0; i < normals_.size(); ++i)
        s[static_cast<Eigen::Index>(i)] = normals_[i].dot(x);
    return s;
}

bool PolyCone::contains(const Point& x) const
{
    require_dim(x, dim_, "PolyCone::contains");
    const double scale = std::max(x.norm(), 1e-300);
    if (x.norm() == 0)
        return false;
    for (const auto& a : normals_)
        if (a.dot(x) / scale <= tol_)
            return false;
    return true;
}

std::vector<int> PolyCone::active_set(const Point& x) const
{
    require_dim(x, dim_, "PolyCone::active_set");
    const double n = x.norm();
    std::vector<int> active;
    for (std::size_t i = 0; i < normals_.size(); ++i) {
        const double s = n > 0 ? normals_[i].dot(x) / n : 0.0;
        if (std::abs(s) <= tol_)
            active.push_back(static_cast<int>(i));
    }
    return active;
}

bool PolyCone::is_boundary_point(const Point& x) const
{
    require_dim(x, dim_, "PolyCone::is_boundary_point");
    const double n = x.norm();
    if (n == 0)
        return !normals_.empty();
    bool any_active = false;
    for (const auto& a : normals_) {
        const double s = a.dot(x) / n;
        if (s < -tol_)
            return false;
        any_active = any_active || std::abs(s) <= tol_;
    }
    return any_active;
}

PolyCone PolyCone::subcone(const std::vector<int>& indices) const
{
    std::vector<Vector> sub;
    for (int i : indices)
        sub.push_back(normals_.at(static_cast<std::size_t>(i)));
    return PolyCone(dim_, std::move(sub), tol_);
}

bool PolyCone::operator==(const PolyCone& other) const
{
    if (dim_ != other.dim_ || normals_.size() != other.normals_.size())
        return false;
    for (std::size_t i = 0; i < normals_.size(); ++i)
        if ((normals_[i] - other.normals_[i]).norm() > 1e-9)
            return false;
    return true;
}

bool GeneratedCone::contains(const Vector& z, double tol) const
{
    require_dim(z, dim, "GeneratedCone::contains");
    if (generators.empty())
        return z.norm() <= tol;
    const int m = static_cast<int>(generators.size());
    lp::Program prog(m);
    for (Eigen::Index k = 0; k < dim; ++k) {
        std::vector<double> r(m);
        for (int j = 0; j < m; ++j)
            r[j] = generators[j][k];
        prog.add(r, lp::Relation::Equal, z[k]);
    }
    const auto res = lp::solve(prog);
    if (res.status != lp::Status::Optimal)
        return false;
    Vector rec = Vector::Zero(dim);
    for (int j = 0; j < m; ++j)
        rec += res.x[j] * generators[j];
    return (rec - z).norm() <= tol * std::max(1.0, z.norm());
}

GeneratedCone dual_cone(const PolyCone& c)
{
    return {c.dim(), c.normals()};
}

PolyCone dual_cone(const GeneratedCone& g, double tol)
{
    return PolyCone(g.dim, g.generators, tol);
}

Matrix lineality(const PolyCone& c)
{
    if (c.normals().empty())
        return Matrix::Identity(c.dim(), c.dim());
    Matrix a(static_cast<Eigen::Index>(c.size()), c.dim());
    for (std::size_t i = 0; i < c.size(); ++i)
        a.row(static_cast<Eigen::Index>(i)) = c.normals()[i].transpose();
    Eigen::FullPivLU<Matrix> lu(a);
    lu.setThreshold(1e-10);
    if (lu.rank() == c.dim())
        return Matrix(c.dim(), 0);
    Matrix k = lu.kernel();
    // Orthonormalize for convenience.
    Eigen::HouseholderQR<Matrix> qr(k);
    return qr.householderQ() * Matrix::Identity(c.dim(), k.cols());
}

PolyCone open_tangent_cone(const PolyCone& c, const Point& x)
{
    require_dim(x, c.dim(), "open_tangent_cone");
    const double n = x.norm();
    if (n > 0) {
        for (const auto& a : c.normals())
            if (a.dot(x) / n < -c.tol())
                throw DomainError("open_tangent_cone: point violates a cone inequality");
    }
    const auto active = c.active_set(x);
    if (active.empty())
        throw DomainError("open_tangent_cone: point is interior (no active normal)");
    return c.subcone(active);
}

PolyCone ConeChain::final_cone() const
{
    PolyCone current = base;
    for (const auto& x : steps) {
        if (!current.is_boundary_point(x))
            throw DomainError("ConeChain: step is not a boundary point of the current cone");
        current = open_tangent_cone(current, x);
    }
    return current;
}

std::vector<TangentMember> tangent_cone_family(const PolyCone& c)
{
    constexpr std::size_t kMaxNormals = 20;
    if (c.size() > kMaxNormals)
        throw UnsupportedError("tangent_cone_family: too many normals for subset enumeration");

    std::vector<TangentMember> family;
    std::map<std::vector<int>, std::size_t> seen;
    std::vector<int> all(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        all[i] = static_cast<int>(i);
    family.push_back({c, all, ConeChain{c, {}}});
    seen[all] = 0;

    for (std::size_t head = 0; head < family.size(); ++head) {
        const std::vector<int> current = family[head].normal_indices;
        const std::size_t k = current.size();
        // Nonempty proper subsets S' of the current normals achievable as
        // the active set of some boundary point.
        for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << k); ++mask) {
            std::vector<int> subset;
            std::vector<Vector> zero, positive;
            for (std::size_t b = 0; b < k; ++b) {
                const int idx = current[b];
                if (mask & (std::uint64_t{1} << b)) {
                    subset.push_back(idx);
                    zero.push_back(c.normals()[static_cast<std::size_t>(idx)]);
                } else {
                    positive.push_back(c.normals()[static_cast<std::size_t>(idx)]);
                }
            }
            if (seen.count(subset))
                continue;
            auto x = face_witness(c.dim(), zero, positive);
            if (!x)
                continue;
            Vector point = *x / x->norm();
            ConeChain chain = family[head].chain;
            chain.steps.push_back(point);
            TangentMember member{chain.final_cone(), subset, chain};
            seen[subset] = family.size();
            family.push_back(std::move(member));
        }
    }
    return family;
}

PolyCone lift_polytope_to_cone(const Polytope& body)
{
    std::vector<Vector> normals;
    for (const auto& f : body.facets()) {
        Vector a(body.dim() + 1);
        a.head(body.dim()) = -f.normal;
        a[body.dim()] = f.offset;
        normals.push_back(a);
    }
    return PolyCone(body.dim() + 1, std::move(normals), body.tol());
}

Point lift_point(const Point& x)
{
    Point y(x.size() + 1);
    y.head(x.size()) = x;
    y[x.size()] = 1.0;
    return y;
}

std::vector<Vector> extreme_rays(const PolyCone& c)
{
    const auto n = c.dim();
    if (lineality(c).cols() != 0)
        throw DomainError("extreme_rays: cone contains lines");
    std::vector<Vector> rays;
    const int m = static_cast<int>(c.size());
    const int k = static_cast<int>(n) - 1;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i)
        idx[i] = i;
    if (k == 0 || k > m)
        return rays;
    while (true) {
        Matrix a(k, n);
        for (int r = 0; r < k; ++r)
            a.row(r) = c.normals()[static_cast<std::size_t>(idx[r])].transpose();
        Eigen::FullPivLU<Matrix> lu(a);
        lu.setThreshold(1e-10);
        if (lu.rank() == k) {
            Vector r = lu.kernel().col(0).normalized();
            for (int sign = 0; sign < 2; ++sign, r = -r) {
                bool ok = true;
                bool strict = false;
                for (const auto& nrm : c.normals()) {
                    const double s = nrm.dot(r);
                    ok = ok && s >= -1e-10;
                    strict = strict || s > 1e-10;
                }
                if (ok && strict) {
                    bool dup = false;
                    for (const auto& q : rays)
                        dup = dup || (q - r).norm() < 1e-9;
                    if (!dup)
                        rays.push_back(r);
                }
            }
        }
        int i = k - 1;
        while (i >= 0 && idx[i] == m - k + i)
            --i;
        if (i < 0)
            break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    std::sort(rays.begin(), rays.end(), lex_less);
    return rays;
}

std::vector<ConeFace> proper_faces(const PolyCone& c, const std::vector<Vector>& rays)
{
    // Ray sets of facets, then closure under intersection.
    std::set<std::vector<int>> ray_sets;
    for (const auto& a : c.normals()) {
        std::vector<int> s;
        for (std::size_t r = 0; r < rays.size(); ++r)
            if (std::abs(a.dot(rays[r])) <= 1e-9)
                s.push_back(static_cast<int>(r));
        if (!s.empty())
            ray_sets.insert(s);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<int>> current(ray_sets.begin(), ray_sets.end());
        for (std::size_t i = 0; i < current.size(); ++i)
            for (std::size_t j = i + 1; j < current.size(); ++j) {
                std::vector<int> meet;
                std::set_intersection(current[i].begin(), current[i].end(), current[j].begin(),
                                      current[j].end(), std::back_inserter(meet));
                if (!meet.empty() && ray_sets.insert(meet).second)
                    grew = true;
            }
    }
    std::vector<ConeFace> faces;
    for (const auto& rs : ray_sets) {
        ConeFace f;
        f.ray_indices = rs;
        for (std::size_t i = 0; i < c.size(); ++i) {
            bool vanishes = true;
            for (int r : rs)
                vanishes = vanishes && std::abs(c.normals()[i].dot(rays[static_cast<std::size_t>(r)])) <= 1e-9;
            if (vanishes)
                f.normal_indices.push_back(static_cast<int>(i));
        }
        faces.push_back(std::move(f));
    }
    return faces;
}

bool is_exposed_face(const GeneratedCone& big, const GeneratedCone& small)
{
    std::vector<Vector> zero, positive;
    for (const auto& g : big.generators) {
        bool in_small = false;
        for (const auto& h : small.generators)
            in_small = in_small || (g - h).norm() <= 1e-9;
        (in_small ? zero : positive).push_back(g);
    }
    if (zero.size() != small.generators.size())
        return false;
    return face_witness(big.dim, zero, positive).has_value();
}

}  // namespace hilbert
