#include "hilbert/lp.hpp"

#include <cmath>

namespace hilbert::lp {

namespace {

constexpr double kPivotTol = 1e-11;

class Tableau
{
  public:
    Tableau(int rows, int cols) : rows_(rows), cols_(cols), t_(rows + 1, cols + 1)
    {
        t_.setZero();
        basis_.assign(rows, -1);
    }

    double& at(int r, int c) { return t_(r, c); }
    double rhs(int r) const { return t_(r, cols_); }
    double& rhs(int r) { return t_(r, cols_); }
    double& obj(int c) { return t_(rows_, c); }
    double obj_value() const { return t_(rows_, cols_); }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::vector<int>& basis() { return basis_; }

    void pivot(int r, int c)
    {
        const double p = t_(r, c);
        t_.row(r) /= p;
        for (int i = 0; i <= rows_; ++i) {
            if (i == r)
                continue;
            const double f = t_(i, c);
            if (f != 0.0)
                t_.row(i) -= f * t_.row(r);
        }
        basis_[r] = c;
    }

    // Objective row stores reduced costs of a minimization: entering
    // columns have negative cost. Bland's rule on both choices.
    Status run(const std::vector<bool>& allowed)
    {
        for (int iter = 0; iter < 50000; ++iter) {
            int enter = -1;
            for (int c = 0; c < cols_; ++c) {
                if (allowed[c] && t_(rows_, c) < -kPivotTol) {
                    enter = c;
                    break;
                }
            }
            if (enter < 0)
                return Status::Optimal;
            int leave = -1;
            double best = 0.0;
            for (int r = 0; r < rows_; ++r) {
                const double a = t_(r, enter);
                if (a > kPivotTol) {
                    const double ratio = t_(r, cols_) / a;
                    if (leave < 0 || ratio < best - 1e-14 ||
                        (std::abs(ratio - best) <= 1e-14 && basis_[r] < basis_[leave])) {
                        leave = r;
                        best = ratio;
                    }
                }
            }
            if (leave < 0)
                return Status::Unbounded;
            pivot(leave, enter);
        }
        return Status::Unbounded;
    }

  private:
    int rows_;
    int cols_;
    Matrix t_;
    std::vector<int> basis_;
};

}  // namespace

Result solve(const Program& program)
{
    const int n = program.num_vars;
    const int m = static_cast<int>(program.constraints.size());

    // Column layout: split variables, then slack/surplus, then artificials.
    std::vector<int> pos_col(n), neg_col(n, -1);
    int cols = 0;
    for (int j = 0; j < n; ++j) {
        pos_col[j] = cols++;
        if (!program.free_var.empty() && program.free_var[j])
            neg_col[j] = cols++;
    }

    struct RowPlan
    {
        double sign;
        Relation rel;
        int slack = -1;
        int artificial = -1;
    };
    std::vector<RowPlan> plan(m);
    for (int i = 0; i < m; ++i) {
        const auto& c = program.constraints[i];
        double sign = c.rhs < 0 ? -1.0 : 1.0;
        Relation rel = c.relation;
        if (sign < 0 && rel != Relation::Equal)
            rel = rel == Relation::LessEqual ? Relation::GreaterEqual : Relation::LessEqual;
        plan[i].sign = sign;
        plan[i].rel = rel;
        if (rel != Relation::Equal)
            plan[i].slack = cols++;
    }
    const int before_artificial = cols;
    for (int i = 0; i < m; ++i)
        if (plan[i].rel != Relation::LessEqual)
            plan[i].artificial = cols++;

    Tableau tab(m, cols);
    for (int i = 0; i < m; ++i) {
        const auto& c = program.constraints[i];
        for (int j = 0; j < n && j < static_cast<int>(c.coeffs.size()); ++j) {
            tab.at(i, pos_col[j]) = plan[i].sign * c.coeffs[j];
            if (neg_col[j] >= 0)
                tab.at(i, neg_col[j]) = -plan[i].sign * c.coeffs[j];
        }
        tab.rhs(i) = plan[i].sign * c.rhs;
        if (plan[i].slack >= 0)
            tab.at(i, plan[i].slack) = plan[i].rel == Relation::LessEqual ? 1.0 : -1.0;
        if (plan[i].artificial >= 0) {
            tab.at(i, plan[i].artificial) = 1.0;
            tab.basis()[i] = plan[i].artificial;
        } else {
            tab.basis()[i] = plan[i].slack;
        }
    }

    // Phase 1: minimize the sum of artificials.
    for (int i = 0; i < m; ++i) {
        if (plan[i].artificial < 0)
            continue;
        for (int c = 0; c <= cols; ++c)
            if (c != plan[i].artificial)
                tab.obj(c) -= tab.at(i, c);
    }
    std::vector<bool> allowed(cols, true);
    tab.run(allowed);

    double infeasibility = 0.0;
    for (int i = 0; i < m; ++i)
        if (tab.basis()[i] >= before_artificial)
            infeasibility += std::abs(tab.rhs(i));
    double scale = 1.0;
    for (const auto& c : program.constraints)
        scale = std::max(scale, std::abs(c.rhs));
    Result result;
    if (infeasibility > 1e-9 * scale) {
        result.status = Status::Infeasible;
        return result;
    }

    // Drive remaining (zero-level) artificials out of the basis.
    for (int i = 0; i < m; ++i) {
        if (tab.basis()[i] < before_artificial)
            continue;
        for (int c = 0; c < before_artificial; ++c) {
            if (std::abs(tab.at(i, c)) > 1e-9) {
                tab.pivot(i, c);
                break;
            }
        }
    }

    // Phase 2: original objective (maximize c·x == minimize -c·x).
    for (int c = 0; c <= cols; ++c)
        tab.obj(c) = 0.0;
    for (int j = 0; j < n; ++j) {
        tab.obj(pos_col[j]) = -program.objective[j];
        if (neg_col[j] >= 0)
            tab.obj(neg_col[j]) = program.objective[j];
    }
    for (int i = 0; i < m; ++i) {
        const int b = tab.basis()[i];
        const double f = tab.obj(b);
        if (f == 0.0)
            continue;
        for (int c = 0; c <= cols; ++c)
            tab.obj(c) -= f * tab.at(i, c);
    }
    for (int c = before_artificial; c < cols; ++c)
        allowed[c] = false;
    const Status st = tab.run(allowed);
    if (st == Status::Unbounded) {
        result.status = Status::Unbounded;
        return result;
    }

    std::vector<double> col_value(cols, 0.0);
    for (int i = 0; i < m; ++i)
        col_value[tab.basis()[i]] = tab.rhs(i);
    result.x.assign(n, 0.0);
    for (int j = 0; j < n; ++j) {
        result.x[j] = col_value[pos_col[j]];
        if (neg_col[j] >= 0)
            result.x[j] -= col_value[neg_col[j]];
    }
    result.objective = 0.0;
    for (int j = 0; j < n; ++j)
        result.objective += program.objective[j] * result.x[j];
    result.status = Status::Optimal;
    return result;
}

}  // namespace hilbert::lp
