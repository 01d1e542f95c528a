#pragma once

#include "hilbert/core.hpp"

#include <vector>

namespace hilbert::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint
{
    std::vector<double> coeffs;
    Relation relation = Relation::LessEqual;
    double rhs = 0.0;
};

/// maximize objective·x subject to the constraints. Variables are
/// nonnegative unless flagged free.
struct Program
{
    int num_vars = 0;
    std::vector<bool> free_var;  // empty means all nonnegative
    std::vector<double> objective;
    std::vector<Constraint> constraints;

    explicit Program(int n) : num_vars(n), free_var(n, false), objective(n, 0.0) {}

    void add(std::vector<double> coeffs, Relation rel, double rhs)
    {
        constraints.push_back({std::move(coeffs), rel, rhs});
    }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result
{
    Status status = Status::Infeasible;
    std::vector<double> x;
    double objective = 0.0;
};

/// Dense two-phase simplex with Bland's rule. Intended for the small
/// programs that arise at desk scale (tens of rows, hundreds of columns).
Result solve(const Program& program);

}  // namespace hilbert::lp
