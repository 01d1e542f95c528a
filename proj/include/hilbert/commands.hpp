#pragma once

#include "hilbert/convex_body.hpp"
#include "hilbert/metrics.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace hilbert::cli {

enum ExitCode { Ok = 0, DomainFailure = 2, Unsupported = 3, PropertyFailure = 4 };

struct RunConfig
{
    std::optional<std::string> body_path;
    std::optional<std::string> fixture;
    std::optional<Point> basepoint;
    double tol = kDefaultGeoTol;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::optional<std::string> out;
};

struct CommandResult
{
    int exit_code = Ok;
    std::string output;
};

ConvexBody load_body(const RunConfig& config);
Point load_basepoint(const RunConfig& config, const ConvexBody& body);

struct HorosphereRequest
{
    Metric metric = Metric::Hilbert;
    std::optional<Point> center;            // point-centered sphere
    std::optional<std::string> descriptor;  // path to descriptor JSON (polytope bodies)
    double level = 0.0;
    int resolution = 64;
};

CommandResult cmd_dist(const RunConfig& config, const Point& x, const Point& y, Metric metric);
CommandResult cmd_horosphere(const RunConfig& config, const HorosphereRequest& request);
CommandResult cmd_catalog(const RunConfig& config, bool p_grid = false);

//! Suites: metric-axioms, funk-triangle, route-equivalence, geodesic-segments,
//! ray-exit, polar, all. Polytope bodies always get a convex-position check.
CommandResult cmd_verify(const RunConfig& config, const std::string& suite, int samples = 10000);

CommandResult cmd_closedness(const RunConfig& config);
CommandResult cmd_witness(const RunConfig& config, const std::string& fixture, int n_max);

//! example2, theorem2 (targets a, b), limit (target a)
CommandResult cmd_harness(const RunConfig& config, const std::string& name, const std::optional<Point>& a,
                          const std::optional<Point>& b, int n_max, Metric metric = Metric::Hilbert);

//! Catches library exceptions and maps them to exit codes
CommandResult run_guarded(const std::function<CommandResult()>& fn);

}  // namespace hilbert::cli
