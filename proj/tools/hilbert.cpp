#include "hilbert/commands.hpp"
#include "hilbert/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace hilbert;

int main(int argc, char** argv)
{
    CLI::App app{"Funk, reverse-Funk and Hilbert geometry of convex bodies"};
    app.require_subcommand(1);
    app.fallthrough();

    cli::RunConfig config;
    std::string basepoint, metric_text = "hilbert";
    app.add_option("--body", config.body_path, "Body description (JSON file)");
    app.add_option("--fixture", config.fixture, "Named fixture: disk, square, triangle, cube, segment, example2, example4d");
    app.add_option("--basepoint", basepoint, "Basepoint, comma separated");
    app.add_option("--metric", metric_text, "funk, reverse or hilbert")->check(CLI::IsMember({"funk", "reverse", "reverse-funk", "hilbert"}));
    app.add_option("--tol", config.tol, "Geometric tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", config.seed, "Random seed");
    app.add_option("--format", config.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", config.out, "Write output to this file instead of stdout");

    std::string x_text, y_text;
    auto* dist = app.add_subcommand("dist", "Distance by the cross-ratio and cone routes");
    dist->add_option("x", x_text)->required();
    dist->add_option("y", y_text)->required();

    cli::HorosphereRequest horo;
    std::string center_text, descriptor_path;
    auto* horosphere = app.add_subcommand("horosphere", "Level set of a distance or horofunction along rays");
    horosphere->add_option("--level", horo.level)->required();
    horosphere->add_option("--center", center_text, "Center point (default: basepoint)");
    horosphere->add_option("--descriptor", descriptor_path, "Busemann descriptor JSON (polytope bodies)");
    horosphere->add_option("--resolution", horo.resolution, "Number of rays")->check(CLI::Range(8, 1 << 20));

    bool p_grid = false;
    auto* catalog = app.add_subcommand("catalog", "Busemann points of a polytope, by boundary face");
    catalog->add_flag("--p-grid", p_grid, "Also emit weighted analytic centers");

    std::string suite;
    int samples = 10000;
    auto* verify = app.add_subcommand("verify", "Run a property suite");
    verify->add_option("suite", suite)->required();
    verify->add_option("--samples", samples)->check(CLI::PositiveNumber);

    auto* closedness = app.add_subcommand("closedness", "Closedness of the polar's extreme sets");

    std::string witness_fixture;
    int n_max = 100;
    auto* witness = app.add_subcommand("witness", "Non-closedness evidence for example2 or example4d");
    witness->add_option("fixture", witness_fixture)->required();
    witness->add_option("--n-max", n_max)->check(CLI::PositiveNumber);

    std::string harness_name, a_text, b_text;
    int harness_n = 100000;
    auto* harness = app.add_subcommand("harness", "Experiments: example2, theorem2, limit");
    harness->add_option("name", harness_name)->required();
    harness->add_option("--a", a_text, "First target");
    harness->add_option("--b", b_text, "Second target");
    harness->add_option("--n-max", harness_n, "Largest n for example2")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::DomainFailure;
    }

    const auto result = cli::run_guarded([&]() -> cli::CommandResult {
        if (!basepoint.empty())
            config.basepoint = io::parse_point(basepoint);
        const Metric metric = parse_metric(metric_text);
        horo.metric = metric;
        if (*dist)
            return cli::cmd_dist(config, io::parse_point(x_text), io::parse_point(y_text), metric);
        if (*horosphere) {
            if (!center_text.empty())
                horo.center = io::parse_point(center_text);
            if (!descriptor_path.empty())
                horo.descriptor = descriptor_path;
            return cli::cmd_horosphere(config, horo);
        }
        if (*catalog)
            return cli::cmd_catalog(config, p_grid);
        if (*verify)
            return cli::cmd_verify(config, suite, samples);
        if (*closedness)
            return cli::cmd_closedness(config);
        if (*witness)
            return cli::cmd_witness(config, witness_fixture, n_max);
        std::optional<Point> a, b;
        if (!a_text.empty())
            a = io::parse_point(a_text);
        if (!b_text.empty())
            b = io::parse_point(b_text);
        return cli::cmd_harness(config, harness_name, a, b, harness_n, metric);
    });

    if (result.output.rfind("error:", 0) == 0) {
        std::cerr << result.output;
        return result.exit_code;
    }
    if (config.out) {
        std::ofstream out(*config.out, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write '" << *config.out << "'\n";
            return cli::DomainFailure;
        }
        out << result.output;
    } else {
        std::cout << result.output;
    }
    return result.exit_code;
}
