#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace fracutm::cli;
    CLI::App app{"Half-line solver for fractional evolution equations q_t = A D^alpha q"};
    app.require_subcommand(1);

    std::string config, suite, out_path, csv_path;
    double alpha = 0.0;
    int levels = 3, base_nodes = 0;

    auto* solve = app.add_subcommand("solve", "Solve a configured problem, write field CSV and report JSON");
    solve->add_option("config", config, "config file")->required();

    auto* regions = app.add_subcommand("regions", "Emit D+ sectors, Gamma rays and nu for alpha");
    regions->add_option("alpha", alpha, "order in (1, 5/2)")->required();
    regions->add_option("--out", out_path, "write JSON here instead of stdout");
    regions->add_option("--csv", csv_path, "also write a polyline CSV (ray_id,re,im)");

    auto* check = app.add_subcommand("check", "Run an invariant suite");
    check->add_option("suite", suite, "fraccalc|geometry|transforms|utm|all")->required();

    auto* conv = app.add_subcommand("converge", "Self-convergence under node doubling");
    conv->add_option("config", config, "config file")->required();
    conv->add_option("--levels", levels, "number of levels (>= 3)")->default_val(3);
    conv->add_option("--base-nodes", base_nodes, "nodes_per_ray of the coarsest level (default: config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : validation;
    }

    if (*solve) return cmd_solve(config, std::cout, std::cerr);
    if (*regions) return cmd_regions(alpha, out_path, csv_path, std::cout, std::cerr);
    if (*check) return cmd_check(suite, std::cout, std::cerr);
    return cmd_converge(config, levels, base_nodes, std::cout, std::cerr);
}
