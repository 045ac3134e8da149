#include <iostream>

#include "CLI11.hpp"
#include "xcsn/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"XCS with niche tracking: experiments, niche timelines and oracles"};
    app.set_version_flag("--version", xcsn::kToolVersion);
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "Run a batch and write CSVs and population dumps");
    run->add_option("config", config_path, "Config file")->required();

    bool composition = false;
    auto* niches = app.add_subcommand("niches", "Write the niche timeline of run 0");
    niches->add_option("config", config_path, "Config file")->required();
    niches->add_flag("--composition", composition, "Include niche members");

    auto* oracle = app.add_subcommand("oracle", "Reference solutions");
    oracle->require_subcommand(1);
    std::string problem, out_path, map_path;
    auto* optimal = oracle->add_subcommand("optimal-pop", "Optimal population of a Boolean problem");
    optimal->add_option("problem", problem, "e.g. mp6, maj4")->required();
    optimal->add_option("-o,--out", out_path, "Population dump to write");
    auto* steps = oracle->add_subcommand("grid-steps", "Mean optimal steps to a goal");
    steps->add_option("map", map_path, "Map file")->required();

    std::string stats_dir;
    auto* plot = app.add_subcommand("plotdata", "Mean and std per checkpoint across runs");
    plot->add_option("dir", stats_dir, "Directory holding run_<i>.csv")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*run) xcsn::cmd_run(xcsn::load_config(config_path), std::cout);
        else if (*niches) xcsn::cmd_niches(xcsn::load_config(config_path), composition, std::cout);
        else if (*optimal) xcsn::cmd_oracle_optimal_pop(problem, out_path, std::cout);
        else if (*steps) xcsn::cmd_oracle_grid_steps(map_path, std::cout);
        else if (*plot) xcsn::cmd_plotdata(stats_dir, std::cout);
    } catch (const xcsn::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
