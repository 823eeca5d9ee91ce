// dotsim: command-line driver for the double-dot simulator.
//
//   dotsim simulate|compare|bench|sweep|qca --config <path> [--out <dir>] [--svg] [key=value ...]

#include "dotsim/cli/commands.hpp"
#include "dotsim/cli/config.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"Driven double quantum dot simulator"};
    std::string command;
    std::string config_path;
    std::string out_dir = ".";
    bool svg = false;
    std::vector<std::string> overrides;

    app.add_option("command", command, "simulate | compare | bench | sweep | qca")
        ->required()
        ->check(CLI::IsMember({"simulate", "compare", "bench", "sweep", "qca"}));
    app.add_option("overrides", overrides, "key=value settings that override the config file");
    app.add_option("-c,--config", config_path, "scenario file (key = value lines)");
    app.add_option("-o,--out", out_dir, "output directory");
    app.add_flag("--svg", svg, "also write SVG plots");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : dotsim::cli::kExitConfig;
    }

    using namespace dotsim;
    std::optional<std::filesystem::path> cfg_file;
    std::filesystem::path config_dir;
    if (!config_path.empty()) {
        cfg_file = config_path;
        config_dir = cfg_file->parent_path();
    }

    cli::RunConfig cfg;
    try {
        cfg = cli::parse_config(cli::parse_command(command), cli::load_settings(cfg_file, overrides));
    } catch (const Error& e) {
        std::cerr << "dotsim: " << e.what() << '\n';
        return cli::kExitConfig;
    }
    cfg.out_dir = out_dir;
    cfg.emit_svg = svg;
    try {
        return cli::run(cfg, std::cout, std::cerr, config_dir);
    } catch (const std::exception& e) {
        std::cerr << "dotsim: " << e.what() << '\n';
        return 1;
    }
}
