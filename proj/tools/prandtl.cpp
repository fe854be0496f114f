#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "prandtl/config.hpp"
#include "prandtl/report_io.hpp"

namespace {

int load_config(const std::string& path, prandtl::RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot read config file " << path << "\n";
        return prandtl::exit_io_error;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        cfg = prandtl::parse_config(buf.str());
    } catch (const prandtl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return prandtl::exit_config_error;
    }
    return prandtl::exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral solver for the Prandtl singular integro-differential equation"};
    app.require_subcommand(1);

    std::string config_path, out_dir, function;

    CLI::App* solve = app.add_subcommand("solve", "solve a problem described by a JSON config");
    solve->add_option("--config", config_path, "JSON configuration file")->required();
    solve->add_option("--out", out_dir, "output directory (overrides config)");

    CLI::App* transform = app.add_subcommand("transform", "forward/inverse round-trip diagnostics");
    transform->add_option("--config", config_path, "JSON configuration file");
    transform->add_option("--function", function, "test function: sech | sech2 | gauss");
    transform->add_option("--out", out_dir, "output directory for transform.csv");

    bool quick = false;
    CLI::App* verify = app.add_subcommand("verify", "run the full verification suite");
    verify->add_flag("--quick", quick, "smaller grids, same tolerances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : prandtl::exit_config_error;
    }

    prandtl::RunConfig cfg;
    if (solve->parsed()) {
        if (int rc = load_config(config_path, cfg); rc != prandtl::exit_ok) return rc;
        if (cfg.command != prandtl::Command::solve) cfg.command = prandtl::Command::solve;
        if (!out_dir.empty()) cfg.output = out_dir;
        return prandtl::run(cfg);
    }
    if (transform->parsed()) {
        if (!config_path.empty()) {
            if (int rc = load_config(config_path, cfg); rc != prandtl::exit_ok) return rc;
        }
        cfg.command = prandtl::Command::transform;
        if (!function.empty()) {
            if (function != "sech" && function != "sech2" && function != "gauss") {
                std::cerr << "config error: function must be sech, sech2 or gauss\n";
                return prandtl::exit_config_error;
            }
            cfg.function = function;
        }
        cfg.output = out_dir;  // empty: print only
        return prandtl::run(cfg);
    }
    cfg.command = prandtl::Command::verify;
    return prandtl::run(cfg, std::cout, quick);
}
