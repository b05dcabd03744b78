#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "paramop/config.hpp"
#include "paramop/errors.hpp"
#include "paramop/families.hpp"
#include "paramop/fredholm.hpp"
#include "paramop/semilinear.hpp"
#include "paramop/sweep.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw paramop::IoError("cannot read config file " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void list_problems() {
    std::cout << "matrix families:\n";
    for (const auto& name : paramop::registry_names()) {
        std::cout << "  " << name << "\n";
    }
    std::cout << "fredholm kernels (problem \"fredholm\"):\n";
    for (const auto& name : paramop::kernel_names()) {
        std::cout << "  " << name << "\n";
    }
    std::cout << "semilinear nonlinearities (problem \"semilinear\"):\n";
    for (const auto& name : paramop::nonlinearity_names()) {
        std::cout << "  " << name << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"paramop: solve and probe parametric operator equations over a disc"};
    app.require_subcommand(1);

    std::string run_config_path;
    std::string run_output_dir;
    std::uint64_t run_seed = 0;
    CLI::App* run = app.add_subcommand("run", "execute the configured sweep tasks");
    run->add_option("--config", run_config_path, "path to the JSON config")->required();
    CLI::Option* output_opt =
        run->add_option("--output-dir", run_output_dir, "override the config's output directory");
    CLI::Option* seed_opt = run->add_option("--seed", run_seed, "override the config's seed");

    CLI::App* list = app.add_subcommand("list-problems", "list the built-in problem names");

    std::string validate_config_path;
    CLI::App* validate = app.add_subcommand("validate", "parse and validate a config, then exit");
    validate->add_option("--config", validate_config_path, "path to the JSON config")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            list_problems();
            return 0;
        }
        if (validate->parsed()) {
            (void)paramop::parse_config(read_file(validate_config_path));
            std::cout << "config OK\n";
            return 0;
        }
        paramop::RunConfig cfg = paramop::parse_config(read_file(run_config_path));
        // Output directory precedence: --output-dir flag, then the
        // PARAMOP_OUTPUT_DIR environment variable, then the config value.
        if (output_opt->count() > 0) {
            cfg.output_dir = run_output_dir;
        } else if (const char* env = std::getenv("PARAMOP_OUTPUT_DIR")) {
            cfg.output_dir = env;
        }
        if (seed_opt->count() > 0) {
            cfg.seed = run_seed;
        }
        const paramop::RunOutcome outcome = paramop::run_sweep(cfg);
        std::cout << outcome.report;
        return outcome.exit_code;
    } catch (const paramop::Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "unexpected error: " << err.what() << "\n";
        return 1;
    }
}
