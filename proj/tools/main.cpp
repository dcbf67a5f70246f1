#include <algorithm>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using namespace rotator::cli;

struct FlagBinding
{
    std::string key;
    std::string value;
    CLI::Option* option = nullptr;
};

//! Scenario flags shared by every subcommand; each maps onto a config key.
struct ScenarioFlags
{
    std::string config_path;
    std::vector<FlagBinding> bindings;

    void attach(CLI::App* app)
    {
        app->add_option("--config", config_path, "flat key=value scenario file");
        static std::vector<std::pair<std::string, std::string>> const flags{
            {"model", "rotator or sphere"},
            {"family", "quadratic, fundamental+, fundamental-, or poly:c0,c1,..."},
            {"m", "mass parameter"},
            {"l", "length parameter"},
            {"Q", "rotation parameter (phenomenological)"},
            {"axis", "initial spatial axis x,y,z"},
            {"phase", "initial phase of chi about the axis"},
            {"profile", "const:c | sin:a,b,nu | spline:t0:v0,t1:v1,..."},
            {"T", "duration"},
            {"dt", "time step"},
            {"stabilize", "project onto the constraint surface after each step"},
            {"abort_threshold", "residual that aborts integration"},
            {"sample_every", "keep every n-th step"},
            {"out_dir", "output directory (overrides ROTATOR_OUT_DIR)"},
            {"name", "output file stem"},
            {"seed", "random seed for property checks"},
            {"w", "sphere model: timelike w as t,x,y,z"},
            {"q0", "sphere model: initial q"},
            {"qdot0", "sphere model: initial qdot"},
        };
        bindings.reserve(flags.size());
        for (auto const& [key, help] : flags)
        {
            bindings.push_back({key, {}, nullptr});
            std::string flag = "--" + key;
            std::replace(flag.begin(), flag.end(), '_', '-');
            bindings.back().option = app->add_option(flag, bindings.back().value, help);
        }
    }

    //! Defaults, then the config file, then explicit flags.
    std::pair<ScenarioConfig, std::string> build() const
    {
        ScenarioConfig cfg;
        if (!config_path.empty())
            load_config_file(cfg, config_path);
        bool out_dir_flag = false;
        for (auto const& b : bindings)
            if (b.option->count() > 0)
            {
                apply_setting(cfg, b.key, b.value);
                out_dir_flag = out_dir_flag || b.key == "out_dir";
            }
        return {cfg, output_directory(cfg, out_dir_flag)};
    }
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Relativistic rotator simulator: simulate, verify, sweep, hessian"};
    app.set_version_flag("--version", std::string(rotator::version_string));

    ScenarioFlags sim_flags, verify_flags, sweep_flags, hessian_flags;
    auto* simulate = app.add_subcommand("simulate", "integrate a scenario and write CSV + manifest");
    sim_flags.attach(simulate);

    auto* verify = app.add_subcommand("verify", "run the invariant suite, PASS/FAIL per check");
    verify_flags.attach(verify);
    bool inject = false;
    verify->add_flag("--inject-corruption", inject, "perturb the state off the surface (negative control)");

    auto* sweep = app.add_subcommand("sweep", "run a parameter grid and aggregate summaries");
    sweep_flags.attach(sweep);
    std::string param, values;
    sweep->add_option("--param", param, "config key to vary")->required();
    sweep->add_option("--values", values, "lo:hi:n or a ';'-separated list")->required();

    auto* hessian = app.add_subcommand("hessian", "velocity Hessian rank diagnostics");
    hessian_flags.attach(hessian);
    std::string mode = "dual";
    hessian->add_option("--mode", mode, "dual or fd");

    if (argc <= 1)
    {
        std::cerr << app.help();
        return exit_usage;
    }
    app.require_subcommand(1);
    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::CallForHelp const& e)
    {
        return app.exit(e);
    }
    catch (CLI::CallForVersion const& e)
    {
        return app.exit(e);
    }
    catch (CLI::ParseError const& e)
    {
        app.exit(e);
        return exit_usage;
    }

    try
    {
        if (*simulate)
        {
            auto [cfg, dir] = sim_flags.build();
            return cmd_simulate(cfg, dir, std::cout, std::cerr);
        }
        if (*verify)
        {
            auto [cfg, dir] = verify_flags.build();
            return cmd_verify(cfg, dir, inject, std::cout);
        }
        if (*sweep)
        {
            auto [cfg, dir] = sweep_flags.build();
            return cmd_sweep(cfg, param, values, dir, std::cout, std::cerr);
        }
        if (*hessian)
        {
            auto [cfg, dir] = hessian_flags.build();
            return cmd_hessian(cfg, mode, dir, std::cout);
        }
    }
    catch (rotator::ConfigError const& e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_check_failed;
    }
    return exit_usage;
}
