// qcloner: figure data for the phase-covariant cloning attack on BB84.
//
//   qcloner fidelity    --grid N --out PATH
//   qcloner theta       --grid N --out PATH
//   qcloner info        --grid N --branch low|high|both [--numeric --seed S]
//   qcloner qber        --pd X --pb0 X
//   qcloner fock-verify [--convention NAME] [--topology PATH]
//
// Any flag may also come from a key=value file given with --config.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv)
{
    using namespace qcloner::cli;

    CLI::App app{"Phase-covariant cloning attack on BB84: figure data and oracle checks"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file overriding defaults");

    RunConfig cfg;
    std::string branch = "low";
    std::string convention;
    double pd = -1.0;
    double pb0 = -1.0;

    app.add_option("--grid", cfg.grid_points, "grid points per sweep")->capture_default_str();
    app.add_option("--branch", branch, "disturbance branch: low, high or both")->capture_default_str();
    app.add_option("--out", cfg.output_path, "output file (default: standard output)");
    app.add_option("--seed", cfg.seed, "optimizer seed")->capture_default_str();
    app.add_option("--restarts", cfg.restarts, "optimizer restarts")->capture_default_str();
    app.add_option("--pd", pd, "dark-count probability");
    app.add_option("--pb0", pb0, "probability that Bob detects no photon");
    app.add_flag("--numeric", cfg.numeric, "add the numerically optimized information column");
    app.add_option("--convention", convention, "restrict calibration to one beam splitter convention");
    app.add_option("--topology", cfg.topology_path, "topology file to load, or to write after calibration");

    const auto sub = [&](const char* name, const char* help) {
        auto* s = app.add_subcommand(name, help);
        s->fallthrough();
        return s;
    };
    auto* fidelity = sub("fidelity", "single-qubit fidelities and success probability versus r");
    auto* theta = sub("theta", "optimal measurement phase versus disturbance");
    auto* info = sub("info", "Eve's information versus disturbance");
    auto* qber = sub("qber", "error rate with dark counts versus r");
    auto* fock = sub("fock-verify", "check the linear-optics simulation against the closed-form state");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        cfg.branch = branch_selection_from_string(branch);
        if (!convention.empty())
            cfg.convention = qcloner::fock::convention_from_string(convention);
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }
    if (pd >= 0.0 || pb0 >= 0.0) {
        if (pd < 0.0 || pb0 < 0.0) {
            std::cerr << "usage error: --pd and --pb0 must be given together\n";
            return kExitUsage;
        }
        cfg.channel = qcloner::ChannelParams{pd, pb0};
    }

    Command command = Command::Fidelity;
    if (*theta)
        command = Command::Theta;
    else if (*info)
        command = Command::Info;
    else if (*qber)
        command = Command::Qber;
    else if (*fock)
        command = Command::FockVerify;
    else if (!*fidelity)
        return kExitUsage;

    return run_command(command, cfg, std::cout, std::cerr);
}
