// Command-line front end: eval, psd, bell, surrogate, verify-all.

#include <iostream>

#include <CLI11.hpp>

#include "eprweyl/commands.hpp"

int main(int argc, char** argv) {
    using namespace eprweyl;

    CLI::App app{"Verification engine for the EPR state on the Weyl algebra"};
    app.require_subcommand(1);

    CommandOptions opts;
    std::uint64_t seed = 0;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--state", opts.state_file, "State spec JSON {kind, lambda, mu}");
        cmd->add_option("--out", opts.out_file, "Write the report to this file");
    };

    std::string poly_file, points_file, config_file;

    auto* eval = app.add_subcommand("eval", "Evaluate the state on a polynomial over R^4");
    add_common(eval);
    eval->add_option("polynomial", poly_file, "Polynomial JSON file")->required();

    auto* psd = app.add_subcommand("psd", "Kernel positivity and support-class checks on a point set");
    add_common(psd);
    psd->add_option("points", points_file, "Point list JSON file")->required();
    psd->add_option("--tol", opts.tol, "Eigenvalue tolerance");

    auto* bell = app.add_subcommand("bell", "Search for certified Bell lower bounds");
    add_common(bell);
    bell->add_option("config", config_file, "Search config JSON file")->required();
    auto* bell_seed = bell->add_option("--seed", seed, "Override the config seed");

    auto* surrogate = app.add_subcommand("surrogate", "Finite-factor CHSH construction");
    surrogate->add_option("--out", opts.out_file, "Write the report to this file");
    surrogate->add_option("--dim", opts.dim, "Factor dimension (even, 2..64)");
    auto* surrogate_seed = surrogate->add_option("--seed", seed, "Seed for random double checks");

    auto* verify = app.add_subcommand("verify-all", "Run the complete verification suite");
    add_common(verify);
    auto* verify_seed = verify->add_option("--seed", seed, "Seed for the randomized batteries");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }
    for (auto* opt : {bell_seed, surrogate_seed, verify_seed})
        if (opt->count() > 0) opts.seed = seed;

    if (eval->parsed()) return cmd_eval(opts, poly_file, std::cout, std::cerr);
    if (psd->parsed()) return cmd_psd(opts, points_file, std::cout, std::cerr);
    if (bell->parsed()) return cmd_bell(opts, config_file, std::cout, std::cerr);
    if (surrogate->parsed()) return cmd_surrogate(opts, std::cout, std::cerr);
    if (verify->parsed()) return cmd_verify_all(opts, std::cout, std::cerr);
    return kExitUsage;
}
