#include <CLI11.hpp>

#include <iostream>

#include "riccati/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Reduce, solve and verify constrained generalized "
                 "discrete-time algebraic Riccati equations"};
    app.require_subcommand(1);

    riccati::CommandOptions opt;
    opt.seed = riccati::seed_from_environment();

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("triple", opt.triple_path, "Triple document (JSON)")
            ->required();
        cmd->add_option("--format", opt.format, "Output format")
            ->check(CLI::IsMember({"human", "machine"}))
            ->default_val("human");
        cmd->add_option("--tol", opt.tol, "Residual acceptance tolerance");
        cmd->add_flag("--trace", opt.trace, "Print transform matrices");
        return cmd;
    };

    add_common(app.add_subcommand("diagnose", "Pencil and singularity report"));
    add_common(app.add_subcommand("reduce", "Print the reduction chain"));
    add_common(app.add_subcommand("solve", "Solve and print all solutions"));
    add_common(app.add_subcommand("verify", "Check a candidate solution"))
        ->add_option("--x", opt.x_path, "Candidate solution matrix (JSON)");

    CLI11_PARSE(app, argc, argv);
    opt.command = app.get_subcommands().front()->get_name();

    return riccati::run_command(opt, std::cout, std::cerr);
}
