#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qcoh/cli.hpp"

namespace {

void add_solver_flags(CLI::App* cmd, qcoh::SolverConfig* cfg) {
    cmd->add_option("--max-iters", cfg->max_iters, "Subgradient iteration cap per restart");
    cmd->add_option("--step-init", cfg->step_init, "Initial subgradient step size");
    cmd->add_option("--solver-tol", cfg->tol, "Stopping threshold on objective decrease");
    cmd->add_option("--restarts", cfg->restarts, "Number of solver restarts");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coherence measures for finite-dimensional quantum states"};
    app.require_subcommand(1);

    qcoh::MeasureArgs measure_args;
    CLI::App* measure = app.add_subcommand("measure", "Evaluate a coherence measure on a state file");
    measure->add_option("state_file", measure_args.state_file, "JSON state file")->required();
    measure->add_option("--measure,-m", measure_args.measure,
                        "l1 | rel_entropy | trace_dist_closed | trace_dist_numeric");
    add_solver_flags(measure, &measure_args.solver);

    qcoh::VerifyTheorem2Args t2_args;
    CLI::App* t2 = app.add_subcommand("verify-theorem2",
                                      "Compare the family closed form against the solver");
    t2->add_option("--d-min", t2_args.d_min, "Smallest dimension");
    t2->add_option("--d-max", t2_args.d_max, "Largest dimension");
    t2->add_option("--trials", t2_args.trials, "Trials per dimension");
    t2->add_option("--seed", t2_args.seed, "Base seed");
    t2->add_option("--tol", t2_args.tol, "Maximum allowed |closed - numeric|");
    t2->add_option("--threads", t2_args.threads, "Worker threads");
    t2->add_option("--out", t2_args.out_path, "CSV output path (default: stdout)");
    add_solver_flags(t2, &t2_args.solver);

    qcoh::VerifyMonotonicityArgs mono_args;
    CLI::App* mono = app.add_subcommand(
        "verify-monotonicity", "Check selective monotonicity under random SIO instruments");
    mono->add_option("--d-min", mono_args.d_min, "Smallest dimension");
    mono->add_option("--d-max", mono_args.d_max, "Largest dimension");
    mono->add_option("--trials", mono_args.trials, "Trials per dimension");
    mono->add_option("--kraus", mono_args.kraus, "'auto' or a fixed operator count");
    mono->add_option("--seed", mono_args.seed, "Base seed");
    mono->add_option("--threads", mono_args.threads, "Worker threads");
    mono->add_option("--out", mono_args.out_path, "CSV output path (default: stdout)");

    qcoh::OrderingArgs ord_args;
    CLI::App* ord = app.add_subcommand(
        "ordering", "Tabulate maximally-coherent measure values and their ordering");
    ord->add_option("--d-max", ord_args.d_max, "Largest dimension");

    qcoh::SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "Sweep a family parameter and emit measures");
    sweep->add_option("--x", sweep_args.x, "Template diagonal entries (default: uniform)");
    sweep->add_option("--dim", sweep_args.dim, "Dimension for the uniform template");
    sweep->add_option("--vary", sweep_args.vary, "'a' or 'd'");
    sweep->add_option("--from", sweep_args.from, "Range start")->required();
    sweep->add_option("--to", sweep_args.to, "Range end")->required();
    sweep->add_option("--steps", sweep_args.steps, "Intervals when varying a");
    sweep->add_option("--a", sweep_args.a, "Fixed off-diagonal when varying d");
    sweep->add_option("--out", sweep_args.out_path, "CSV output path")->required();
    add_solver_flags(sweep, &sweep_args.solver);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return qcoh::kExitUsage;
    }

    if (measure->parsed()) return qcoh::cmd_measure(measure_args, std::cout, std::cerr);
    if (t2->parsed()) return qcoh::cmd_verify_theorem2(t2_args, std::cout, std::cerr);
    if (mono->parsed()) return qcoh::cmd_verify_monotonicity(mono_args, std::cout, std::cerr);
    if (ord->parsed()) return qcoh::cmd_ordering(ord_args, std::cout, std::cerr);
    if (sweep->parsed()) return qcoh::cmd_sweep(sweep_args, std::cout, std::cerr);
    return qcoh::kExitUsage;
}
