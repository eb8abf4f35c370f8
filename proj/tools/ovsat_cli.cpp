#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

void add_run_flags(CLI::App* cmd, ovsat::cli::RunFlags& f) {
    cmd->add_option("--backend", f.backend, "circuit or gqtm")->check(CLI::IsMember({"circuit", "gqtm"}));
    cmd->add_option("--a", f.params.a, "logistic map parameter");
    cmd->add_option("--threshold", f.params.threshold, "detection threshold");
    cmd->add_option("--max-iters", f.params.max_iters, "amplifier iteration cap");
    cmd->add_option("--max-qubits", f.max_qubits, "state vector size guard");
    cmd->add_option("--max-n", f.max_enum_vars, "largest n for brute-force model counting");
    cmd->add_option("--json", f.json_path, "write the run report here");
    cmd->add_option("--csv", f.csv_path, "write the amplifier trace here");
    cmd->add_flag("--deterministic", f.deterministic, "omit timings");
}

// Accepts "a..b" or a single number.
bool parse_range(const std::string& text, std::uint32_t& lo, std::uint32_t& hi) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            lo = hi = static_cast<std::uint32_t>(std::stoul(text));
        } else {
            lo = static_cast<std::uint32_t>(std::stoul(text.substr(0, dots)));
            hi = static_cast<std::uint32_t>(std::stoul(text.substr(dots + 2)));
        }
    } catch (const std::exception&) {
        return false;
    }
    return lo <= hi;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chaos-amplified quantum SAT simulator"};
    app.require_subcommand(1);

    ovsat::cli::RunFlags solve_flags, trace_flags;
    std::string solve_path, trace_path;
    auto* solve = app.add_subcommand("solve", "run the pipeline on a DIMACS file and report");
    solve->add_option("file", solve_path, "DIMACS CNF")->required();
    add_run_flags(solve, solve_flags);

    auto* trace = app.add_subcommand("trace", "print the amplifier trace as CSV");
    trace->add_option("file", trace_path, "DIMACS CNF")->required();
    add_run_flags(trace, trace_flags);

    ovsat::cli::SweepFlags sweep_flags;
    std::string sweep_range = "3..16";
    auto* sweep = app.add_subcommand("sweep", "gate counts over the scaling family");
    sweep->add_option("--n", sweep_range, "variable range a..b");
    sweep->add_option("--csv", sweep_flags.csv_path, "output path");

    ovsat::cli::VerifyFlags verify_flags;
    std::string verify_range = "2..40";
    auto* verify = app.add_subcommand("verify", "run an invariant suite");
    verify->add_option("suite", verify_flags.suite, "gates | bounds | oracle | tables")
        ->required()
        ->check(CLI::IsMember({"gates", "bounds", "oracle", "tables"}));
    verify->add_option("--seed", verify_flags.seed);
    verify->add_option("--count", verify_flags.count, "random instances for the oracle suite");
    verify->add_option("--max-n", verify_flags.max_n, "largest n for random instances");
    verify->add_option("--n", verify_range, "variable range a..b for the bounds suite");
    verify->add_flag("--all-r", verify_flags.all_r, "bounds suite: also r = 2, 4, ..., 2^(n-1)");
    verify->add_option("--precision", verify_flags.precision, "double | long | quad")
        ->check(CLI::IsMember({"double", "long", "quad"}));
    verify->add_option("--a", verify_flags.params.a);
    verify->add_option("--threshold", verify_flags.params.threshold);
    verify->add_option("--workers", verify_flags.workers);
    verify->add_option("--json", verify_flags.json_path, "write the findings report here");
    verify->add_flag("--deterministic", verify_flags.deterministic, "omit timings");

    std::string machine_out;
    auto* machine = app.add_subcommand("machine", "dump the machine's transition tables");
    machine->add_option("--out", machine_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ovsat::cli::kInputError;
    }

    if (*solve) return ovsat::cli::cmd_solve(solve_path, solve_flags);
    if (*trace) return ovsat::cli::cmd_trace(trace_path, trace_flags);
    if (*sweep) {
        if (!parse_range(sweep_range, sweep_flags.n_lo, sweep_flags.n_hi)) {
            std::cerr << "bad --n range\n";
            return ovsat::cli::kInputError;
        }
        return ovsat::cli::cmd_sweep(sweep_flags);
    }
    if (*verify) {
        if (!parse_range(verify_range, verify_flags.n_lo, verify_flags.n_hi)) {
            std::cerr << "bad --n range\n";
            return ovsat::cli::kInputError;
        }
        return ovsat::cli::cmd_verify(verify_flags);
    }
    return ovsat::cli::cmd_machine(machine_out);
}
