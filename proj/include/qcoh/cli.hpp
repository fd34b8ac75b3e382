#pragma once

// Subcommand implementations behind the command-line tool. Each cmd_*
// function runs one subcommand, writes its outputs, and returns the process
// exit code; they are kept apart from main() so tests can drive them
// directly. The run_* helpers produce the CSV bodies that the determinism
// contract compares byte for byte.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qcoh/solver.hpp"

namespace qcoh {

inline constexpr const char* kArtifactVersion = "0.1.0";

// Stable exit-code contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInvalidState = 3;
inline constexpr int kExitSolverFailure = 4;
inline constexpr int kExitVerifyFailure = 5;

struct RunManifest {
    std::string command;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> parameters;
    std::string artifact_version = kArtifactVersion;
    std::string timestamp;  // ISO-8601 UTC, set at creation

    static RunManifest make(std::string command, std::uint64_t seed,
                            std::map<std::string, std::string> parameters);
    std::string to_json() const;
};

struct MeasureArgs {
    std::string state_file;
    std::string measure = "l1";
    SolverConfig solver;
};

struct VerifyTheorem2Args {
    int d_min = 2;
    int d_max = 8;
    int trials = 25;  // per dimension
    std::uint64_t seed = 1;
    double tol = 1e-6;
    int threads = 1;
    std::string out_path;  // empty: CSV to stdout
    SolverConfig solver;
};

struct VerifyMonotonicityArgs {
    int d_min = 2;
    int d_max = 8;
    int trials = 1429;           // per dimension
    std::string kraus = "auto";  // "auto" or a fixed operator count
    std::uint64_t seed = 7;
    int threads = 1;
    std::string out_path;
};

struct OrderingArgs {
    int d_max = 8;
};

struct SweepArgs {
    std::vector<double> x;   // template diagonal; empty means uniform at dim
    int dim = 3;
    std::string vary = "a";  // "a" or "d"
    double from = 0.0;
    double to = 0.0;
    int steps = 50;          // intervals when varying a
    double a = 0.0;          // fixed off-diagonal when varying d
    std::string out_path;
    SolverConfig solver;
};

struct Theorem2Run {
    std::string csv_body;
    int rows = 0;
    double max_abs_gap = 0.0;
    double max_argmin_gap = 0.0;
    int convergence_failures = 0;
};

struct MonotonicityRun {
    std::string csv_body;
    int rows = 0;
    int violations = 0;
    int errors = 0;
};

struct SweepRun {
    std::string csv_body;
    int rows = 0;
    int skipped = 0;
};

Theorem2Run run_verify_theorem2(const VerifyTheorem2Args& args);
MonotonicityRun run_verify_monotonicity(const VerifyMonotonicityArgs& args);
SweepRun run_sweep(const SweepArgs& args);

int cmd_measure(const MeasureArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify_theorem2(const VerifyTheorem2Args& args, std::ostream& out, std::ostream& err);
int cmd_verify_monotonicity(const VerifyMonotonicityArgs& args, std::ostream& out,
                            std::ostream& err);
int cmd_ordering(const OrderingArgs& args, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err);

}  // namespace qcoh
