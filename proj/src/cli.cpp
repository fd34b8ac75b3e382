#include "qcoh/cli.hpp"

#include <atomic>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "qcoh/channels.hpp"
#include "qcoh/json_io.hpp"
#include "qcoh/rng.hpp"

namespace qcoh {

namespace {

std::string iso8601_utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

// Runs fn(0..n-1) across a small worker pool; callers write results into
// per-index slots so assembly order is independent of thread count.
void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, std::min(threads, n));
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (std::thread& th : pool) th.join();
}

bool write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << content;
    return static_cast<bool>(out);
}

int emit_csv(const std::string& body, const RunManifest& manifest, const std::string& out_path,
             std::ostream& out, std::ostream& err) {
    const std::string full = body + "# " + manifest.to_json() + "\n";
    if (out_path.empty()) {
        out << full;
        return kExitOk;
    }
    if (!write_text_file(out_path, full)) {
        err << "error: cannot write '" << out_path << "'\n";
        return kExitUsage;
    }
    return kExitOk;
}

std::string nan_cell() { return "nan"; }

}  // namespace

RunManifest RunManifest::make(std::string command, std::uint64_t seed,
                              std::map<std::string, std::string> parameters) {
    RunManifest m;
    m.command = std::move(command);
    m.seed = seed;
    m.parameters = std::move(parameters);
    m.timestamp = iso8601_utc_now();
    return m;
}

std::string RunManifest::to_json() const {
    std::string params;
    bool first = true;
    for (const auto& [key, value] : parameters) {
        if (!first) params += ",";
        first = false;
        params += "\"" + json_escape(key) + "\":\"" + json_escape(value) + "\"";
    }
    return "{\"command\":\"" + json_escape(command) + "\",\"seed\":" + std::to_string(seed) +
           ",\"parameters\":{" + params + "},\"artifact_version\":\"" +
           json_escape(artifact_version) + "\",\"timestamp\":\"" + json_escape(timestamp) +
           "\"}";
}

Theorem2Run run_verify_theorem2(const VerifyTheorem2Args& args) {
    const int dims = args.d_max - args.d_min + 1;
    const int n = dims * args.trials;
    std::vector<std::string> rows(static_cast<std::size_t>(n));
    std::vector<double> abs_gaps(static_cast<std::size_t>(n), 0.0);
    std::vector<double> argmin_gaps(static_cast<std::size_t>(n), 0.0);
    std::vector<char> failed(static_cast<std::size_t>(n), 0);

    parallel_for(n, args.threads, [&](int i) {
        const int d = args.d_min + i / args.trials;
        const int trial = i % args.trials;
        const std::uint64_t s = mix_seed(args.seed, static_cast<std::uint64_t>(d),
                                         static_cast<std::uint64_t>(trial));
        const FamilyState f = random_family_state(d, s);
        const double closed = 2.0 * (d - 1) * std::abs(f.a());
        double numeric = std::numeric_limits<double>::quiet_NaN();
        std::string argmin_cell = nan_cell();
        try {
            const Theorem2Report rep = verify_theorem2(f, args.solver);
            numeric = rep.numeric;
            argmin_cell = format_double(rep.argmin_gap);
            argmin_gaps[static_cast<std::size_t>(i)] = rep.argmin_gap;
        } catch (const ConvergenceError& e) {
            numeric = e.best_value;
            failed[static_cast<std::size_t>(i)] = 1;
        }
        const double gap = std::abs(numeric - closed);
        abs_gaps[static_cast<std::size_t>(i)] = gap;
        rows[static_cast<std::size_t>(i)] = std::to_string(d) + "," + format_double(f.a()) +
                                            "," + format_double(closed) + "," +
                                            format_double(numeric) + "," + format_double(gap) +
                                            "," + argmin_cell + "\n";
    });

    Theorem2Run run;
    run.rows = n;
    run.csv_body = "d,a,closed,numeric,abs_gap,argmin_gap\n";
    for (int i = 0; i < n; ++i) {
        run.csv_body += rows[static_cast<std::size_t>(i)];
        run.max_abs_gap = std::max(run.max_abs_gap, abs_gaps[static_cast<std::size_t>(i)]);
        run.max_argmin_gap =
            std::max(run.max_argmin_gap, argmin_gaps[static_cast<std::size_t>(i)]);
        run.convergence_failures += failed[static_cast<std::size_t>(i)];
    }
    return run;
}

MonotonicityRun run_verify_monotonicity(const VerifyMonotonicityArgs& args) {
    const int dims = args.d_max - args.d_min + 1;
    const int n = dims * args.trials;
    const int fixed_kraus = (args.kraus == "auto") ? -1 : std::stoi(args.kraus);

    std::vector<std::string> rows(static_cast<std::size_t>(n));
    std::vector<char> violated(static_cast<std::size_t>(n), 0);
    std::vector<char> errored(static_cast<std::size_t>(n), 0);

    parallel_for(n, args.threads, [&](int i) {
        const int d = args.d_min + i / args.trials;
        const int trial = i % args.trials;
        const std::uint64_t s = mix_seed(args.seed, static_cast<std::uint64_t>(d),
                                         static_cast<std::uint64_t>(trial));
        const int min_kraus = (d + 1) / 2;
        int n_kraus = fixed_kraus;
        if (n_kraus < 0) {
            Rng rng(mix_seed(s, 3));
            n_kraus = min_kraus +
                      static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(d - min_kraus + 1)));
        }
        std::string row;
        try {
            const FamilyState f = random_family_state(d, mix_seed(s, 1));
            const Instrument inst = random_sio_instrument(d, n_kraus, mix_seed(s, 2));
            const C2bReport rep = check_c2b_family(f, inst);
            if (!rep.holds) violated[static_cast<std::size_t>(i)] = 1;
            row = std::to_string(d) + "," + format_double(f.a()) + "," +
                  std::to_string(n_kraus) + "," + format_double(rep.avg) + "," +
                  format_double(rep.bound_da) + "," + format_double(rep.ctr) + "," +
                  (rep.holds ? "1" : "0") + "\n";
        } catch (const Error&) {
            errored[static_cast<std::size_t>(i)] = 1;
            row = std::to_string(d) + ",nan," + std::to_string(n_kraus) + ",nan,nan,nan,0\n";
        }
        rows[static_cast<std::size_t>(i)] = std::move(row);
    });

    MonotonicityRun run;
    run.rows = n;
    run.csv_body = "d,a,n_kraus,avg,d_abs_a,ctr,holds\n";
    for (int i = 0; i < n; ++i) {
        run.csv_body += rows[static_cast<std::size_t>(i)];
        run.violations += violated[static_cast<std::size_t>(i)];
        run.errors += errored[static_cast<std::size_t>(i)];
    }
    return run;
}

SweepRun run_sweep(const SweepArgs& args) {
    SweepRun run;
    run.csv_body = "value,c_l1,c_rel_entropy,c_tr_closed,c_tr_numeric,status\n";

    const auto emit_row = [&](double varied, const std::vector<double>& x, double a) {
        std::string row = format_double(varied) + ",";
        try {
            const FamilyState f(x, a);
            const DensityMatrix rho = f.to_density();
            const double closed = 2.0 * (f.dim() - 1) * std::abs(a);
            const double numeric = closest_incoherent(rho, args.solver).value;
            row += format_double(c_l1(rho)) + "," + format_double(c_rel_entropy(rho)) + "," +
                   format_double(closed) + "," + format_double(numeric) + ",ok\n";
        } catch (const NotAStateError&) {
            row += ",,,,skipped\n";
            ++run.skipped;
        }
        run.csv_body += row;
        ++run.rows;
    };

    if (args.vary == "a") {
        std::vector<double> x = args.x;
        if (x.empty())
            x.assign(static_cast<std::size_t>(args.dim), 1.0 / static_cast<double>(args.dim));
        for (int i = 0; i <= args.steps; ++i) {
            const double a =
                args.from + (args.to - args.from) * static_cast<double>(i) / args.steps;
            emit_row(a, x, a);
        }
    } else {  // vary == "d"
        const int d_lo = static_cast<int>(args.from);
        const int d_hi = static_cast<int>(args.to);
        for (int d = d_lo; d <= d_hi; ++d) {
            const std::vector<double> x(static_cast<std::size_t>(d),
                                        1.0 / static_cast<double>(d));
            emit_row(static_cast<double>(d), x, args.a);
        }
    }
    return run;
}

int cmd_measure(const MeasureArgs& args, std::ostream& out, std::ostream& err) {
    std::ifstream in(args.state_file, std::ios::binary);
    if (!in) {
        err << "error: cannot read '" << args.state_file << "'\n";
        return kExitUsage;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();

    MeasureKind kind;
    try {
        kind = measure_kind_from_string(args.measure);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::optional<ParsedState> state;
    try {
        state = state_from_json(buffer.str());
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: invalid state: " << e.what() << "\n";
        return kExitInvalidState;
    }

    MeasureReport report;
    report.measure = kind;
    try {
        if (const FamilyState* f = std::get_if<FamilyState>(&*state)) {
            switch (kind) {
                case MeasureKind::l1:
                    report.value = c_l1(f->to_density());
                    break;
                case MeasureKind::rel_entropy:
                    report.value = c_rel_entropy(f->to_density());
                    break;
                case MeasureKind::trace_dist_closed:
                    report = c_tr_family_closed(*f);
                    break;
                case MeasureKind::trace_dist_numeric:
                    report = closest_incoherent(f->to_density(), args.solver);
                    break;
            }
        } else {
            const DensityMatrix& rho = std::get<DensityMatrix>(*state);
            switch (kind) {
                case MeasureKind::l1:
                    report.value = c_l1(rho);
                    break;
                case MeasureKind::rel_entropy:
                    report.value = c_rel_entropy(rho);
                    break;
                case MeasureKind::trace_dist_closed:
                    if (rho.dim() != 2) {
                        err << "error: the closed form needs a family state or a qubit\n";
                        return kExitUsage;
                    }
                    report.value = c_tr_qubit(rho);
                    report.argmin = dephase(rho);
                    break;
                case MeasureKind::trace_dist_numeric:
                    report = closest_incoherent(rho, args.solver);
                    break;
            }
        }
    } catch (const ConvergenceError& e) {
        err << "error: solver did not converge (best value " << format_double(e.best_value)
            << ")\n";
        return kExitSolverFailure;
    }

    const RunManifest manifest = RunManifest::make(
        "measure", 0, {{"state_file", args.state_file}, {"measure", args.measure}});
    out << to_json(report, "\"manifest\":" + manifest.to_json()) << "\n";
    return kExitOk;
}

int cmd_verify_theorem2(const VerifyTheorem2Args& args, std::ostream& out, std::ostream& err) {
    if (args.d_min < 2 || args.d_min > args.d_max || args.d_max > 8 || args.trials < 1 ||
        args.threads < 1 || args.tol <= 0.0) {
        err << "usage error: need 2 <= d_min <= d_max <= 8, trials >= 1, threads >= 1, "
               "tol > 0\n";
        return kExitUsage;
    }
    const Theorem2Run run = run_verify_theorem2(args);
    const RunManifest manifest =
        RunManifest::make("verify-theorem2", args.seed,
                          {{"d_min", std::to_string(args.d_min)},
                           {"d_max", std::to_string(args.d_max)},
                           {"trials", std::to_string(args.trials)},
                           {"tol", format_double(args.tol)},
                           {"threads", std::to_string(args.threads)}});
    const int emit = emit_csv(run.csv_body, manifest, args.out_path, out, err);
    if (emit != kExitOk) return emit;
    out << "rows=" << run.rows << " max_abs_gap=" << format_double(run.max_abs_gap)
        << " max_argmin_gap=" << format_double(run.max_argmin_gap)
        << " convergence_failures=" << run.convergence_failures << "\n";
    const bool pass = run.convergence_failures == 0 && run.max_abs_gap <= args.tol;
    out << "verify-theorem2: " << (pass ? "PASS" : "FAIL") << " (tol=" << format_double(args.tol)
        << ")\n";
    return pass ? kExitOk : kExitVerifyFailure;
}

int cmd_verify_monotonicity(const VerifyMonotonicityArgs& args, std::ostream& out,
                            std::ostream& err) {
    if (args.d_min < 2 || args.d_min > args.d_max || args.d_max > 8 || args.trials < 1 ||
        args.threads < 1) {
        err << "usage error: need 2 <= d_min <= d_max <= 8, trials >= 1, threads >= 1\n";
        return kExitUsage;
    }
    if (args.kraus != "auto") {
        try {
            if (std::stoi(args.kraus) < 1) throw std::invalid_argument("nonpositive");
        } catch (const std::exception&) {
            err << "usage error: --kraus must be 'auto' or a positive integer\n";
            return kExitUsage;
        }
    }
    const MonotonicityRun run = run_verify_monotonicity(args);
    const RunManifest manifest =
        RunManifest::make("verify-monotonicity", args.seed,
                          {{"d_min", std::to_string(args.d_min)},
                           {"d_max", std::to_string(args.d_max)},
                           {"trials", std::to_string(args.trials)},
                           {"kraus", args.kraus},
                           {"threads", std::to_string(args.threads)}});
    const int emit = emit_csv(run.csv_body, manifest, args.out_path, out, err);
    if (emit != kExitOk) return emit;
    out << "rows=" << run.rows << " violations=" << run.violations << " errors=" << run.errors
        << "\n";
    const bool pass = run.violations == 0 && run.errors == 0;
    out << "verify-monotonicity: " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? kExitOk : kExitVerifyFailure;
}

int cmd_ordering(const OrderingArgs& args, std::ostream& out, std::ostream& err) {
    if (args.d_max < 2) {
        err << "usage error: need d_max >= 2\n";
        return kExitUsage;
    }
    out << "d,c_tr,c_r,c_l1,ordered\n";
    bool all_ordered = true;
    for (int d = 2; d <= args.d_max; ++d) {
        const OrderingReport r = maximally_coherent_ordering(d);
        all_ordered = all_ordered && r.ordered;
        out << d << "," << format_double(r.ctr) << "," << format_double(r.cr) << ","
            << format_double(r.cl1) << "," << (r.ordered ? "1" : "0") << "\n";
    }
    return all_ordered ? kExitOk : kExitVerifyFailure;
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
    if (args.vary != "a" && args.vary != "d") {
        err << "usage error: --vary must be 'a' or 'd'\n";
        return kExitUsage;
    }
    if (args.vary == "a") {
        const std::size_t d = args.x.empty() ? static_cast<std::size_t>(args.dim) : args.x.size();
        if (d < 2 || args.steps < 1) {
            err << "usage error: need dimension >= 2 and steps >= 1\n";
            return kExitUsage;
        }
    } else if (static_cast<int>(args.from) < 2 || args.from > args.to) {
        err << "usage error: need 2 <= from <= to when varying d\n";
        return kExitUsage;
    }
    SweepRun run;
    try {
        run = run_sweep(args);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidState;
    }
    const RunManifest manifest = RunManifest::make(
        "sweep", 0,
        {{"vary", args.vary},
         {"from", format_double(args.from)},
         {"to", format_double(args.to)},
         {"steps", std::to_string(args.steps)}});
    const int emit = emit_csv(run.csv_body, manifest, args.out_path, out, err);
    if (emit != kExitOk) return emit;
    out << "rows=" << run.rows << " skipped=" << run.skipped << "\n";
    return kExitOk;
}

}  // namespace qcoh
