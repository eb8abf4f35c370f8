#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ovsat/random_instances.hpp"
#include "ovsat/sat_circuit.hpp"
#include "ovsat/sat_program.hpp"
#include "ovsat/verification.hpp"

namespace ovsat::cli {

using nlohmann::ordered_json;

namespace {

class Stopwatch {
public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit_json(const ordered_json& doc, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << doc.dump(2) << '\n';
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot write " + path);
    return file;
}

ordered_json optional_int(const std::optional<int>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

struct SolveResult {
    ordered_json report;
    AmplifierTrace trace;
    Decision decision = Decision::Inconclusive;
};

SolveResult solve(const SatInstance& inst, const RunFlags& flags) {
    const unsigned max_qubits = flags.max_qubits ? flags.max_qubits : kDefaultGuards.max_qubits;
    const unsigned max_enum = flags.max_enum_vars ? flags.max_enum_vars : kDefaultGuards.max_enumeration_vars;
    Stopwatch clock;
    SolveResult out;
    auto& rep = out.report;

    rep["instance"] = {{"n", inst.num_vars()},
                       {"m", inst.num_clauses()},
                       {"total_literals", inst.total_literals()},
                       {"warnings", inst.warnings()}};
    const auto lay = layout(inst);
    rep["layout"] = {{"s", lay.s},
                     {"s_f", lay.s_f},
                     {"mu", lay.mu},
                     {"total_qubits", lay.total_qubits},
                     {"single_clause_extension", lay.single_clause_extension}};
    rep["backend"] = flags.backend;

    double q2 = 0.0;
    if (flags.backend == "circuit") {
        const auto run = run_circuit(inst, max_qubits);
        q2 = run.q_squared;
        ordered_json counts = ordered_json::object();
        for (const auto& [kind, c] : run.gate_counts) counts[std::string(gate_name(kind))] = c;
        const auto cost = gate_cost(run.gate_counts);
        rep["q_squared"] = q2;
        rep["gate_counts"] = counts;
        rep["gate_cost"] = {{"logical", cost.logical}, {"polarity_nots", cost.polarity_nots}, {"total", cost.total}};
        rep["sat_exact"] = to_string(sat_decision_exact(run));
        out.trace = amplify_detect(q2, inst.num_vars(), flags.params);
    } else if (flags.backend == "gqtm") {
        gqtm::GqtmOptions opts;
        opts.params = flags.params;
        opts.max_qubits = max_qubits;
        opts.record_steps = false;
        const auto run = gqtm::run_sat_gqtm(inst, opts);
        q2 = run.q_squared;
        rep["q_squared"] = q2;
        rep["gqtm"] = {{"hybrid", run.hybrid},
                       {"rho6", {{"t4_one", run.q_squared}, {"t4_zero", run.weight_t4_zero}}},
                       {"rho6_components", run.rho6_components},
                       {"workspace_blank", run.workspace_blank},
                       {"counter_marks", run.counter_max},
                       {"unitary_steps", run.unitary_steps},
                       {"max_branches", run.max_branches},
                       {"branch_checks", run.branch_checks},
                       {"branch_mismatches", run.branch_mismatches}};
        out.trace = amplify_detect(q2, inst.num_vars(), flags.params);
        out.trace.x = run.m_trace;
        out.trace.first_crossing = run.first_crossing;
        out.trace.decision = run.decision;
    } else {
        throw std::invalid_argument("unknown backend '" + flags.backend + "'");
    }

    if (inst.num_vars() <= max_enum) {
        const auto r = count_models(inst, max_enum, resolve_workers(0));
        rep["r_oracle"] = r;
        rep["q_squared_matches_oracle"] =
            std::abs(q2 - static_cast<double>(r) / std::ldexp(1.0, static_cast<int>(inst.num_vars()))) < 1e-10;
    } else {
        rep["r_oracle"] = nullptr;
    }
    rep["r_implied"] = implied_model_count(q2, inst.num_vars());

    const auto& tr = out.trace;
    ordered_json amp = {{"a", flags.params.a},
                        {"threshold", flags.params.threshold},
                        {"first_crossing", optional_int(tr.first_crossing)},
                        {"iterations", tr.iterations()},
                        {"window_high", tr.window_high}};
    if (tr.bounds) {
        amp["k_low"] = tr.bounds->low;
        amp["k_high"] = tr.bounds->high;
    } else {
        amp["k_low"] = nullptr;
        amp["k_high"] = nullptr;
    }
    amp["m_trace"] = tr.x;
    rep["amplifier"] = amp;
    rep["decision"] = to_string(tr.decision);
    if (!flags.deterministic) rep["timings"] = {{"total_ms", clock.elapsed_ms()}};
    out.decision = tr.decision;
    return out;
}

/// Runs `body`, mapping library exceptions onto exit codes.
template <typename Body>
int guarded(Body body) {
    try {
        return body();
    } catch (const ParseError& e) {
        std::cerr << "input error (line " << e.line() << "): " << e.what() << '\n';
        return kInputError;
    } catch (const GuardError& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return kGuardRefusal;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
}

int decision_exit(Decision d) { return d == Decision::Inconclusive ? kFindings : kOk; }

ordered_json suite_json(const SuiteReport& r) {
    ordered_json findings = ordered_json::array();
    for (const auto& f : r.findings) {
        ordered_json j = {{"what", f.what}};
        j["seed"] = f.seed ? ordered_json(*f.seed) : ordered_json(nullptr);
        if (!f.instance.empty()) j["instance"] = f.instance;
        findings.push_back(j);
    }
    return {{"suite", r.suite}, {"checks", r.checks}, {"findings", findings}};
}

Precision parse_precision(const std::string& s) {
    if (s == "double") return Precision::Double;
    if (s == "long") return Precision::LongDouble;
    if (s == "quad") return Precision::Quad;
    throw std::invalid_argument("unknown precision '" + s + "'");
}

SuiteReport bounds_suite(const VerifyFlags& flags, ordered_json& rows) {
    const auto report = verify_crossing_window(flags.n_lo, flags.n_hi, flags.params, flags.all_r,
                                               parse_precision(flags.precision));
    SuiteReport out{"bounds", report.rows.size(), {}};
    for (const auto& f : report.findings) {
        std::ostringstream what;
        what << "n=" << f.n << " r=" << f.r << ": " << f.what;
        out.findings.push_back({what.str(), std::nullopt, {}});
    }
    rows = ordered_json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"n", row.n},
                        {"r", row.r},
                        {"k_star", optional_int(row.k_star)},
                        {"strict_lower", row.strict_lower},
                        {"k_low", row.window_low},
                        {"k_high", row.window_high},
                        {"within_2n", row.exists_in_j},
                        {"lower_ok", row.lower_ok},
                        {"upper_ok", row.upper_ok}});
    }
    return out;
}

}  // namespace

int cmd_solve(const std::string& path, const RunFlags& flags) {
    return guarded([&] {
        const auto inst = load_dimacs(path);
        auto result = solve(inst, flags);
        result.report["input"] = path;
        emit_json(result.report, flags.json_path);
        if (!flags.json_path.empty() && flags.json_path != "-") {
            std::cout << to_string(result.decision) << " q^2=" << result.report["q_squared"].get<double>() << '\n';
        }
        if (!flags.csv_path.empty()) {
            std::ofstream file;
            write_trace_csv(open_output(flags.csv_path, file), result.trace, flags.params.threshold);
        }
        return decision_exit(result.decision);
    });
}

int cmd_trace(const std::string& path, const RunFlags& flags) {
    return guarded([&] {
        const auto inst = load_dimacs(path);
        auto result = solve(inst, flags);
        std::ofstream file;
        write_trace_csv(open_output(flags.csv_path, file), result.trace, flags.params.threshold);
        if (!flags.json_path.empty()) emit_json(result.report, flags.json_path);
        return decision_exit(result.decision);
    });
}

int cmd_sweep(const SweepFlags& flags) {
    return guarded([&] {
        std::ofstream file;
        auto& out = open_output(flags.csv_path, file);
        out << "n,m,sum_card,total_qubits,H,OR,AND,COPY,NOT,total_gates,iteration_cap\n";
        for (std::uint32_t n = flags.n_lo; n <= flags.n_hi; ++n) {
            const auto inst = scaling_instance(n);
            const auto tally = build_circuit(inst).tally();
            auto get = [&](GateKind k) {
                const auto it = tally.find(k);
                return it == tally.end() ? std::size_t{0} : it->second;
            };
            std::size_t total = 0;
            for (const auto& [k, c] : tally) total += c;
            out << n << ',' << inst.num_clauses() << ',' << inst.total_literals() << ','
                << layout(inst).total_qubits << ',' << get(GateKind::H) << ',' << get(GateKind::Or) << ','
                << get(GateKind::And) << ',' << get(GateKind::Copy) << ',' << get(GateKind::Not) << ',' << total
                << ',' << k_window_high(n) + 1 << '\n';
        }
        return kOk;
    });
}

int cmd_verify(const VerifyFlags& flags) {
    return guarded([&] {
        Stopwatch clock;
        const unsigned workers = resolve_workers(flags.workers);
        ordered_json doc = {{"suite", flags.suite}};
        SuiteReport report;
        if (flags.suite == "gates") {
            report = verify_gates(flags.seed);
        } else if (flags.suite == "bounds") {
            ordered_json rows;
            report = bounds_suite(flags, rows);
            doc["rows"] = rows;
        } else if (flags.suite == "oracle") {
            OracleOptions o;
            o.seed = flags.seed;
            o.count = flags.count;
            o.max_n = flags.max_n;
            o.workers = workers;
            report = verify_oracle(o);
        } else if (flags.suite == "tables") {
            TableOptions t;
            t.params = flags.params;
            t.workers = workers;
            report = verify_tables(t);
        } else {
            throw std::invalid_argument("unknown suite '" + flags.suite + "'");
        }
        const auto body = suite_json(report);
        for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
        if (!flags.deterministic) doc["timings"] = {{"total_ms", clock.elapsed_ms()}};

        if (!flags.json_path.empty()) emit_json(doc, flags.json_path);
        std::cout << report.suite << ": " << report.checks << " checks, " << report.findings.size() << " findings\n";
        for (const auto& f : report.findings) {
            std::cout << "  " << f.what;
            if (f.seed) std::cout << " (seed " << *f.seed << ")";
            std::cout << '\n';
        }
        return report.passed() ? kOk : kFindings;
    });
}

int cmd_machine(const std::string& out_path) {
    return guarded([&] {
        std::ofstream file;
        auto& out = open_output(out_path, file);
        for (const auto& phase : gqtm::sat_program().phases) {
            out << "# step " << phase.step << ' ' << phase.name << " [" << gqtm::to_string(phase.provenance) << "] "
                << gqtm::to_string(phase.kind);
            if (!phase.note.empty()) out << " - " << phase.note;
            out << '\n';
            if (phase.delta) gqtm::dump_rules(out, *phase.delta);
        }
        return kOk;
    });
}

}  // namespace ovsat::cli
