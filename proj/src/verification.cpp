#include "ovsat/verification.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "ovsat/gates.hpp"
#include "ovsat/quantum_core.hpp"
#include "ovsat/random_instances.hpp"
#include "ovsat/sat_circuit.hpp"
#include "ovsat/sat_program.hpp"

namespace ovsat {

namespace {

/// Runs `task(i)` for i in [0, count) on `workers` threads; results keep index order.
template <typename Result, typename Task>
std::vector<Result> parallel_map(std::size_t count, unsigned workers, Task task) {
    std::vector<Result> results(count);
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) results[i] = task(i);
        });
    }
    for (auto& t : pool) t.join();
    return results;
}

StateVector random_state(std::uint32_t qubits, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    std::vector<Complex> amps(std::size_t{1} << qubits);
    double norm = 0.0;
    for (auto& a : amps) {
        a = {gauss(rng), gauss(rng)};
        norm += std::norm(a);
    }
    for (auto& a : amps) a /= std::sqrt(norm);
    return StateVector::from_amplitudes(std::move(amps));
}

double max_distance(const StateVector& a, const StateVector& b) {
    double d = 0.0;
    for (std::uint64_t i = 0; i < a.dimension(); ++i) d = std::max(d, std::abs(a.amplitude(i) - b.amplitude(i)));
    return d;
}

std::string describe_positions(GateKind kind, std::span<const QubitIndex> pos) {
    std::ostringstream s;
    s << gate_name(kind);
    for (auto q : pos) s << ' ' << q.position;
    return s.str();
}

}  // namespace

std::vector<SatInstance> edge_case_instances() {
    const char* texts[] = {
        "p cnf 1 2\n1 0\n-1 0\n",            // contradiction
        "p cnf 1 1\n1 -1 0\n",               // tautological clause
        "p cnf 2 1\n1 -1 2 0\n",             // tautology with a third literal
        "p cnf 1 1\n1 0\n",                  // single positive unit
        "p cnf 1 1\n-1 0\n",                 // single negated unit
        "p cnf 3 3\n1 0\n-2 0\n3 0\n",       // unit clauses only
        "p cnf 2 2\n1 1 2 0\n-2 -2 0\n",     // duplicate literals
        "p cnf 2 2\n1 1 0\n2 0\n",           // clause made of one repeated literal
        "p cnf 3 1\n1 2 3 0\n",              // one wide clause
        "p cnf 3 3\n1 2 -3 0\n3 -2 0\n1 -2 -3 0\n",
        "p cnf 4 4\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n",  // UNSAT, n > 1
        "p cnf 10 2\n1 0\n10 0\n",           // sparse variable use
    };
    std::vector<SatInstance> out;
    for (const char* t : texts) out.push_back(parse_dimacs(t));
    return out;
}

SuiteReport verify_gates(std::uint64_t seed, std::size_t random_states) {
    SuiteReport report{"gates", 0, {}};
    std::mt19937_64 rng(seed);

    for (GateKind kind : kAllGateKinds) {
        const auto m = gate_matrix(kind);
        double worst = 0.0;
        for (std::size_t i = 0; i < m.dim; ++i) {
            for (std::size_t j = 0; j < m.dim; ++j) {
                Complex dot = 0.0;
                for (std::size_t k = 0; k < m.dim; ++k) dot += std::conj(m(k, i)) * m(k, j);
                worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
            }
        }
        ++report.checks;
        if (worst > 1e-14) {
            report.findings.push_back({std::string(gate_name(kind)) + " not unitary, deviation " +
                                           std::to_string(worst),
                                       std::nullopt, {}});
        }
    }

    for (GateKind kind : {GateKind::Or, GateKind::And, GateKind::Copy}) {
        const auto k = static_cast<std::uint32_t>(arity(kind));
        std::vector<QubitIndex> pos;
        for (std::uint32_t q = 1; q <= k; ++q) pos.push_back(QubitIndex{q});
        const PlacedGate logical(kind, pos);
        const auto elementary = decompose(kind, pos);

        for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << k); ++idx) {
            auto a = StateVector::basis(k, idx);
            auto b = a;
            a.apply(logical);
            b.apply(elementary);
            ++report.checks;
            if (!std::equal(a.amplitudes().begin(), a.amplitudes().end(), b.amplitudes().begin())) {
                report.findings.push_back({describe_positions(kind, pos) + " decomposition differs on basis state " +
                                               std::to_string(idx),
                                           seed, {}});
            }
        }
        for (std::size_t t = 0; t < random_states; ++t) {
            auto a = random_state(k, rng);
            auto b = a;
            a.apply(logical);
            b.apply(elementary);
            ++report.checks;
            const double d = max_distance(a, b);
            if (d >= 1e-12) {
                report.findings.push_back({describe_positions(kind, pos) + " decomposition differs on random state " +
                                               std::to_string(t) + " by " + std::to_string(d),
                                           seed, {}});
            }
        }
    }

    // Negated-input OR: w ^= (u^pu) | (v^pv), inputs restored.
    for (int mask = 0; mask < 4; ++mask) {
        const Polarity pu = (mask & 1) ? Polarity::Negated : Polarity::Plain;
        const Polarity pv = (mask & 2) ? Polarity::Negated : Polarity::Plain;
        const auto seq = or_bar(QubitIndex{1}, QubitIndex{2}, QubitIndex{3}, pu, pv);
        for (std::uint64_t idx = 0; idx < 8; ++idx) {
            auto s = StateVector::basis(3, idx);
            s.apply(seq);
            const bool u = (idx & 1) != 0, v = (idx & 2) != 0, w = (idx & 4) != 0;
            const bool lit_u = u != (pu == Polarity::Negated);
            const bool lit_v = v != (pv == Polarity::Negated);
            const std::uint64_t expect = (idx & 3) | (std::uint64_t{w != (lit_u || lit_v)} << 2);
            ++report.checks;
            if (std::abs(s.amplitude(expect) - Complex{1.0, 0.0}) != 0.0) {
                report.findings.push_back({"negated-input OR wrong for polarity mask " + std::to_string(mask) +
                                               " on basis state " + std::to_string(idx),
                                           std::nullopt, {}});
            }
        }
    }
    return report;
}

SuiteReport verify_oracle(const OracleOptions& options) {
    SuiteReport report{"oracle", 0, {}};
    RandomInstanceOptions gen_options;
    gen_options.max_vars = options.max_n;
    gen_options.qubit_budget = options.max_qubits;
    RandomInstanceGenerator gen(options.seed, gen_options);

    std::vector<SatInstance> corpus;
    std::vector<std::optional<std::uint64_t>> origin;
    for (std::size_t i = 0; i < options.count; ++i) {
        corpus.push_back(gen.next());
        origin.push_back(options.seed);
    }
    if (options.include_edge_cases) {
        for (auto& inst : edge_case_instances()) {
            corpus.push_back(std::move(inst));
            origin.push_back(std::nullopt);
        }
    }

    auto results = parallel_map<std::optional<Finding>>(corpus.size(), options.workers, [&](std::size_t i)
                                                          -> std::optional<Finding> {
        const auto& inst = corpus[i];
        const auto run = run_circuit(inst, std::max(options.max_qubits, kDefaultGuards.max_qubits));
        const auto r = count_models(inst);
        const double expect = static_cast<double>(r) / std::ldexp(1.0, static_cast<int>(inst.num_vars()));
        const double diff = std::abs(run.q_squared - expect);
        if (diff < 1e-10) return std::nullopt;
        std::ostringstream what;
        what << "instance #" << i << ": q^2 = " << run.q_squared << ", r/2^n = " << expect;
        return Finding{what.str(), origin[i], to_dimacs(inst)};
    });
    report.checks = corpus.size();
    for (auto& f : results) {
        if (f) report.findings.push_back(std::move(*f));
    }
    return report;
}

SuiteReport verify_tables(const TableOptions& options) {
    SuiteReport report{"tables", 0, {}};

    const auto& dft = gqtm::sat_program().phase(3);
    const auto wf = gqtm::check_wellformed(*dft.delta);
    ++report.checks;
    if (!wf.normalization.empty()) report.findings.push_back({"Hadamard phase rows not normalized", std::nullopt, {}});

    std::vector<SatInstance> corpus;
    for_each_small_instance(options.max_vars, options.max_clauses,
                            [&](const SatInstance& inst) { corpus.push_back(inst); });

    gqtm::GqtmOptions gopts;
    gopts.params = options.params;
    gopts.full_max_vars = options.max_vars;
    gopts.record_steps = false;

    auto results = parallel_map<std::vector<std::string>>(corpus.size(), options.workers, [&](std::size_t i) {
        const auto& inst = corpus[i];
        std::vector<std::string> problems;
        const auto machine = gqtm::run_sat_gqtm(inst, gopts);
        const auto circuit = run_circuit(inst);
        if (std::abs(machine.q_squared - circuit.q_squared) >= 1e-9) {
            problems.push_back("track-4 weight " + std::to_string(machine.q_squared) + " vs circuit " +
                               std::to_string(circuit.q_squared));
        }
        if (machine.branch_mismatches != 0) {
            problems.push_back(std::to_string(machine.branch_mismatches) + " branch mismatches");
        }
        if (!machine.workspace_blank) problems.push_back("workspace not blank after erasure");
        const bool exact_sat = sat_decision_exact(circuit) == SatVerdict::Sat;
        if (exact_sat != (machine.decision == Decision::Sat)) {
            problems.push_back("decision " + to_string(machine.decision) + " disagrees with exact verdict");
        }
        if (!exact_sat) {
            const bool all_zero = std::all_of(machine.m_trace.begin(), machine.m_trace.end(),
                                              [](double x) { return x == 0.0; });
            if (!all_zero || machine.decision != Decision::Unsat) problems.push_back("UNSAT trace not exactly zero");
        }
        return problems;
    });

    report.checks += corpus.size();
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        for (auto& p : results[i]) report.findings.push_back({p, std::nullopt, to_dimacs(corpus[i])});
    }
    return report;
}

}  // namespace ovsat
