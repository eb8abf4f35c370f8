#include <doctest.h>

#include <cmath>

#include "ovsat/random_instances.hpp"
#include "ovsat/sat_circuit.hpp"

using namespace ovsat;

namespace {

const char* kExample = "p cnf 3 3\n1 2 -3 0\n3 -2 0\n1 -2 -3 0\n";

std::size_t count_of(const GateTally& t, GateKind k) {
    auto it = t.find(k);
    return it == t.end() ? 0 : it->second;
}

}  // namespace

TEST_SUITE("sat_circuit") {

TEST_CASE("three-clause example layout") {
    const auto inst = parse_dimacs(kExample);
    const auto lay = layout(inst);
    CHECK(lay.s == std::vector<std::uint32_t>{4, 6, 8});
    CHECK(lay.s_f == 10);
    CHECK(lay.mu == 6);
    CHECK(lay.total_qubits == 10);
    CHECK_FALSE(lay.single_clause_extension);
    CHECK(dust_qubits_closed_form(inst) == 6);
}

TEST_CASE("three-clause example gate list") {
    const auto seq = build_circuit(parse_dimacs(kExample));
    const auto t = seq.tally();
    CHECK(count_of(t, GateKind::H) == 3);
    CHECK(count_of(t, GateKind::Or) == 5);
    CHECK(count_of(t, GateKind::Not) == 8);
    CHECK(count_of(t, GateKind::And) == 2);
    CHECK(count_of(t, GateKind::Copy) == 0);
    // OR targets: s_1, s_1+1 | s_2 | s_3, s_3+1; AND cascade into s_f.
    std::vector<std::uint32_t> or_targets, and_targets;
    for (const auto& g : seq.gates) {
        if (g.kind() == GateKind::Or) or_targets.push_back(g.positions()[2].position);
        if (g.kind() == GateKind::And) and_targets.push_back(g.positions()[2].position);
    }
    CHECK(or_targets == std::vector<std::uint32_t>{4, 5, 6, 8, 9});
    CHECK(and_targets == std::vector<std::uint32_t>{7, 10});
    CHECK(seq.gates.back() == PlacedGate(GateKind::And, {7, 9, 10}));
    const auto cost = gate_cost(t);
    CHECK(cost.logical == 10);
    CHECK(cost.polarity_nots == 8);
    CHECK(cost.total == 18);
}

TEST_CASE("three-clause example run") {
    const auto run = run_circuit(parse_dimacs(kExample));
    CHECK(run.q_squared == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sat_decision_exact(run) == SatVerdict::Sat);
    CHECK(std::abs(run.final_state.norm_squared() - 1.0) < 1e-12);
    CHECK(run.total_gates == 18);
}

TEST_CASE("layout recurrence on mixed widths") {
    // cards 1, 3, 2, 1: s1 = n+1; s2 = s1 + 1 + 1 - 1; s3 = s2 + 3; s4 = s3 + 2; s_f = s4 - 1 + 1 + 1
    const auto inst = parse_dimacs("p cnf 4 4\n1 0\n2 -3 4 0\n-1 3 0\n-4 0\n");
    const auto lay = layout(inst);
    CHECK(lay.s == std::vector<std::uint32_t>{5, 6, 9, 11});
    CHECK(lay.s_f == 12);
    CHECK(lay.mu == 7);
    CHECK(dust_qubits_closed_form(inst) == 7);
}

TEST_CASE("single clause uses the extension") {
    const auto inst = parse_dimacs("p cnf 2 1\n1 -2 0\n");
    const auto lay = layout(inst);
    CHECK(lay.single_clause_extension);
    CHECK(lay.s == std::vector<std::uint32_t>{3});
    CHECK(lay.s_f == 4);
    CHECK(run_circuit(inst).q_squared == doctest::Approx(0.75));
    CHECK(run_circuit(parse_dimacs("p cnf 1 1\n-1 0\n")).q_squared == doctest::Approx(0.5));
}

TEST_CASE("degenerate first literal pairs") {
    CHECK(run_circuit(parse_dimacs("p cnf 2 2\n1 1 0\n2 0\n")).q_squared == doctest::Approx(0.25));
    CHECK(run_circuit(parse_dimacs("p cnf 2 1\n1 -1 2 0\n")).q_squared == doctest::Approx(1.0));
    CHECK(run_circuit(parse_dimacs("p cnf 2 2\n-2 -2 1 0\n1 0\n")).q_squared == doctest::Approx(0.5));
}

TEST_CASE("contradiction gives exactly zero") {
    const auto run = run_circuit(parse_dimacs("p cnf 1 2\n1 0\n-1 0\n"));
    CHECK(run.q_squared == 0.0);
    CHECK(sat_decision_exact(run) == SatVerdict::Unsat);
}

TEST_CASE("qubit guard refuses oversized registers") {
    std::vector<Clause> c(20, Clause{{{1, false}, {2, false}, {3, false}}});
    CHECK_THROWS_AS(run_circuit(SatInstance(3, c)), GuardError);
}

TEST_CASE("property: q^2 equals r / 2^n on seeded random instances") {
    RandomInstanceGenerator gen(77);
    for (int i = 0; i < 150; ++i) {
        const auto inst = gen.next();
        const auto run = run_circuit(inst);
        const double expect = static_cast<double>(count_models(inst)) / std::ldexp(1.0, inst.num_vars());
        CHECK(std::abs(run.q_squared - expect) < 1e-10);
        CHECK(std::abs(run.final_state.norm_squared() - 1.0) < 1e-10);
        if (inst.num_clauses() >= 2) CHECK(layout(inst).mu == dust_qubits_closed_form(inst));
    }
}

TEST_CASE("property: classical branches reproduce the truth table") {
    RandomInstanceGenerator gen(5);
    for (int i = 0; i < 40; ++i) {
        const auto inst = gen.next();
        for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << inst.num_vars()); ++idx) {
            CHECK(classical_branch_result(inst, idx) == eval_instance(inst, Assignment::from_index(inst.num_vars(), idx)));
        }
    }
}

TEST_CASE("property: gate count is linear in literals for fixed n") {
    for (std::uint32_t n = 3; n <= 8; ++n) {
        const auto inst = scaling_instance(n);
        const auto t = build_circuit(inst).tally();
        CHECK(count_of(t, GateKind::H) == n);
        CHECK(count_of(t, GateKind::Or) == inst.total_literals() - inst.num_clauses());
        CHECK(count_of(t, GateKind::And) == inst.num_clauses() - 1);
    }
}

}
