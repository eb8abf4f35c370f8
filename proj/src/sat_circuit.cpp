#include "ovsat/sat_circuit.hpp"

#include <cmath>
#include <stdexcept>

namespace ovsat {

namespace {

std::uint32_t block_width(const Clause& c) {
    const auto card = static_cast<std::uint32_t>(c.card());
    return card + (card == 1 ? 1u : 0u);
}

Polarity polarity(const Literal& lit) {
    return lit.negated ? Polarity::Negated : Polarity::Plain;
}

void append_copy(GateSequence& seq, const Literal& src, std::uint32_t target) {
    if (src.negated) seq.append(PlacedGate(GateKind::Not, {src.variable}));
    seq.append(PlacedGate(GateKind::Copy, {src.variable, target}));
    if (src.negated) seq.append(PlacedGate(GateKind::Not, {src.variable}));
}

/// Left fold of the clause's literals into the work block starting at `base`;
/// the clause value lands on base + max(card, 2) - 2.
void append_clause_block(GateSequence& seq, const Clause& clause, std::uint32_t base) {
    const auto& lits = clause.literals;
    if (lits.size() == 1) {
        append_copy(seq, lits[0], base);
        return;
    }
    const Literal& a = lits[0];
    const Literal& b = lits[1];
    if (a.variable == b.variable) {
        // x or x = x; x or not-x = 1
        if (a.negated == b.negated) {
            append_copy(seq, a, base);
        } else {
            seq.append(PlacedGate(GateKind::Not, {base}));
        }
    } else {
        seq.append(or_bar(QubitIndex{a.variable}, QubitIndex{b.variable}, QubitIndex{base},
                          polarity(a), polarity(b)));
    }
    for (std::size_t j = 2; j < lits.size(); ++j) {
        const auto prev = base + static_cast<std::uint32_t>(j) - 2;
        seq.append(or_bar(QubitIndex{prev}, QubitIndex{lits[j].variable}, QubitIndex{prev + 1},
                          Polarity::Plain, polarity(lits[j])));
    }
}

}  // namespace

CircuitLayout layout(const SatInstance& inst) {
    CircuitLayout lay;
    lay.n = inst.num_vars();
    lay.m = static_cast<std::uint32_t>(inst.num_clauses());
    const auto& cs = inst.clauses();

    lay.s.resize(lay.m);
    lay.s[0] = lay.n + 1;
    if (lay.m >= 2) {
        lay.s[1] = lay.s[0] + block_width(cs[0]) - 1;
    }
    for (std::uint32_t i = 2; i < lay.m; ++i) {
        lay.s[i] = lay.s[i - 1] + block_width(cs[i - 1]);
    }
    lay.s_f = lay.s[lay.m - 1] - 1 + block_width(cs[lay.m - 1]);
    lay.single_clause_extension = lay.m == 1;
    lay.mu = lay.s_f - 1 - lay.n;
    lay.total_qubits = lay.s_f;
    return lay;
}

std::uint32_t dust_qubits_closed_form(const SatInstance& inst) {
    std::uint32_t sum = 0;
    for (const auto& c : inst.clauses()) {
        sum += static_cast<std::uint32_t>(c.card()) + (c.card() == 1 ? 1u : 0u);
    }
    return sum - 2;
}

GateSequence build_circuit(const SatInstance& inst, const CircuitLayout& lay) {
    GateSequence seq = hadamard_layer(lay.total_qubits, lay.n);
    const auto& cs = inst.clauses();
    for (std::uint32_t k = 0; k < lay.m; ++k) {
        append_clause_block(seq, cs[k], lay.s[k]);
    }
    if (lay.m == 1) {
        seq.append(PlacedGate(GateKind::Copy, {lay.s_f - 1, lay.s_f}));
        return seq;
    }
    // s is 0-based here: s[k] holds s_{k+1}.
    for (std::uint32_t k = 1; k + 2 <= lay.m; ++k) {
        seq.append(PlacedGate(GateKind::And, {lay.s[k] - 1, lay.s[k + 1] - 2, lay.s[k + 1] - 1}));
    }
    seq.append(PlacedGate(GateKind::And, {lay.s[lay.m - 1] - 1, lay.s_f - 1, lay.s_f}));
    return seq;
}

GateSequence build_circuit(const SatInstance& inst) {
    return build_circuit(inst, layout(inst));
}

CircuitRun run_circuit(const SatInstance& inst, unsigned max_qubits) {
    auto lay = layout(inst);
    if (lay.total_qubits > max_qubits) {
        throw GuardError("circuit needs " + std::to_string(lay.total_qubits) +
                         " qubits, guard is " + std::to_string(max_qubits));
    }
    auto seq = build_circuit(inst, lay);
    StateVector state(lay.total_qubits, max_qubits);
    state.apply(seq);
    const double q2 = probability_qubit_one(state, QubitIndex{lay.s_f});
    CircuitRun run{lay, std::move(state), q2, seq.tally(), seq.size()};
    return run;
}

std::string to_string(SatVerdict v) {
    return v == SatVerdict::Sat ? "SAT" : "UNSAT";
}

SatVerdict sat_decision_exact(const CircuitRun& run, double threshold) {
    return run.q_squared > threshold ? SatVerdict::Sat : SatVerdict::Unsat;
}

bool classical_branch_result(const SatInstance& inst, std::uint64_t index, unsigned max_qubits) {
    const auto lay = layout(inst);
    if (index >= (std::uint64_t{1} << lay.n)) {
        throw std::out_of_range("assignment index outside 0..2^n-1");
    }
    auto seq = build_circuit(inst, lay);
    StateVector state = StateVector::basis(lay.total_qubits, index, max_qubits);
    for (std::size_t g = lay.n; g < seq.gates.size(); ++g) {
        state.apply(seq.gates[g]);
    }
    return probability_qubit_one(state, QubitIndex{lay.s_f}) > 0.5;
}

GateCostSummary gate_cost(const GateTally& tally) {
    GateCostSummary c;
    for (const auto& [kind, count] : tally) {
        if (kind == GateKind::Not) {
            c.polarity_nots += count;
        } else {
            c.logical += count;
        }
        c.total += count;
    }
    return c;
}

}  // namespace ovsat
