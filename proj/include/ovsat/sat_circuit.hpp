#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ovsat/config.hpp"
#include "ovsat/gates.hpp"
#include "ovsat/quantum_core.hpp"
#include "ovsat/sat_model.hpp"

namespace ovsat {

/// Qubit allocation: variables on 1..n, clause work blocks starting at s_k,
/// result on s_f = n + mu + 1.
struct CircuitLayout {
    std::uint32_t n = 0;
    std::uint32_t m = 0;
    std::vector<std::uint32_t> s;  ///< s_1..s_m
    std::uint32_t s_f = 0;
    std::uint32_t mu = 0;
    std::uint32_t total_qubits = 0;
    bool single_clause_extension = false;  ///< m == 1, outside the m >= 2 recurrence

    bool operator==(const CircuitLayout&) const = default;
};

CircuitLayout layout(const SatInstance& inst);

/// mu from the closed form sum_k (card(C_k) + delta_{1,card}) - 2. Valid for m >= 2.
std::uint32_t dust_qubits_closed_form(const SatInstance& inst);

/// U_C as an application-ordered sequence: Hadamard layer on 1..n, per-clause
/// OR folds, then the AND cascade into s_f.
GateSequence build_circuit(const SatInstance& inst, const CircuitLayout& lay);
GateSequence build_circuit(const SatInstance& inst);

struct CircuitRun {
    CircuitLayout layout;
    StateVector final_state;
    double q_squared = 0.0;
    GateTally gate_counts;
    std::size_t total_gates = 0;
};

CircuitRun run_circuit(const SatInstance& inst, unsigned max_qubits = kDefaultGuards.max_qubits);

enum class SatVerdict { Sat, Unsat };
std::string to_string(SatVerdict v);

SatVerdict sat_decision_exact(const CircuitRun& run, double threshold = kTolerances.sat_threshold);

/// Runs the circuit without the Hadamard layer on the classical input e_index
/// and returns the value left on qubit s_f.
bool classical_branch_result(const SatInstance& inst, std::uint64_t index,
                             unsigned max_qubits = kDefaultGuards.max_qubits);

/// Logical gate count (H, OR, AND, COPY) and polarity NOTs.
struct GateCostSummary {
    std::size_t logical = 0;
    std::size_t polarity_nots = 0;
    std::size_t total = 0;
};
GateCostSummary gate_cost(const GateTally& tally);

}  // namespace ovsat
