#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ovsat/chaos.hpp"
#include "ovsat/config.hpp"
#include "ovsat/sat_model.hpp"

namespace ovsat {

struct Finding {
    std::string what;
    std::optional<std::uint64_t> seed;  ///< reproduces the offending instance
    std::string instance;               ///< DIMACS text when an instance is involved
};

struct SuiteReport {
    std::string suite;
    std::size_t checks = 0;
    std::vector<Finding> findings;

    bool passed() const { return findings.empty(); }
};

/// Contradiction, tautology, unit clauses, duplicate literals and other
/// shapes the circuit layout treats specially.
std::vector<SatInstance> edge_case_instances();

/// Gate unitarity and decomposition identities on basis and random states.
SuiteReport verify_gates(std::uint64_t seed, std::size_t random_states = 100);

struct OracleOptions {
    std::uint64_t seed = 1;
    std::size_t count = 100;
    std::uint32_t max_n = 10;
    unsigned max_qubits = 20;
    unsigned workers = 1;
    bool include_edge_cases = true;
};

/// q^2 from the circuit against r / 2^n from brute-force counting.
SuiteReport verify_oracle(const OracleOptions& options);

struct TableOptions {
    std::uint32_t max_vars = 3;
    std::size_t max_clauses = 3;
    LogisticParams params;
    unsigned workers = 1;
};

/// Machine backend against the circuit on every small instance: rho_6 weight,
/// per-branch OR/AND runs, decision, and exact-zero traces on UNSAT inputs.
SuiteReport verify_tables(const TableOptions& options);

}  // namespace ovsat
