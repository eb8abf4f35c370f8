#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ovsat/chaos.hpp"
#include "ovsat/config.hpp"
#include "ovsat/gqtm.hpp"
#include "ovsat/sat_model.hpp"

namespace ovsat::gqtm {

inline constexpr std::size_t kSatTracks = 4;

/// Track 1 input 0^n X prod_i C_S G(C_i) C_E with G(C) = eps_1..eps_n Y epsbar_1..epsbar_n.
std::vector<Symbol> encode_sat_input(const SatInstance& inst);
std::string symbols_to_string(const std::vector<Symbol>& symbols);

/// Inverse of encode_sat_input. Clauses come back in canonical order
/// (positive literals ascending, then negated ones ascending, no duplicates).
SatInstance decode_sat_input(const std::vector<Symbol>& symbols);

/// Instance with every clause rewritten the way the tape encoding sees it.
SatInstance canonical_form(const SatInstance& inst);

enum class Provenance { Given, Repaired, Invented };
std::string to_string(Provenance p);

struct Phase {
    int step = 0;  ///< 1..8 in the machine's procedure
    std::string name;
    Provenance provenance = Provenance::Invented;
    MachineClass kind = MachineClass::Unitary;
    std::optional<TransitionFunction> delta;  ///< absent for the amplifier
    State start;
    std::vector<State> exits;  ///< final states of this phase
    std::string note;
};

/// The 4-track program. Tables do not depend on n or m: the input tape drives
/// every loop.
struct SatProgram {
    std::vector<Phase> phases;

    const Phase& phase(int step) const;
};

const SatProgram& sat_program();

/// Accept state reached by the step-8 test.
State accept_state();

struct BranchEvaluation {
    std::vector<bool> clause_values;  ///< track 3 after step 4
    bool result = false;              ///< track 4 cell 0 after step 5
};

/// Steps 4-5 on one classical branch: track 2 preloaded with the assignment.
BranchEvaluation evaluate_branch(const SatInstance& inst, const Assignment& a);

struct GqtmOptions {
    LogisticParams params;
    unsigned full_max_vars = kDefaultGuards.gqtm_full_max_vars;
    unsigned max_qubits = kDefaultGuards.max_qubits;
    bool record_steps = true;
};

struct GqtmRun {
    bool hybrid = false;            ///< q^2 from the circuit backend (n above full_max_vars)
    double q_squared = 0.0;         ///< weight of T4(1) in rho_6
    double weight_t4_zero = 0.0;    ///< weight of T4(0) in rho_6
    std::size_t rho6_components = 0;
    bool workspace_blank = false;   ///< tracks 1-3 blank on every rho_6 component
    int counter_max = 0;            ///< floor(5(n-1)/4) + 1 written by step 1
    std::vector<double> m_trace;    ///< M_0, M_1, ... as read by step 8
    std::vector<double> halting_trace;
    std::optional<int> first_crossing;
    Decision decision = Decision::Inconclusive;
    std::size_t unitary_steps = 0;
    std::size_t max_branches = 0;
    std::size_t branch_checks = 0;  ///< classical per-branch runs compared with eval_instance
    std::size_t branch_mismatches = 0;
    std::vector<StepRecord> steps;
};

/// Lambda_C: steps 1, 3, 4, 5 on the pure initial configuration.
ConfigSuperposition run_unitary_part(const SatInstance& inst, std::vector<StepRecord>* trace = nullptr);

/// Lambda_I: dephase, then step 6 (erase tracks 1-3) on every component.
MixedConfiguration to_rho6(const ConfigSuperposition& after_and);

/// Weight of components whose track-4 cell 0 holds 1.
double result_weight(const MixedConfiguration& rho);

/// Step 7 on the two-point distribution of track 4.
MixedConfiguration apply_amplifier(const MixedConfiguration& rho, double a);

/// Steps 2, 7, 8 looped on rho_6.
struct AmplifierLoopResult {
    std::vector<double> m_trace;
    std::vector<double> halting_trace;
    std::optional<int> first_crossing;
    int counter_max = 0;
    MixedConfiguration final_rho;
};
AmplifierLoopResult run_amplifier_loop(const MixedConfiguration& rho6, const LogisticParams& params);

GqtmRun run_sat_gqtm(const SatInstance& inst, const GqtmOptions& options = {});

/// Number of 'M' marks step 1 writes for an n-variable input.
int counter_marks(const SatInstance& inst);

}  // namespace ovsat::gqtm
