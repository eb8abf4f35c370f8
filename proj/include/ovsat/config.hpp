#pragma once

#include <cstddef>

namespace ovsat {

/// Numerical budgets shared by every module.
struct Tolerances {
    double accumulated = 1e-10;  ///< norm drift allowed over a full run
    double single_op = 1e-12;    ///< one gate / one projection
    double zero_probability = 1e-15;
    double dump_threshold = 1e-14;
    double sat_threshold = 1e-12;  ///< q^2 above this means SAT
    double prune = 1e-15;          ///< GQTM branches below this are dropped
};

struct Guards {
    unsigned max_enumeration_vars = 30;
    unsigned max_qubits = 26;
    unsigned gqtm_full_max_vars = 3;
};

inline constexpr Tolerances kTolerances{};
inline constexpr Guards kDefaultGuards{};

}  // namespace ovsat
