#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ovsat/sat_model.hpp"

namespace ovsat {

struct RandomInstanceOptions {
    std::uint32_t min_vars = 1;
    std::uint32_t max_vars = 5;
    std::size_t min_clauses = 1;
    std::size_t max_clauses = 6;
    std::size_t max_width = 3;
    unsigned qubit_budget = 20;  ///< instances whose register exceeds this are redrawn
};

/// Reproducible stream of instances: same seed, same sequence.
class RandomInstanceGenerator {
public:
    explicit RandomInstanceGenerator(std::uint64_t seed, RandomInstanceOptions options = {});

    SatInstance next();

private:
    std::uint64_t draw(std::uint64_t lo, std::uint64_t hi);

    std::uint64_t state_;
    RandomInstanceOptions options_;
};

/// Every clause over n variables that is a non-empty set of literals with no
/// complementary pair, in a fixed order.
std::vector<Clause> all_clauses(std::uint32_t n);

/// Calls `visit` on every multiset of 1..max_clauses clauses from all_clauses(n),
/// for n = 1..max_vars.
void for_each_small_instance(std::uint32_t max_vars, std::size_t max_clauses,
                             const std::function<void(const SatInstance&)>& visit);

/// Deterministic scaling family: n variables, 2n clauses of width 3 over
/// consecutive variables (cyclic) with a fixed sign pattern. Requires n >= 3.
SatInstance scaling_instance(std::uint32_t n);

}  // namespace ovsat
