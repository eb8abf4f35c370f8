#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ovsat/chaos.hpp"

namespace ovsat::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kGuardRefusal = 2, kFindings = 3 };

struct RunFlags {
    std::string backend = "circuit";
    LogisticParams params;
    unsigned max_qubits = 0;  ///< 0: library default
    unsigned max_enum_vars = 0;
    std::string json_path;
    std::string csv_path;
    bool deterministic = false;
};

int cmd_solve(const std::string& path, const RunFlags& flags);
int cmd_trace(const std::string& path, const RunFlags& flags);

struct SweepFlags {
    std::uint32_t n_lo = 3;
    std::uint32_t n_hi = 16;
    std::string csv_path;
};

int cmd_sweep(const SweepFlags& flags);

struct VerifyFlags {
    std::string suite;
    std::uint64_t seed = 1;
    std::size_t count = 100;
    std::uint32_t max_n = 10;
    std::uint32_t n_lo = 2;
    std::uint32_t n_hi = 40;
    bool all_r = false;
    std::string precision = "double";
    LogisticParams params;
    unsigned workers = 0;  ///< 0: hardware concurrency
    std::string json_path;
    bool deterministic = false;
};

int cmd_verify(const VerifyFlags& flags);

int cmd_machine(const std::string& out_path);

}  // namespace ovsat::cli
