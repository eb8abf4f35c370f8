#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ovsat {

struct Literal {
    std::uint32_t variable = 0;  // 1-based
    bool negated = false;

    bool operator==(const Literal&) const = default;
};

struct Clause {
    std::vector<Literal> literals;

    std::size_t card() const { return literals.size(); }
    bool operator==(const Clause&) const = default;
};

/// Truth assignment; bits[k-1] is the value of x_k.
struct Assignment {
    std::vector<bool> bits;

    /// Bit k-1 of `index` becomes x_k, matching the register's basis order.
    static Assignment from_index(std::uint32_t num_vars, std::uint64_t index);
    bool value(std::uint32_t variable) const { return bits[variable - 1]; }
};

enum class ParseErrorKind {
    MalformedHeader,
    UnterminatedClause,
    VariableOutOfRange,
    EmptyClause,
    ClauseCountMismatch,
    BadToken,
};

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::size_t line, const std::string& what);

    ParseErrorKind kind() const { return kind_; }
    std::size_t line() const { return line_; }

private:
    ParseErrorKind kind_;
    std::size_t line_;
};

/// Thrown when a computation would exceed a configured size guard.
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// CNF instance. Immutable once constructed; literal order and duplicates are
/// kept exactly as given because the circuit layout consumes them verbatim.
class SatInstance {
public:
    SatInstance(std::uint32_t num_vars, std::vector<Clause> clauses);

    std::uint32_t num_vars() const { return num_vars_; }
    std::size_t num_clauses() const { return clauses_.size(); }
    const std::vector<Clause>& clauses() const { return clauses_; }
    const Clause& clause(std::size_t i) const { return clauses_[i]; }
    std::size_t total_literals() const;

    /// Non-fatal remarks, e.g. m > 2n.
    const std::vector<std::string>& warnings() const { return warnings_; }

    bool operator==(const SatInstance& other) const {
        return num_vars_ == other.num_vars_ && clauses_ == other.clauses_;
    }

private:
    std::uint32_t num_vars_;
    std::vector<Clause> clauses_;
    std::vector<std::string> warnings_;
};

SatInstance parse_dimacs(std::istream& in);
SatInstance parse_dimacs(std::string_view text);
SatInstance load_dimacs(const std::string& path);
std::string to_dimacs(const SatInstance& inst);

bool eval_literal(const Literal& lit, const Assignment& a);
bool eval_clause(const Clause& clause, const Assignment& a);
bool eval_instance(const SatInstance& inst, const Assignment& a);

/// Brute-force model count r = |{a : t_a(C) = 1}|. Partitions the 2^n range
/// across `workers` threads; the total is independent of the partition.
std::uint64_t count_models(const SatInstance& inst,
                           unsigned max_vars = 30,
                           unsigned workers = 1);

}  // namespace ovsat
