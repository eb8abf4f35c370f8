#include "ovsat/sat_model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <thread>

namespace ovsat {

Assignment Assignment::from_index(std::uint32_t num_vars, std::uint64_t index) {
    Assignment a;
    a.bits.resize(num_vars);
    for (std::uint32_t k = 0; k < num_vars; ++k) {
        a.bits[k] = ((index >> k) & 1u) != 0;
    }
    return a;
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}

SatInstance::SatInstance(std::uint32_t num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
    if (num_vars_ == 0) {
        throw std::invalid_argument("instance needs at least one variable");
    }
    if (clauses_.empty()) {
        throw std::invalid_argument("instance needs at least one clause");
    }
    for (const auto& c : clauses_) {
        if (c.literals.empty()) {
            throw std::invalid_argument("empty clause");
        }
        for (const auto& lit : c.literals) {
            if (lit.variable == 0 || lit.variable > num_vars_) {
                throw std::invalid_argument("literal variable " + std::to_string(lit.variable) +
                                            " outside 1.." + std::to_string(num_vars_));
            }
        }
    }
    if (clauses_.size() > 2 * static_cast<std::size_t>(num_vars_)) {
        warnings_.push_back("m = " + std::to_string(clauses_.size()) + " exceeds 2n = " +
                            std::to_string(2 * num_vars_));
    }
}

std::size_t SatInstance::total_literals() const {
    std::size_t total = 0;
    for (const auto& c : clauses_) total += c.card();
    return total;
}

namespace {

bool parse_int(std::string_view tok, long long& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace

SatInstance parse_dimacs(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    long long declared_vars = 0;
    long long declared_clauses = 0;
    std::vector<Clause> clauses;
    Clause current;
    std::size_t current_start = 0;

    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = split_ws(line);
        if (tokens.empty()) continue;
        if (tokens[0] == "c" || tokens[0].front() == 'c') continue;
        if (tokens[0] == "%") break;
        if (tokens[0] == "p") {
            if (have_header) {
                throw ParseError(ParseErrorKind::MalformedHeader, line_no, "duplicate header");
            }
            if (tokens.size() != 4 || tokens[1] != "cnf" || !parse_int(tokens[2], declared_vars) ||
                !parse_int(tokens[3], declared_clauses) || declared_vars <= 0 ||
                declared_clauses <= 0) {
                throw ParseError(ParseErrorKind::MalformedHeader, line_no,
                                 "expected 'p cnf <n> <m>' with positive n and m");
            }
            have_header = true;
            continue;
        }
        if (!have_header) {
            throw ParseError(ParseErrorKind::MalformedHeader, line_no,
                             "clause data before 'p cnf' header");
        }
        for (auto tok : tokens) {
            long long value = 0;
            if (!parse_int(tok, value)) {
                throw ParseError(ParseErrorKind::BadToken, line_no,
                                 "unexpected token '" + std::string(tok) + "'");
            }
            if (value == 0) {
                if (current.literals.empty()) {
                    throw ParseError(ParseErrorKind::EmptyClause, line_no, "empty clause");
                }
                clauses.push_back(std::move(current));
                current = Clause{};
                continue;
            }
            const long long var = value < 0 ? -value : value;
            if (var > declared_vars) {
                throw ParseError(ParseErrorKind::VariableOutOfRange, line_no,
                                 "variable index " + std::to_string(var) + " out of range 1.." +
                                     std::to_string(declared_vars));
            }
            if (current.literals.empty()) current_start = line_no;
            current.literals.push_back(Literal{static_cast<std::uint32_t>(var), value < 0});
        }
    }
    if (!have_header) {
        throw ParseError(ParseErrorKind::MalformedHeader, line_no, "missing 'p cnf' header");
    }
    if (!current.literals.empty()) {
        throw ParseError(ParseErrorKind::UnterminatedClause, current_start,
                         "clause not terminated by 0");
    }
    if (static_cast<long long>(clauses.size()) != declared_clauses) {
        throw ParseError(ParseErrorKind::ClauseCountMismatch, line_no,
                         "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                             std::to_string(clauses.size()));
    }
    return SatInstance(static_cast<std::uint32_t>(declared_vars), std::move(clauses));
}

SatInstance parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_dimacs(in);
}

SatInstance load_dimacs(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return parse_dimacs(in);
}

std::string to_dimacs(const SatInstance& inst) {
    std::ostringstream out;
    out << "p cnf " << inst.num_vars() << ' ' << inst.num_clauses() << '\n';
    for (const auto& c : inst.clauses()) {
        for (const auto& lit : c.literals) {
            out << (lit.negated ? "-" : "") << lit.variable << ' ';
        }
        out << "0\n";
    }
    return out.str();
}

bool eval_literal(const Literal& lit, const Assignment& a) {
    return a.value(lit.variable) != lit.negated;
}

bool eval_clause(const Clause& clause, const Assignment& a) {
    return std::any_of(clause.literals.begin(), clause.literals.end(),
                       [&](const Literal& lit) { return eval_literal(lit, a); });
}

bool eval_instance(const SatInstance& inst, const Assignment& a) {
    return std::all_of(inst.clauses().begin(), inst.clauses().end(),
                       [&](const Clause& c) { return eval_clause(c, a); });
}

std::uint64_t count_models(const SatInstance& inst, unsigned max_vars, unsigned workers) {
    const std::uint32_t n = inst.num_vars();
    if (n > max_vars || n > 62) {
        throw GuardError("model enumeration refused: n = " + std::to_string(n) +
                         " exceeds guard " + std::to_string(max_vars));
    }
    const std::uint64_t total = std::uint64_t{1} << n;

    auto count_range = [&inst, n](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t r = 0;
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            if (eval_instance(inst, Assignment::from_index(n, idx))) ++r;
        }
        return r;
    };

    workers = std::max(1u, workers);
    if (workers == 1 || total < 4096) {
        return count_range(0, total);
    }
    std::vector<std::uint64_t> partial(workers, 0);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t lo = std::min(total, w * chunk);
        const std::uint64_t hi = std::min(total, lo + chunk);
        pool.emplace_back([&, w, lo, hi] { partial[w] = count_range(lo, hi); });
    }
    for (auto& t : pool) t.join();
    std::uint64_t r = 0;
    for (auto p : partial) r += p;
    return r;
}

}  // namespace ovsat
