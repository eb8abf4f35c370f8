#include <doctest.h>

#include <random>
#include <sstream>

#include "ovsat/random_instances.hpp"
#include "ovsat/sat_model.hpp"

using namespace ovsat;

namespace {

const char* kExample = "p cnf 3 3\n1 2 -3 0\n3 -2 0\n1 -2 -3 0\n";

// Independent count: clause as (positive mask, negated mask).
std::uint64_t bitmask_count(const SatInstance& inst) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> masks;
    for (const auto& c : inst.clauses()) {
        std::uint64_t pos = 0, neg = 0;
        for (const auto& l : c.literals) (l.negated ? neg : pos) |= std::uint64_t{1} << (l.variable - 1);
        masks.emplace_back(pos, neg);
    }
    std::uint64_t r = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << inst.num_vars()); ++x) {
        bool all = true;
        for (auto [p, q] : masks) all = all && ((x & p) != 0 || (~x & q) != 0);
        r += all;
    }
    return r;
}

ParseErrorKind parse_kind(const char* text) {
    try {
        parse_dimacs(text);
    } catch (const ParseError& e) {
        return e.kind();
    }
    FAIL("no parse error for: " << text);
    return ParseErrorKind::BadToken;
}

}  // namespace

TEST_SUITE("sat_model") {

TEST_CASE("three-clause example parses into three clauses") {
    const auto inst = parse_dimacs(kExample);
    CHECK(inst.num_vars() == 3);
    REQUIRE(inst.num_clauses() == 3);
    CHECK(inst.clause(0) == Clause{{{1, false}, {2, false}, {3, true}}});
    CHECK(inst.clause(1) == Clause{{{3, false}, {2, true}}});
    CHECK(inst.clause(2) == Clause{{{1, false}, {2, true}, {3, true}}});
    CHECK(inst.total_literals() == 8);
    CHECK(inst.warnings().empty());
}

TEST_CASE("comments, blank lines and clauses spanning lines") {
    const auto inst = parse_dimacs("c hello\n\np cnf 2 2\n1\n -2 0 2\n0\n");
    CHECK(inst.num_clauses() == 2);
    CHECK(inst.clause(0).card() == 2);
    CHECK(inst.clause(1) == Clause{{{2, false}}});
}

TEST_CASE("duplicate literals are preserved verbatim") {
    const auto inst = parse_dimacs("p cnf 2 1\n1 1 -2 0\n");
    CHECK(inst.clause(0).card() == 3);
}

TEST_CASE("malformed inputs carry an error kind") {
    CHECK(parse_kind("1 2 0\n") == ParseErrorKind::MalformedHeader);
    CHECK(parse_kind("p cnf x 1\n1 0\n") == ParseErrorKind::MalformedHeader);
    CHECK(parse_kind("p cnf 2 1\n1 2\n") == ParseErrorKind::UnterminatedClause);
    CHECK(parse_kind("p cnf 2 1\n3 0\n") == ParseErrorKind::VariableOutOfRange);
    CHECK(parse_kind("p cnf 2 2\n1 0\n0\n") == ParseErrorKind::EmptyClause);
    CHECK(parse_kind("p cnf 2 3\n1 0\n2 0\n") == ParseErrorKind::ClauseCountMismatch);
    CHECK(parse_kind("p cnf 2 1\n1 a 0\n") == ParseErrorKind::BadToken);
}

TEST_CASE("parse error reports the line") {
    try {
        parse_dimacs("p cnf 2 1\nc ok\n1 7 0\n");
        FAIL("expected error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("constructor rejects bad instances and warns on many clauses") {
    CHECK_THROWS_AS(SatInstance(2, {Clause{}}), std::invalid_argument);
    CHECK_THROWS_AS(SatInstance(2, {Clause{{{0, false}}}}), std::invalid_argument);
    std::vector<Clause> many(5, Clause{{{1, false}}});
    CHECK(SatInstance(2, many).warnings().size() == 1);
}

TEST_CASE("DIMACS round trip") {
    const auto inst = parse_dimacs(kExample);
    CHECK(parse_dimacs(to_dimacs(inst)) == inst);
}

TEST_CASE("evaluation on the three-clause example") {
    const auto inst = parse_dimacs(kExample);
    CHECK(eval_instance(inst, Assignment{{false, false, false}}));
    CHECK_FALSE(eval_instance(inst, Assignment{{false, false, true}}));
    CHECK_FALSE(eval_clause(inst.clause(0), Assignment{{false, false, true}}));
    CHECK(eval_literal({3, true}, Assignment{{true, true, false}}));
}

TEST_CASE("assignment index order: x1 is the least significant bit") {
    const auto a = Assignment::from_index(3, 0b001);
    CHECK(a.value(1));
    CHECK_FALSE(a.value(2));
    CHECK_FALSE(a.value(3));
}

TEST_CASE("model count of the three-clause example is 4") {
    const auto inst = parse_dimacs(kExample);
    CHECK(count_models(inst) == 4);
    // Satisfying assignments (x1,x2,x3): 000, 100, 101, 111.
    for (auto bits : {std::vector<bool>{0, 0, 0}, {1, 0, 0}, {1, 0, 1}, {1, 1, 1}}) {
        CHECK(eval_instance(inst, Assignment{bits}));
    }
}

TEST_CASE("model count agrees with a bitmask oracle and is partition independent") {
    RandomInstanceOptions opts;
    opts.max_vars = 12;
    opts.max_clauses = 12;
    opts.qubit_budget = 1000;
    RandomInstanceGenerator gen(2024, opts);
    for (int i = 0; i < 60; ++i) {
        const auto inst = gen.next();
        const auto expect = bitmask_count(inst);
        CHECK(count_models(inst) == expect);
        CHECK(count_models(inst, 30, 3) == expect);
        CHECK(count_models(inst, 30, 7) == expect);
    }
}

TEST_CASE("contradiction and tautology counts") {
    CHECK(count_models(parse_dimacs("p cnf 1 2\n1 0\n-1 0\n")) == 0);
    CHECK(count_models(parse_dimacs("p cnf 3 1\n2 -2 0\n")) == 8);
}

TEST_CASE("enumeration guard") {
    std::vector<Clause> c{Clause{{{1, false}}}};
    CHECK_THROWS_AS(count_models(SatInstance(31, c)), GuardError);
    CHECK_THROWS_AS(count_models(SatInstance(12, c), 10), GuardError);
}

}
