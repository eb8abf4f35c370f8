#include <doctest.h>

#include <cmath>
#include <tuple>

#include "ovsat/gates.hpp"

using namespace ovsat;

namespace {

using Bits = std::vector<int>;

// |out><in| dyads as written for the logical gates; first entry is the first tensor factor.
std::size_t local_index(const Bits& b) {
    std::size_t i = 0;
    for (std::size_t k = 0; k < b.size(); ++k) i |= static_cast<std::size_t>(b[k]) << k;
    return i;
}

void check_dyads(GateKind kind, const std::vector<std::pair<Bits, Bits>>& dyads) {
    const auto m = gate_matrix(kind);
    REQUIRE(m.dim == dyads.size());
    GateMatrix expect{m.dim, std::vector<Complex>(m.dim * m.dim)};
    for (const auto& [out, in] : dyads) expect(local_index(out), local_index(in)) = 1.0;
    CHECK(m.entries == expect.entries);
}

}  // namespace

TEST_SUITE("gates") {

TEST_CASE("AND gate dyads") {
    check_dyads(GateKind::And, {{{0, 0, 0}, {0, 0, 0}}, {{0, 0, 1}, {0, 0, 1}}, {{1, 0, 0}, {1, 0, 0}},
                                {{1, 0, 1}, {1, 0, 1}}, {{0, 1, 0}, {0, 1, 0}}, {{0, 1, 1}, {0, 1, 1}},
                                {{1, 1, 1}, {1, 1, 0}}, {{1, 1, 0}, {1, 1, 1}}});
}

TEST_CASE("OR gate dyads") {
    check_dyads(GateKind::Or, {{{0, 0, 0}, {0, 0, 0}}, {{0, 0, 1}, {0, 0, 1}}, {{1, 0, 1}, {1, 0, 0}},
                               {{1, 0, 0}, {1, 0, 1}}, {{0, 1, 1}, {0, 1, 0}}, {{0, 1, 0}, {0, 1, 1}},
                               {{1, 1, 1}, {1, 1, 0}}, {{1, 1, 0}, {1, 1, 1}}});
}

TEST_CASE("COPY gate dyads") {
    check_dyads(GateKind::Copy, {{{0, 0}, {0, 0}}, {{0, 1}, {0, 1}}, {{1, 1}, {1, 0}}, {{1, 0}, {1, 1}}});
}

TEST_CASE("elementary gates") {
    check_dyads(GateKind::Not, {{{1}, {0}}, {{0}, {1}}});
    check_dyads(GateKind::Cn, {{{0, 0}, {0, 0}}, {{0, 1}, {0, 1}}, {{1, 1}, {1, 0}}, {{1, 0}, {1, 1}}});
    check_dyads(GateKind::Ccn, {{{0, 0, 0}, {0, 0, 0}}, {{0, 0, 1}, {0, 0, 1}}, {{0, 1, 0}, {0, 1, 0}},
                                {{0, 1, 1}, {0, 1, 1}}, {{1, 0, 0}, {1, 0, 0}}, {{1, 0, 1}, {1, 0, 1}},
                                {{1, 1, 1}, {1, 1, 0}}, {{1, 1, 0}, {1, 1, 1}}});
    const auto h = gate_matrix(GateKind::H);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(h(0, 0) == Complex{s, 0});
    CHECK(h(1, 0) == Complex{s, 0});
    CHECK(h(0, 1) == Complex{s, 0});
    CHECK(h(1, 1) == Complex{-s, 0});
}

TEST_CASE("arity, names and classical maps") {
    CHECK(arity(GateKind::Not) == 1);
    CHECK(arity(GateKind::H) == 1);
    CHECK(arity(GateKind::Copy) == 2);
    CHECK(arity(GateKind::Or) == 3);
    for (auto k : kAllGateKinds) CHECK(gate_kind_from_name(gate_name(k)) == k);
    CHECK_FALSE(gate_kind_from_name("XOR"));
    CHECK_FALSE(classical_map(GateKind::H));
    CHECK(classical_map(GateKind::Or));
}

TEST_CASE("placed gates validate positions") {
    CHECK_THROWS_AS(PlacedGate(GateKind::Or, {1, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(PlacedGate(GateKind::Not, {0}), std::invalid_argument);
    CHECK_THROWS_AS(PlacedGate(GateKind::Cn, {1}), std::invalid_argument);
    const PlacedGate g(GateKind::Ccn, {5, 2, 9});
    CHECK(g.max_position() == 9);
    CHECK(g.positions()[1].position == 2);
}

TEST_CASE("decomposition shapes") {
    const std::vector<QubitIndex> p{{1}, {2}, {3}};
    const auto or_seq = decompose(GateKind::Or, p);
    REQUIRE(or_seq.size() == 3);
    CHECK(or_seq.gates[0] == PlacedGate(GateKind::Ccn, {1, 2, 3}));
    CHECK(or_seq.gates[1] == PlacedGate(GateKind::Cn, {2, 3}));
    CHECK(or_seq.gates[2] == PlacedGate(GateKind::Cn, {1, 3}));
    CHECK(decompose(GateKind::And, p).gates == std::vector{PlacedGate(GateKind::Ccn, {1, 2, 3})});
    const std::vector<QubitIndex> q{{4}, {7}};
    CHECK(decompose(GateKind::Copy, q).gates == std::vector{PlacedGate(GateKind::Cn, {4, 7})});
}

TEST_CASE("negated-input OR conjugates with NOT") {
    const auto seq = or_bar({1}, {2}, {3}, Polarity::Negated, Polarity::Plain);
    REQUIRE(seq.size() == 3);
    CHECK(seq.gates[0] == PlacedGate(GateKind::Not, {1}));
    CHECK(seq.gates[1] == PlacedGate(GateKind::Or, {1, 2, 3}));
    CHECK(seq.gates[2] == PlacedGate(GateKind::Not, {1}));
    CHECK(or_bar({1}, {2}, {3}, Polarity::Negated, Polarity::Negated).size() == 5);
    CHECK(or_bar({1}, {2}, {3}, Polarity::Plain, Polarity::Negated).size() == 3);
}

TEST_CASE("sequence tally, register size and text round trip") {
    GateSequence seq = hadamard_layer(5, 3);
    seq.append(PlacedGate(GateKind::Or, {1, 2, 4}));
    seq.append(PlacedGate(GateKind::Copy, {4, 5}));
    const auto t = seq.tally();
    CHECK(t.at(GateKind::H) == 3);
    CHECK(t.at(GateKind::Or) == 1);
    CHECK(seq.min_register_size() == 5);
    CHECK(parse_gate_text(to_text(seq)) == seq);
    CHECK_THROWS(parse_gate_text("FOO 1 2\n"));
    CHECK_THROWS(parse_gate_text("OR 1 2\n"));
}

}
