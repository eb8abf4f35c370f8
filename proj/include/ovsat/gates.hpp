#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ovsat {

using Complex = std::complex<double>;

/// 1-based qubit position; qubit 1 is the leftmost tensor factor and the
/// least significant bit of a basis index.
struct QubitIndex {
    std::uint32_t position = 0;

    std::uint32_t bit() const { return position - 1; }
    auto operator<=>(const QubitIndex&) const = default;
};

enum class GateKind { Not, Cn, Ccn, H, And, Or, Copy };

inline constexpr std::array<GateKind, 7> kAllGateKinds = {
    GateKind::Not, GateKind::Cn, GateKind::Ccn, GateKind::H,
    GateKind::And, GateKind::Or, GateKind::Copy};

std::size_t arity(GateKind kind);
std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_kind_from_name(std::string_view name);

/// Dense row-major matrix on 2^arity dimensions. Local basis index has the
/// gate's first position as its least significant bit.
struct GateMatrix {
    std::size_t dim = 0;
    std::vector<Complex> entries;

    Complex operator()(std::size_t row, std::size_t col) const { return entries[row * dim + col]; }
    Complex& operator()(std::size_t row, std::size_t col) { return entries[row * dim + col]; }
};

GateMatrix gate_matrix(GateKind kind);

/// For basis-permuting gates, local input index -> local output index.
std::optional<std::vector<std::uint8_t>> classical_map(GateKind kind);

class PlacedGate {
public:
    PlacedGate(GateKind kind, std::initializer_list<std::uint32_t> positions);
    PlacedGate(GateKind kind, std::span<const QubitIndex> positions);

    GateKind kind() const { return kind_; }
    std::span<const QubitIndex> positions() const { return {positions_.data(), count_}; }
    std::uint32_t max_position() const;

    bool operator==(const PlacedGate& other) const;

private:
    void validate() const;

    GateKind kind_;
    std::array<QubitIndex, 3> positions_{};
    std::size_t count_ = 0;
};

using GateTally = std::map<GateKind, std::size_t>;

/// Gates in application order: gates[0] acts first.
struct GateSequence {
    std::vector<PlacedGate> gates;

    void append(const PlacedGate& g) { gates.push_back(g); }
    void append(const GateSequence& other);
    std::size_t size() const { return gates.size(); }
    bool empty() const { return gates.empty(); }
    std::uint32_t min_register_size() const;
    GateTally tally() const;

    bool operator==(const GateSequence&) const = default;
};

/// Logical gates in terms of elementary ones (OR = CN(u,w) CN(v,w) CCN(u,v,w)
/// as an operator product, applied here as CCN, CN(v,w), CN(u,w)).
GateSequence decompose(GateKind kind, std::span<const QubitIndex> positions);

enum class Polarity { Plain, Negated };

/// OR whose inputs may be literal negations: NOT-conjugates each negated input.
GateSequence or_bar(QubitIndex u, QubitIndex v, QubitIndex w, Polarity pu, Polarity pv);

/// H on qubits 1..k of an N-qubit register.
GateSequence hadamard_layer(std::uint32_t num_qubits, std::uint32_t k);

/// Line format "KIND p1 p2 p3".
std::string to_text(const GateSequence& seq);
GateSequence parse_gate_text(std::string_view text);

}  // namespace ovsat
