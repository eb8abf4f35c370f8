#include "ovsat/gates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ovsat {

std::size_t arity(GateKind kind) {
    switch (kind) {
        case GateKind::Not: return 1;
        case GateKind::Cn: return 2;
        case GateKind::Ccn: return 3;
        case GateKind::H: return 1;
        case GateKind::And: return 3;
        case GateKind::Or: return 3;
        case GateKind::Copy: return 2;
    }
    throw std::logic_error("unknown gate kind");
}

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::Not: return "NOT";
        case GateKind::Cn: return "CN";
        case GateKind::Ccn: return "CCN";
        case GateKind::H: return "H";
        case GateKind::And: return "AND";
        case GateKind::Or: return "OR";
        case GateKind::Copy: return "COPY";
    }
    throw std::logic_error("unknown gate kind");
}

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
    for (auto kind : kAllGateKinds) {
        if (gate_name(kind) == name) return kind;
    }
    return std::nullopt;
}

std::optional<std::vector<std::uint8_t>> classical_map(GateKind kind) {
    const std::size_t dim = std::size_t{1} << arity(kind);
    std::vector<std::uint8_t> map(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const bool e1 = i & 1u;
        const bool e2 = (i >> 1) & 1u;
        std::size_t out = i;
        switch (kind) {
            case GateKind::Not: out = i ^ 1u; break;
            case GateKind::Cn:
            case GateKind::Copy: out = e1 ? i ^ 2u : i; break;
            case GateKind::Ccn:
            case GateKind::And: out = (e1 && e2) ? i ^ 4u : i; break;
            case GateKind::Or: out = (e1 || e2) ? i ^ 4u : i; break;
            case GateKind::H: return std::nullopt;
        }
        map[i] = static_cast<std::uint8_t>(out);
    }
    return map;
}

GateMatrix gate_matrix(GateKind kind) {
    GateMatrix m;
    m.dim = std::size_t{1} << arity(kind);
    m.entries.assign(m.dim * m.dim, Complex{0.0, 0.0});
    if (kind == GateKind::H) {
        const double s = 1.0 / std::sqrt(2.0);
        m(0, 0) = s;
        m(0, 1) = s;
        m(1, 0) = s;
        m(1, 1) = -s;
        return m;
    }
    const auto map = *classical_map(kind);
    for (std::size_t col = 0; col < m.dim; ++col) {
        m(map[col], col) = 1.0;
    }
    return m;
}

PlacedGate::PlacedGate(GateKind kind, std::initializer_list<std::uint32_t> positions)
    : kind_(kind), count_(positions.size()) {
    if (count_ != arity(kind)) {
        throw std::invalid_argument(std::string(gate_name(kind)) + " expects " +
                                    std::to_string(arity(kind)) + " positions");
    }
    std::size_t i = 0;
    for (auto p : positions) positions_[i++] = QubitIndex{p};
    validate();
}

PlacedGate::PlacedGate(GateKind kind, std::span<const QubitIndex> positions)
    : kind_(kind), count_(positions.size()) {
    if (count_ != arity(kind)) {
        throw std::invalid_argument(std::string(gate_name(kind)) + " expects " +
                                    std::to_string(arity(kind)) + " positions");
    }
    std::copy(positions.begin(), positions.end(), positions_.begin());
    validate();
}

void PlacedGate::validate() const {
    for (std::size_t i = 0; i < count_; ++i) {
        if (positions_[i].position == 0) {
            throw std::invalid_argument("qubit positions are 1-based");
        }
        for (std::size_t j = i + 1; j < count_; ++j) {
            if (positions_[i] == positions_[j]) {
                throw std::invalid_argument("position clash: qubit " +
                                            std::to_string(positions_[i].position) +
                                            " used twice in " + std::string(gate_name(kind_)));
            }
        }
    }
}

std::uint32_t PlacedGate::max_position() const {
    std::uint32_t m = 0;
    for (auto q : positions()) m = std::max(m, q.position);
    return m;
}

bool PlacedGate::operator==(const PlacedGate& other) const {
    return kind_ == other.kind_ && count_ == other.count_ &&
           std::equal(positions().begin(), positions().end(), other.positions().begin());
}

void GateSequence::append(const GateSequence& other) {
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

std::uint32_t GateSequence::min_register_size() const {
    std::uint32_t n = 0;
    for (const auto& g : gates) n = std::max(n, g.max_position());
    return n;
}

GateTally GateSequence::tally() const {
    GateTally t;
    for (const auto& g : gates) ++t[g.kind()];
    return t;
}

GateSequence decompose(GateKind kind, std::span<const QubitIndex> positions) {
    if (positions.size() != arity(kind)) {
        throw std::invalid_argument("decompose: wrong number of positions");
    }
    GateSequence seq;
    switch (kind) {
        case GateKind::And:
            seq.append(PlacedGate(GateKind::Ccn, positions));
            break;
        case GateKind::Copy:
            seq.append(PlacedGate(GateKind::Cn, positions));
            break;
        case GateKind::Or: {
            const auto u = positions[0].position;
            const auto v = positions[1].position;
            const auto w = positions[2].position;
            seq.append(PlacedGate(GateKind::Ccn, {u, v, w}));
            seq.append(PlacedGate(GateKind::Cn, {v, w}));
            seq.append(PlacedGate(GateKind::Cn, {u, w}));
            break;
        }
        default:
            // elementary already
            seq.append(PlacedGate(kind, positions));
            break;
    }
    return seq;
}

GateSequence or_bar(QubitIndex u, QubitIndex v, QubitIndex w, Polarity pu, Polarity pv) {
    GateSequence seq;
    auto conjugate = [&] {
        if (pu == Polarity::Negated) seq.append(PlacedGate(GateKind::Not, {u.position}));
        if (pv == Polarity::Negated) seq.append(PlacedGate(GateKind::Not, {v.position}));
    };
    conjugate();
    seq.append(PlacedGate(GateKind::Or, {u.position, v.position, w.position}));
    conjugate();
    return seq;
}

GateSequence hadamard_layer(std::uint32_t num_qubits, std::uint32_t k) {
    if (k > num_qubits) {
        throw std::invalid_argument("hadamard_layer: k = " + std::to_string(k) +
                                    " exceeds register size " + std::to_string(num_qubits));
    }
    GateSequence seq;
    for (std::uint32_t q = 1; q <= k; ++q) {
        seq.append(PlacedGate(GateKind::H, {q}));
    }
    return seq;
}

std::string to_text(const GateSequence& seq) {
    std::ostringstream out;
    for (const auto& g : seq.gates) {
        out << gate_name(g.kind());
        for (auto q : g.positions()) out << ' ' << q.position;
        out << '\n';
    }
    return out.str();
}

GateSequence parse_gate_text(std::string_view text) {
    GateSequence seq;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string name;
        if (!(ls >> name) || name.front() == '#') continue;
        auto kind = gate_kind_from_name(name);
        if (!kind) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown gate '" +
                                        name + "'");
        }
        std::vector<QubitIndex> pos;
        std::uint32_t p = 0;
        while (ls >> p) pos.push_back(QubitIndex{p});
        seq.append(PlacedGate(*kind, pos));
    }
    return seq;
}

}  // namespace ovsat
