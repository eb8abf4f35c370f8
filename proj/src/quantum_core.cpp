#include "ovsat/quantum_core.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <iomanip>
#include <stdexcept>
#include <string>

#include "ovsat/sat_model.hpp"

namespace ovsat {

namespace {

void check_register(std::uint32_t num_qubits, unsigned max_qubits) {
    if (num_qubits == 0) {
        throw std::invalid_argument("register needs at least one qubit");
    }
    if (num_qubits > max_qubits) {
        throw GuardError("register of " + std::to_string(num_qubits) +
                         " qubits exceeds guard of " + std::to_string(max_qubits));
    }
}

/// Spreads the bits of `compact` over the positions not in `sorted_bits`.
inline std::uint64_t insert_zero_bits(std::uint64_t compact, std::span<const std::uint32_t> sorted_bits) {
    for (auto b : sorted_bits) {
        const std::uint64_t low = compact & ((std::uint64_t{1} << b) - 1);
        compact = ((compact >> b) << (b + 1)) | low;
    }
    return compact;
}

}  // namespace

StateVector::StateVector(std::uint32_t num_qubits, unsigned max_qubits) {
    check_register(num_qubits, max_qubits);
    num_qubits_ = num_qubits;
    amplitudes_.assign(std::uint64_t{1} << num_qubits, Complex{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

StateVector StateVector::basis(std::uint32_t num_qubits, std::uint64_t index, unsigned max_qubits) {
    StateVector s(num_qubits, max_qubits);
    if (index >= s.dimension()) {
        throw std::out_of_range("basis index " + std::to_string(index) + " outside 0.." +
                                std::to_string(s.dimension() - 1));
    }
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[index] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    if (amplitudes.size() < 2 || !std::has_single_bit(amplitudes.size())) {
        throw std::invalid_argument("amplitude vector length must be a power of two >= 2");
    }
    StateVector s;
    s.num_qubits_ = static_cast<std::uint32_t>(std::countr_zero(amplitudes.size()));
    s.amplitudes_ = std::move(amplitudes);
    return s;
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto& a : amplitudes_) total += std::norm(a);
    return total;
}

void StateVector::apply(const PlacedGate& gate) {
    std::array<std::uint32_t, 3> bits{};
    std::size_t count = 0;
    for (auto q : gate.positions()) {
        if (q.position > num_qubits_) {
            throw std::out_of_range("qubit " + std::to_string(q.position) + " outside register of " +
                                    std::to_string(num_qubits_));
        }
        bits[count++] = q.bit();
    }
    std::span<const std::uint32_t> target_bits(bits.data(), count);
    if (auto map = classical_map(gate.kind())) {
        apply_permutation(target_bits, *map);
    } else {
        apply_dense(target_bits, gate_matrix(gate.kind()));
    }
}

void StateVector::apply(const GateSequence& seq) {
    for (const auto& g : seq.gates) apply(g);
}

void StateVector::apply_permutation(std::span<const std::uint32_t> bits,
                                    std::span<const std::uint8_t> map) {
    std::array<std::uint32_t, 3> sorted{};
    std::copy(bits.begin(), bits.end(), sorted.begin());
    std::sort(sorted.begin(), sorted.begin() + bits.size());
    std::span<const std::uint32_t> sorted_bits(sorted.data(), bits.size());

    const std::size_t local_dim = map.size();
    std::array<std::uint64_t, 8> offsets{};
    for (std::size_t local = 0; local < local_dim; ++local) {
        std::uint64_t off = 0;
        for (std::size_t j = 0; j < bits.size(); ++j) {
            if ((local >> j) & 1u) off |= std::uint64_t{1} << bits[j];
        }
        offsets[local] = off;
    }
    std::array<Complex, 8> in{};
    const std::uint64_t blocks = amplitudes_.size() >> bits.size();
    for (std::uint64_t b = 0; b < blocks; ++b) {
        const std::uint64_t base = insert_zero_bits(b, sorted_bits);
        for (std::size_t l = 0; l < local_dim; ++l) in[l] = amplitudes_[base | offsets[l]];
        for (std::size_t l = 0; l < local_dim; ++l) amplitudes_[base | offsets[map[l]]] = in[l];
    }
}

void StateVector::apply_dense(std::span<const std::uint32_t> bits, const GateMatrix& m) {
    std::array<std::uint32_t, 3> sorted{};
    std::copy(bits.begin(), bits.end(), sorted.begin());
    std::sort(sorted.begin(), sorted.begin() + bits.size());
    std::span<const std::uint32_t> sorted_bits(sorted.data(), bits.size());

    std::array<std::uint64_t, 8> offsets{};
    for (std::size_t local = 0; local < m.dim; ++local) {
        std::uint64_t off = 0;
        for (std::size_t j = 0; j < bits.size(); ++j) {
            if ((local >> j) & 1u) off |= std::uint64_t{1} << bits[j];
        }
        offsets[local] = off;
    }
    std::array<Complex, 8> in{};
    const std::uint64_t blocks = amplitudes_.size() >> bits.size();
    for (std::uint64_t b = 0; b < blocks; ++b) {
        const std::uint64_t base = insert_zero_bits(b, sorted_bits);
        for (std::size_t l = 0; l < m.dim; ++l) in[l] = amplitudes_[base | offsets[l]];
        for (std::size_t r = 0; r < m.dim; ++r) {
            Complex acc{0.0, 0.0};
            for (std::size_t c = 0; c < m.dim; ++c) acc += m(r, c) * in[c];
            amplitudes_[base | offsets[r]] = acc;
        }
    }
}

StateVector apply_placed_gate(StateVector state, const PlacedGate& gate) {
    state.apply(gate);
    return state;
}

double probability_qubit_one(const StateVector& state, QubitIndex q) {
    if (q.position == 0 || q.position > state.num_qubits()) {
        throw std::out_of_range("qubit index outside register");
    }
    const std::uint64_t mask = std::uint64_t{1} << q.bit();
    double p = 0.0;
    const auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (i & mask) p += std::norm(amps[i]);
    }
    return p;
}

MeasurementOutcome project_qubit(const StateVector& state, QubitIndex q, int outcome) {
    if (outcome != 0 && outcome != 1) {
        throw std::invalid_argument("outcome must be 0 or 1");
    }
    const double p_one = probability_qubit_one(state, q);
    MeasurementOutcome result;
    result.probability = outcome == 1 ? p_one : 1.0 - p_one;
    if (result.probability < kTolerances.zero_probability) {
        result.probability = std::max(0.0, result.probability);
        return result;
    }
    const std::uint64_t mask = std::uint64_t{1} << q.bit();
    const double scale = 1.0 / std::sqrt(result.probability);
    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        const bool bit = (i & mask) != 0;
        amps[i] = (bit == (outcome == 1)) ? amps[i] * scale : Complex{0.0, 0.0};
    }
    result.post_state = StateVector::from_amplitudes(std::move(amps));
    return result;
}

void write_state_csv(std::ostream& out, const StateVector& state, double threshold) {
    out << "index,real,imag\n";
    out << std::setprecision(17);
    const auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (std::abs(amps[i]) > threshold) {
            out << i << ',' << amps[i].real() << ',' << amps[i].imag() << '\n';
        }
    }
}

}  // namespace ovsat
