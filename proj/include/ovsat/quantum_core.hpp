#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "ovsat/config.hpp"
#include "ovsat/gates.hpp"

namespace ovsat {

/// Dense amplitude vector over 2^N basis states. Basis index i has qubit k
/// equal to bit (k-1) of i, so |e_1> = |1,0,...,0>.
class StateVector {
public:
    /// |0...0> on `num_qubits` qubits.
    explicit StateVector(std::uint32_t num_qubits, unsigned max_qubits = kDefaultGuards.max_qubits);

    static StateVector basis(std::uint32_t num_qubits, std::uint64_t index,
                             unsigned max_qubits = kDefaultGuards.max_qubits);
    /// Takes amplitudes verbatim; size must be a power of two.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    std::uint32_t num_qubits() const { return num_qubits_; }
    std::uint64_t dimension() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    Complex amplitude(std::uint64_t index) const { return amplitudes_[index]; }

    /// Sum of |a_i|^2 in index order.
    double norm_squared() const;

    void apply(const PlacedGate& gate);
    void apply(const GateSequence& seq);

private:
    StateVector() = default;

    void apply_permutation(std::span<const std::uint32_t> bits, std::span<const std::uint8_t> map);
    void apply_dense(std::span<const std::uint32_t> bits, const GateMatrix& m);

    std::uint32_t num_qubits_ = 0;
    std::vector<Complex> amplitudes_;
};

StateVector apply_placed_gate(StateVector state, const PlacedGate& gate);

double probability_qubit_one(const StateVector& state, QubitIndex q);

struct MeasurementOutcome {
    double probability = 0.0;
    std::optional<StateVector> post_state;  ///< absent when probability ~ 0
};

/// Projective measurement of qubit `q`, conditioned on `outcome`.
MeasurementOutcome project_qubit(const StateVector& state, QubitIndex q, int outcome);

/// CSV "index,real,imag" for amplitudes with |a| above `threshold`.
void write_state_csv(std::ostream& out, const StateVector& state,
                     double threshold = kTolerances.dump_threshold);

}  // namespace ovsat
