// Copyright 2026 The vqcbench Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exact complex statevector simulation: state allocation, gate application,
 * data embeddings and Pauli-Z expectation values.
 *
 * Conventions used throughout the library:
 *  - Qubit 0 is the most significant bit of the basis-state index
 *    (big-endian), i.e. |q0 q1 ... q_{n-1}>.
 *  - Rotation gates follow R_A(phi) = exp(-i*phi*A/2) for A in {X, Y, Z}.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vqcbench {

using Complex = std::complex<double>;

/// Maximum register width supported by the dense amplitude representation.
inline constexpr std::size_t kMaxQubits = 20;

enum class GateKind { RX, RY, RZ, CNOT };

/**
 * @brief A single gate instance: kind, wires and (for rotations) an angle.
 *
 * `param_index` ties a rotation to a trainable-parameter slot; -1 marks a
 * fixed (non-trainable) gate such as an embedding rotation or a CNOT.
 */
struct Gate {
    GateKind kind;
    int target;
    int control = -1;      // CNOT only
    double angle = 0.0;    // rotations only, radians
    int param_index = -1;  // slot in the flat trainable-angle vector

    static Gate rx(int target, double angle, int param_index = -1) {
        return {GateKind::RX, target, -1, angle, param_index};
    }
    static Gate ry(int target, double angle, int param_index = -1) {
        return {GateKind::RY, target, -1, angle, param_index};
    }
    static Gate rz(int target, double angle, int param_index = -1) {
        return {GateKind::RZ, target, -1, angle, param_index};
    }
    static Gate cnot(int control, int target) {
        return {GateKind::CNOT, target, control, 0.0, -1};
    }

    bool is_rotation() const { return kind != GateKind::CNOT; }
};

/**
 * @brief Dense complex amplitude array over the 2^n computational basis.
 *
 * Owned by a single worker during simulation; operations either mutate the
 * owned state in place or return a fresh value.
 */
class StateVector {
  public:
    /// Allocates |0...0> on `n_qubits` wires.
    explicit StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
        if (n_qubits < 1 || n_qubits > kMaxQubits) {
            throw std::invalid_argument(
                "StateVector: qubit count must be in [1, " +
                std::to_string(kMaxQubits) + "], got " +
                std::to_string(n_qubits));
        }
        amplitudes_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
        amplitudes_[0] = Complex{1.0, 0.0};
    }

    /// Adopts an explicit amplitude list (length must be a power of two).
    StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
        : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
        if (n_qubits < 1 || n_qubits > kMaxQubits ||
            amplitudes_.size() != (std::size_t{1} << n_qubits)) {
            throw std::invalid_argument(
                "StateVector: amplitude count does not match qubit count");
        }
    }

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t size() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    std::span<Complex> amplitudes() { return amplitudes_; }
    const Complex &operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm_sq() const {
        double s = 0.0;
        for (const auto &a : amplitudes_) {
            s += std::norm(a);
        }
        return s;
    }

    /// Index mask selecting the bit of `qubit` (qubit 0 = MSB).
    std::size_t bit_mask(std::size_t qubit) const {
        return std::size_t{1} << (n_qubits_ - 1 - qubit);
    }

  private:
    std::size_t n_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Allocates the all-zeros register |0...0>.
inline StateVector init_zero(std::size_t n_qubits) {
    return StateVector(n_qubits);
}

namespace detail {

/// Applies the 2x2 matrix [[m00,m01],[m10,m11]] to the target-qubit subspace.
inline void apply_single_qubit(StateVector &state, int target, Complex m00,
                               Complex m01, Complex m10, Complex m11) {
    auto amps = state.amplitudes();
    const std::size_t n = state.size();
    const std::size_t mask = state.bit_mask(static_cast<std::size_t>(target));
    for (std::size_t i = 0; i < n; ++i) {
        if ((i & mask) == 0) {
            const std::size_t j = i | mask;
            const Complex a = amps[i];
            const Complex b = amps[j];
            amps[i] = m00 * a + m01 * b;
            amps[j] = m10 * a + m11 * b;
        }
    }
}

inline void check_wire(const StateVector &state, int wire, const char *what) {
    if (wire < 0 || static_cast<std::size_t>(wire) >= state.n_qubits()) {
        throw std::out_of_range(std::string(what) + " index " +
                                std::to_string(wire) + " out of range for " +
                                std::to_string(state.n_qubits()) + " qubits");
    }
}

}  // namespace detail

/**
 * @brief Applies one gate in place. Norm is preserved (all gates unitary).
 */
inline void apply_gate_inplace(StateVector &state, const Gate &gate) {
    detail::check_wire(state, gate.target, "target");
    switch (gate.kind) {
    case GateKind::RX: {
        const double c = std::cos(gate.angle / 2.0);
        const double s = std::sin(gate.angle / 2.0);
        detail::apply_single_qubit(state, gate.target, {c, 0.0}, {0.0, -s},
                                   {0.0, -s}, {c, 0.0});
        break;
    }
    case GateKind::RY: {
        const double c = std::cos(gate.angle / 2.0);
        const double s = std::sin(gate.angle / 2.0);
        detail::apply_single_qubit(state, gate.target, {c, 0.0}, {-s, 0.0},
                                   {s, 0.0}, {c, 0.0});
        break;
    }
    case GateKind::RZ: {
        const Complex e0 = std::polar(1.0, -gate.angle / 2.0);
        const Complex e1 = std::polar(1.0, gate.angle / 2.0);
        detail::apply_single_qubit(state, gate.target, e0, {0.0, 0.0},
                                   {0.0, 0.0}, e1);
        break;
    }
    case GateKind::CNOT: {
        detail::check_wire(state, gate.control, "control");
        if (gate.control == gate.target) {
            throw std::invalid_argument(
                "CNOT: control and target must differ");
        }
        auto amps = state.amplitudes();
        const std::size_t cmask =
            state.bit_mask(static_cast<std::size_t>(gate.control));
        const std::size_t tmask =
            state.bit_mask(static_cast<std::size_t>(gate.target));
        const std::size_t n = state.size();
        for (std::size_t i = 0; i < n; ++i) {
            if ((i & cmask) != 0 && (i & tmask) == 0) {
                std::swap(amps[i], amps[i | tmask]);
            }
        }
        break;
    }
    }
}

/// Value-returning variant of apply_gate_inplace.
inline StateVector apply_gate(const StateVector &state, const Gate &gate) {
    StateVector out = state;
    apply_gate_inplace(out, gate);
    return out;
}

/// Inverse of a gate: negated angle for rotations, CNOT is self-inverse.
inline Gate inverse(const Gate &gate) {
    Gate inv = gate;
    if (inv.is_rotation()) {
        inv.angle = -inv.angle;
    }
    return inv;
}

inline void apply_gates_inplace(StateVector &state,
                                std::span<const Gate> gates) {
    for (const Gate &g : gates) {
        apply_gate_inplace(state, g);
    }
}

/**
 * @brief Angle embedding: RX(pi * x_i) on qubit i for each feature.
 *
 * Features must already be min-max scaled to [0,1]; a value outside that
 * range means the scaling contract was violated upstream.
 */
inline void angle_embed_inplace(StateVector &state,
                                std::span<const double> features) {
    if (features.size() > state.n_qubits()) {
        throw std::invalid_argument(
            "angle_embed: more features than qubits");
    }
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (!(features[i] >= 0.0 && features[i] <= 1.0)) {
            throw std::domain_error(
                "angle_embed: feature " + std::to_string(i) +
                " outside [0,1]: " + std::to_string(features[i]));
        }
        apply_gate_inplace(
            state, Gate::rx(static_cast<int>(i),
                            std::numbers::pi * features[i]));
    }
}

inline StateVector angle_embed(const StateVector &state,
                               std::span<const double> features) {
    StateVector out = state;
    angle_embed_inplace(out, features);
    return out;
}

/// Expectation of Pauli-Z on one qubit: sum of |amp|^2 with sign by bit value.
inline double pauli_z_expectation(const StateVector &state,
                                  std::size_t qubit) {
    if (qubit >= state.n_qubits()) {
        throw std::out_of_range("pauli_z_expectation: qubit out of range");
    }
    const std::size_t mask = state.bit_mask(qubit);
    double expval = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        expval += (i & mask) ? -p : p;
    }
    return expval;
}

/// Computational-basis probabilities |amp_i|^2.
inline std::vector<double> probabilities(const StateVector &state) {
    std::vector<double> probs(state.size());
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < probs.size(); ++i) {
        probs[i] = std::norm(amps[i]);
    }
    return probs;
}

}  // namespace vqcbench
