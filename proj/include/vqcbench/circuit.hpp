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
 * Circuit template for the variational classifier: repeated data embedding
 * (re-uploading) followed by RZ-RY-RZ rotations per qubit and a CNOT
 * entangling ring, measured as Pauli-Z on the first K qubits.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vqcbench/mottonen.hpp"
#include "vqcbench/statevector.hpp"

namespace vqcbench {

enum class EmbeddingKind { Angle, Amplitude };

inline const char *to_string(EmbeddingKind kind) {
    return kind == EmbeddingKind::Angle ? "angle" : "amplitude";
}

/**
 * @brief Structural description of a variational circuit.
 *
 * Angle embedding uses one qubit per input feature; amplitude embedding uses
 * ceil(log2(D)) qubits, widened when more measured outputs are required than
 * the embedding alone would provide (K <= n_qubits must hold).
 */
struct CircuitTemplate {
    EmbeddingKind embedding;
    std::size_t feature_dim;
    std::size_t n_qubits;
    std::size_t n_layers;
    std::size_t n_outputs;
    bool data_reuploading = true;

    static CircuitTemplate make(EmbeddingKind embedding,
                                std::size_t feature_dim, std::size_t n_layers,
                                std::size_t n_outputs) {
        if (feature_dim == 0 || n_layers == 0 || n_outputs == 0) {
            throw std::invalid_argument(
                "CircuitTemplate: dimensions must be positive");
        }
        std::size_t n_qubits = 0;
        if (embedding == EmbeddingKind::Angle) {
            n_qubits = feature_dim;
            if (n_outputs > n_qubits) {
                throw std::invalid_argument(
                    "CircuitTemplate: angle embedding cannot measure more "
                    "outputs than features");
            }
        } else {
            std::size_t log_dim = 0;
            while ((std::size_t{1} << log_dim) < feature_dim) {
                ++log_dim;
            }
            n_qubits = std::max(std::max<std::size_t>(log_dim, 1), n_outputs);
        }
        return CircuitTemplate{embedding, feature_dim, n_qubits,
                               n_layers,  n_outputs,  true};
    }

    /// Trainable rotation-angle count: 3 per qubit per layer.
    std::size_t n_circuit_params() const { return 3 * n_qubits * n_layers; }

    /// Flat slot of the rotation angle at (layer, qubit, slot).
    std::size_t param_slot(std::size_t layer, std::size_t qubit,
                           std::size_t slot) const {
        return (layer * n_qubits + qubit) * 3 + slot;
    }
};

/**
 * @brief A concrete gate sequence with measured wires.
 *
 * Trainable rotations carry their flat parameter slot in Gate::param_index.
 */
struct CircuitProgram {
    std::size_t n_qubits;
    std::size_t n_measured;
    std::size_t n_trainable;
    std::vector<Gate> gates;
};

/// Embedding gate sequence for one input vector.
inline std::vector<Gate> embedding_gates(const CircuitTemplate &tpl,
                                         std::span<const double> input) {
    if (input.size() != tpl.feature_dim) {
        throw std::invalid_argument(
            "embedding_gates: input dimension mismatch (expected " +
            std::to_string(tpl.feature_dim) + ", got " +
            std::to_string(input.size()) + ")");
    }
    if (tpl.embedding == EmbeddingKind::Angle) {
        std::vector<Gate> gates;
        gates.reserve(input.size());
        for (std::size_t i = 0; i < input.size(); ++i) {
            if (!(input[i] >= 0.0 && input[i] <= 1.0)) {
                throw std::domain_error(
                    "embedding_gates: feature outside [0,1]");
            }
            gates.push_back(Gate::rx(static_cast<int>(i),
                                     std::numbers::pi * input[i]));
        }
        return gates;
    }
    return amplitude_embed_gates(input, tpl.n_qubits);
}

/**
 * @brief Builds the full gate program for one input and one set of remapped
 * rotation angles (length 3 * n_qubits * n_layers).
 *
 * Layer l: embed(input), then RZ, RY, RZ on every qubit, then the CNOT ring
 * control i -> target i+1 plus the wrap-around n-1 -> 0 (a single CNOT for
 * n = 2, none for n = 1).
 */
inline CircuitProgram build_circuit(const CircuitTemplate &tpl,
                                    std::span<const double> remapped_angles,
                                    std::span<const double> input) {
    if (remapped_angles.size() != tpl.n_circuit_params()) {
        throw std::invalid_argument(
            "build_circuit: angle count mismatch (expected " +
            std::to_string(tpl.n_circuit_params()) + ", got " +
            std::to_string(remapped_angles.size()) + ")");
    }
    const std::vector<Gate> embed = embedding_gates(tpl, input);
    const std::size_t n = tpl.n_qubits;

    CircuitProgram prog;
    prog.n_qubits = n;
    prog.n_measured = tpl.n_outputs;
    prog.n_trainable = tpl.n_circuit_params();
    prog.gates.reserve(tpl.n_layers * (embed.size() + 4 * n));

    for (std::size_t l = 0; l < tpl.n_layers; ++l) {
        prog.gates.insert(prog.gates.end(), embed.begin(), embed.end());
        for (std::size_t q = 0; q < n; ++q) {
            const int qi = static_cast<int>(q);
            const auto slot = [&](std::size_t s) {
                return static_cast<int>(tpl.param_slot(l, q, s));
            };
            prog.gates.push_back(
                Gate::rz(qi, remapped_angles[slot(0)], slot(0)));
            prog.gates.push_back(
                Gate::ry(qi, remapped_angles[slot(1)], slot(1)));
            prog.gates.push_back(
                Gate::rz(qi, remapped_angles[slot(2)], slot(2)));
        }
        for (std::size_t q = 0; q + 1 < n; ++q) {
            prog.gates.push_back(
                Gate::cnot(static_cast<int>(q), static_cast<int>(q + 1)));
        }
        if (n >= 3) {
            prog.gates.push_back(Gate::cnot(static_cast<int>(n - 1), 0));
        }
    }
    return prog;
}

/// Runs a program from |0...0> and returns the final state.
inline StateVector run_program(const CircuitProgram &prog) {
    StateVector state(prog.n_qubits);
    apply_gates_inplace(state, prog.gates);
    return state;
}

/// Pauli-Z expectation on each measured qubit of the executed program.
inline std::vector<double> measure_expectations(const CircuitProgram &prog) {
    const StateVector state = run_program(prog);
    std::vector<double> expvals(prog.n_measured);
    for (std::size_t k = 0; k < prog.n_measured; ++k) {
        expvals[k] = pauli_z_expectation(state, k);
    }
    return expvals;
}

}  // namespace vqcbench
