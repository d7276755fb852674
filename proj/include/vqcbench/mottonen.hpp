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
 * Amplitude embedding via a Mottonen-style cascade of uniformly controlled
 * RY rotations, decomposed to plain RY and CNOT gates.
 *
 * The decomposition covers real non-negative target amplitudes, which is all
 * the data pipeline produces (features are min-max scaled to [0,1] before
 * normalization), so no RZ phase stage is needed.
 */
#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "vqcbench/statevector.hpp"

namespace vqcbench {

/**
 * @brief Emits the gate sequence of a uniformly controlled RY rotation.
 *
 * A multiplexed RY applies RY(angles[j]) to `target` when the control
 * register holds basis value j, with `controls[0]` the most significant
 * control bit. The Gray-code construction uses exactly 2^k RY and 2^k CNOT
 * gates for k controls (a bare RY for k = 0).
 */
inline void append_multiplexed_ry(std::vector<Gate> &out,
                                  std::span<const double> angles,
                                  std::span<const int> controls, int target) {
    const std::size_t k = controls.size();
    const std::size_t m = std::size_t{1} << k;
    if (angles.size() != m) {
        throw std::invalid_argument(
            "append_multiplexed_ry: need 2^k angles for k controls");
    }
    if (k == 0) {
        out.push_back(Gate::ry(target, angles[0]));
        return;
    }
    // theta_i = 2^-k * sum_j (-1)^{popcount(j & gray(i))} * angles[j]
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t gray = i ^ (i >> 1);
        double theta = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const int sign = (std::popcount(j & gray) & 1) ? -1 : 1;
            theta += sign * angles[j];
        }
        out.push_back(Gate::ry(target, scale * theta));
        // CNOT on the control whose bit flips between gray(i) and gray(i+1);
        // the final CNOT closes the cascade on the most significant control.
        const std::size_t flip_bit =
            (i + 1 == m) ? k - 1 : std::countr_zero(i + 1);
        out.push_back(Gate::cnot(controls[k - 1 - flip_bit], target));
    }
}

/**
 * @brief Gate program preparing a real non-negative state from |0...0>.
 *
 * `amplitudes` must be L2-normalized with length 2^n_qubits. The returned
 * sequence consists of RY and CNOT gates only; applying it to |0...0>
 * reproduces `amplitudes` up to global phase.
 */
inline std::vector<Gate>
mottonen_prepare_gates(std::span<const double> amplitudes,
                       std::size_t n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (amplitudes.size() != dim) {
        throw std::invalid_argument(
            "mottonen_prepare_gates: amplitude count must be 2^n_qubits");
    }
    // Sub-block norms per prefix length: norms[k][p] is the L2 norm of the
    // amplitudes whose index starts with the k-bit prefix p.
    std::vector<std::vector<double>> norms(n_qubits + 1);
    norms[n_qubits].assign(amplitudes.begin(), amplitudes.end());
    for (std::size_t level = n_qubits; level-- > 0;) {
        const std::size_t count = std::size_t{1} << level;
        norms[level].resize(count);
        for (std::size_t p = 0; p < count; ++p) {
            norms[level][p] = std::hypot(norms[level + 1][2 * p],
                                         norms[level + 1][2 * p + 1]);
        }
    }

    std::vector<Gate> gates;
    for (std::size_t t = 0; t < n_qubits; ++t) {
        const std::size_t count = std::size_t{1} << t;
        std::vector<double> betas(count);
        for (std::size_t p = 0; p < count; ++p) {
            if (norms[t][p] <= 0.0) {
                betas[p] = 0.0;
            } else {
                betas[p] = 2.0 * std::atan2(norms[t + 1][2 * p + 1],
                                            norms[t + 1][2 * p]);
            }
        }
        std::vector<int> controls(t);
        for (std::size_t c = 0; c < t; ++c) {
            controls[c] = static_cast<int>(c);
        }
        append_multiplexed_ry(gates, betas, controls, static_cast<int>(t));
    }
    return gates;
}

/**
 * @brief Pads, normalizes and returns the target amplitudes for a feature
 * vector, plus the prepared state's gate program via `gates_out`.
 *
 * Features must be non-negative and not all zero.
 */
inline std::vector<double>
normalized_padded_amplitudes(std::span<const double> features,
                             std::size_t n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (features.size() > dim) {
        throw std::invalid_argument(
            "amplitude_embed: feature dimension exceeds 2^n_qubits");
    }
    std::vector<double> padded(dim, 0.0);
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (features[i] < 0.0) {
            throw std::domain_error(
                "amplitude_embed: negative feature value");
        }
        padded[i] = features[i];
        norm_sq += features[i] * features[i];
    }
    if (norm_sq == 0.0) {
        throw std::domain_error(
            "amplitude_embed: cannot normalize an all-zero feature vector");
    }
    const double inv_norm = 1.0 / std::sqrt(norm_sq);
    for (double &v : padded) {
        v *= inv_norm;
    }
    return padded;
}

/// Convenience gate program for embedding one feature vector.
inline std::vector<Gate> amplitude_embed_gates(std::span<const double> features,
                                               std::size_t n_qubits) {
    const auto target = normalized_padded_amplitudes(features, n_qubits);
    return mottonen_prepare_gates(target, n_qubits);
}

/**
 * @brief Prepares the amplitude-embedded state for `features` on a fresh
 * register of `n_qubits` wires.
 */
inline StateVector amplitude_embed(std::span<const double> features,
                                   std::size_t n_qubits) {
    StateVector state(n_qubits);
    const auto gates = amplitude_embed_gates(features, n_qubits);
    apply_gates_inplace(state, gates);
    return state;
}

}  // namespace vqcbench
