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
 * Exact analytic gradients of measured Pauli-Z expectations with respect to
 * circuit rotation angles.
 *
 * Two independent routes are provided: adjoint differentiation (production
 * path, one forward pass plus one reverse sweep) and the parameter-shift
 * rule (oracle path, two circuit evaluations per parameter). Both return
 * d<Z_k>/d(phi) for the remapped gate angles phi; the tanh remap that turns
 * raw trainable values into angles supplies the chain-rule factor.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "vqcbench/circuit.hpp"
#include "vqcbench/statevector.hpp"

namespace vqcbench {

/**
 * @brief Per-parameter partials d<Z_k>/d(phi_p), row-major over observables.
 */
struct GradientRecord {
    std::size_t n_observables = 0;
    std::size_t n_params = 0;
    std::vector<double> partials;  // [k * n_params + p]

    GradientRecord() = default;
    GradientRecord(std::size_t n_obs, std::size_t n_par)
        : n_observables(n_obs), n_params(n_par),
          partials(n_obs * n_par, 0.0) {}

    double at(std::size_t k, std::size_t p) const {
        return partials[k * n_params + p];
    }
    double &at(std::size_t k, std::size_t p) {
        return partials[k * n_params + p];
    }

    bool all_finite() const {
        for (double v : partials) {
            if (!std::isfinite(v)) {
                return false;
            }
        }
        return true;
    }
};

/// Angle remap phi(z) = pi * tanh(z) with its elementwise derivative.
struct RemappedAngles {
    std::vector<double> angles;
    std::vector<double> derivatives;  // d(phi)/dz = pi * (1 - tanh^2(z))
};

inline RemappedAngles remap_angles(std::span<const double> raw) {
    RemappedAngles out;
    out.angles.resize(raw.size());
    out.derivatives.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double t = std::tanh(raw[i]);
        out.angles[i] = std::numbers::pi * t;
        out.derivatives[i] = std::numbers::pi * (1.0 - t * t);
    }
    return out;
}

namespace detail {

/// lambda <- Z_qubit * lambda (diagonal sign flip).
inline void apply_pauli_z_inplace(StateVector &state, std::size_t qubit) {
    const std::size_t mask = state.bit_mask(qubit);
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & mask) {
            amps[i] = -amps[i];
        }
    }
}

/**
 * @brief <bra| P |ket> for the generator Pauli P of a rotation gate.
 */
inline Complex generator_braket(const StateVector &bra, const StateVector &ket,
                                const Gate &gate) {
    const std::size_t mask =
        ket.bit_mask(static_cast<std::size_t>(gate.target));
    const auto b = bra.amplitudes();
    const auto k = ket.amplitudes();
    Complex acc{0.0, 0.0};
    switch (gate.kind) {
    case GateKind::RX:  // X swaps the pair
        for (std::size_t i = 0; i < k.size(); ++i) {
            if ((i & mask) == 0) {
                const std::size_t j = i | mask;
                acc += std::conj(b[i]) * k[j] + std::conj(b[j]) * k[i];
            }
        }
        break;
    case GateKind::RY:  // Y = [[0,-i],[i,0]]
        for (std::size_t i = 0; i < k.size(); ++i) {
            if ((i & mask) == 0) {
                const std::size_t j = i | mask;
                acc += std::conj(b[i]) * Complex{0.0, -1.0} * k[j] +
                       std::conj(b[j]) * Complex{0.0, 1.0} * k[i];
            }
        }
        break;
    case GateKind::RZ:  // Z flips the sign of set-bit amplitudes
        for (std::size_t i = 0; i < k.size(); ++i) {
            acc += ((i & mask) ? -1.0 : 1.0) * std::conj(b[i]) * k[i];
        }
        break;
    case GateKind::CNOT:
        throw std::invalid_argument("generator_braket: CNOT has no angle");
    }
    return acc;
}

}  // namespace detail

/**
 * @brief Adjoint-method gradient of every measured <Z_k> in one reverse
 * sweep.
 *
 * After the forward pass the bra states O_k|psi> are walked backwards
 * together with the ket; each trainable rotation R(phi) = exp(-i*phi*P/2)
 * contributes d<Z_k>/dphi = Im(<lambda_k| P |phi>).
 */
inline GradientRecord adjoint_gradient(const CircuitProgram &prog) {
    GradientRecord record(prog.n_measured, prog.n_trainable);

    StateVector phi = run_program(prog);
    std::vector<StateVector> lambdas(prog.n_measured, phi);
    for (std::size_t k = 0; k < prog.n_measured; ++k) {
        detail::apply_pauli_z_inplace(lambdas[k], k);
    }

    for (std::size_t j = prog.gates.size(); j-- > 0;) {
        const Gate &gate = prog.gates[j];
        if (gate.param_index >= 0) {
            for (std::size_t k = 0; k < prog.n_measured; ++k) {
                record.at(k, static_cast<std::size_t>(gate.param_index)) +=
                    std::imag(detail::generator_braket(lambdas[k], phi, gate));
            }
        }
        const Gate inv = inverse(gate);
        apply_gate_inplace(phi, inv);
        for (auto &lambda : lambdas) {
            apply_gate_inplace(lambda, inv);
        }
    }
    return record;
}

/**
 * @brief Adjoint gradient of the single weighted observable
 * sum_k weights[k] * Z_k; one bra state regardless of K.
 *
 * This is the training fast path: a loss gradient only ever needs this
 * linear combination.
 */
inline std::vector<double>
adjoint_weighted_gradient(const CircuitProgram &prog,
                          std::span<const double> weights,
                          const StateVector *final_state = nullptr) {
    if (weights.size() != prog.n_measured) {
        throw std::invalid_argument(
            "adjoint_weighted_gradient: one weight per measured qubit");
    }
    std::vector<double> grad(prog.n_trainable, 0.0);

    StateVector phi = final_state ? *final_state : run_program(prog);
    StateVector lambda(prog.n_qubits,
                       std::vector<Complex>(phi.size(), Complex{0, 0}));
    {
        auto l = lambda.amplitudes();
        const auto p = phi.amplitudes();
        for (std::size_t i = 0; i < p.size(); ++i) {
            double diag = 0.0;
            for (std::size_t k = 0; k < weights.size(); ++k) {
                diag += (i & phi.bit_mask(k)) ? -weights[k] : weights[k];
            }
            l[i] = diag * p[i];
        }
    }

    for (std::size_t j = prog.gates.size(); j-- > 0;) {
        const Gate &gate = prog.gates[j];
        if (gate.param_index >= 0) {
            grad[static_cast<std::size_t>(gate.param_index)] +=
                std::imag(detail::generator_braket(lambda, phi, gate));
        }
        const Gate inv = inverse(gate);
        apply_gate_inplace(phi, inv);
        apply_gate_inplace(lambda, inv);
    }
    return grad;
}

/**
 * @brief Parameter-shift gradient: d<Z>/dphi = (E(phi+s) - E(phi-s)) /
 * (2 sin s), exact for Pauli-generated rotations; s defaults to pi/2 where
 * the denominator is 2.
 */
inline GradientRecord
parameter_shift_gradient(const CircuitProgram &prog,
                         double shift = std::numbers::pi / 2.0) {
    GradientRecord record(prog.n_measured, prog.n_trainable);
    const double denom = 2.0 * std::sin(shift);

    CircuitProgram shifted = prog;
    for (std::size_t j = 0; j < prog.gates.size(); ++j) {
        const Gate &gate = prog.gates[j];
        if (gate.param_index < 0) {
            continue;
        }
        shifted.gates[j].angle = gate.angle + shift;
        const auto plus = measure_expectations(shifted);
        shifted.gates[j].angle = gate.angle - shift;
        const auto minus = measure_expectations(shifted);
        shifted.gates[j].angle = gate.angle;
        for (std::size_t k = 0; k < prog.n_measured; ++k) {
            record.at(k, static_cast<std::size_t>(gate.param_index)) +=
                (plus[k] - minus[k]) / denom;
        }
    }
    return record;
}

}  // namespace vqcbench
