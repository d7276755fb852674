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
 * The two interchangeable model families behind one forward/backward
 * interface: a dense ReLU network and the variational quantum classifier.
 *
 * Parameters live in one flat vector per model so the optimizer and the
 * checkpoint format treat both families identically.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vqcbench/circuit.hpp"
#include "vqcbench/gradient.hpp"
#include "vqcbench/rng.hpp"
#include "vqcbench/statevector.hpp"

namespace vqcbench {

enum class OutputMode { Probabilities, Raw };

/// Numerically stable softmax.
inline std::vector<double> softmax(std::span<const double> logits) {
    double max_logit = logits[0];
    for (double v : logits) {
        max_logit = std::max(max_logit, v);
    }
    std::vector<double> probs(logits.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        probs[i] = std::exp(logits[i] - max_logit);
        sum += probs[i];
    }
    for (double &p : probs) {
        p /= sum;
    }
    return probs;
}

/**
 * @brief Trainable parameters of a variational circuit, stored flat as
 * [theta (L*n*3 raw values), biases (K), scale (1)].
 */
struct VqcParameters {
    std::size_t n_theta = 0;
    std::size_t n_outputs = 0;
    std::vector<double> values;

    VqcParameters() = default;
    VqcParameters(const CircuitTemplate &tpl)
        : n_theta(tpl.n_circuit_params()), n_outputs(tpl.n_outputs),
          values(n_theta + n_outputs + 1, 0.0) {
        values.back() = 1.0;
    }

    std::span<const double> theta() const {
        return {values.data(), n_theta};
    }
    std::span<double> theta() { return {values.data(), n_theta}; }
    std::span<const double> biases() const {
        return {values.data() + n_theta, n_outputs};
    }
    std::span<double> biases() { return {values.data() + n_theta, n_outputs}; }
    double scale() const { return values.back(); }
    double &scale() { return values.back(); }
};

/**
 * @brief Variational quantum classifier: repeated embedding + variational
 * layers, measured as scale * <Z_k> + bias_k on the first K qubits.
 */
class VqcModel {
  public:
    VqcModel(CircuitTemplate tpl) : tpl_(tpl), params_(tpl) {}

    /// theta ~ U[-1,1], biases ~ U[-0.001,0.001], scale = 1.
    VqcModel(CircuitTemplate tpl, std::uint32_t seed) : VqcModel(tpl) {
        auto rng = seeded_rng(seed, "vqc-init");
        std::uniform_real_distribution<double> theta_dist(-1.0, 1.0);
        for (double &v : params_.theta()) {
            v = theta_dist(rng);
        }
        std::uniform_real_distribution<double> bias_dist(-0.001, 0.001);
        for (double &v : params_.biases()) {
            v = bias_dist(rng);
        }
        params_.scale() = 1.0;
    }

    const CircuitTemplate &circuit_template() const { return tpl_; }
    std::size_t input_dim() const { return tpl_.feature_dim; }
    std::size_t output_dim() const { return tpl_.n_outputs; }
    std::size_t param_count() const { return params_.values.size(); }
    std::span<double> params() { return params_.values; }
    std::span<const double> params() const { return params_.values; }
    const VqcParameters &parameters() const { return params_; }

    CircuitProgram bind(std::span<const double> input) const {
        const auto remap = remap_angles(params_.theta());
        return build_circuit(tpl_, remap.angles, input);
    }

    /// Cached state of one circuit execution, reusable by `backward`.
    struct Forward {
        CircuitProgram prog;
        StateVector state{1};
        std::vector<double> derivatives;  // d(angle)/d(raw) per slot
        std::vector<double> expvals;
        std::vector<double> logits;
    };

    Forward forward_context(std::span<const double> input) const {
        Forward f;
        auto remap = remap_angles(params_.theta());
        f.prog = build_circuit(tpl_, remap.angles, input);
        f.derivatives = std::move(remap.derivatives);
        f.state = run_program(f.prog);
        f.expvals.resize(tpl_.n_outputs);
        f.logits.resize(tpl_.n_outputs);
        for (std::size_t k = 0; k < tpl_.n_outputs; ++k) {
            f.expvals[k] = pauli_z_expectation(f.state, k);
            f.logits[k] =
                params_.scale() * f.expvals[k] + params_.biases()[k];
        }
        return f;
    }

    /**
     * @brief Accumulates d(loss)/d(params) into `grad` from a cached
     * forward pass, using a single weighted adjoint sweep.
     */
    void backward(const Forward &f, std::span<const double> dlogits,
                  std::span<double> grad) const {
        std::vector<double> weights(tpl_.n_outputs);
        for (std::size_t k = 0; k < tpl_.n_outputs; ++k) {
            weights[k] = dlogits[k] * params_.scale();
        }
        const auto dphi = adjoint_weighted_gradient(f.prog, weights,
                                                    &f.state);
        for (std::size_t p = 0; p < params_.n_theta; ++p) {
            grad[p] += dphi[p] * f.derivatives[p];
        }
        double dscale = 0.0;
        for (std::size_t k = 0; k < tpl_.n_outputs; ++k) {
            grad[params_.n_theta + k] += dlogits[k];
            dscale += dlogits[k] * f.expvals[k];
        }
        grad[params_.values.size() - 1] += dscale;
    }

    std::vector<double> forward(std::span<const double> input,
                                OutputMode mode) const {
        const auto f = forward_context(input);
        return mode == OutputMode::Probabilities ? softmax(f.logits)
                                                 : f.logits;
    }

    std::vector<double> accumulate_gradient(std::span<const double> input,
                                            std::span<const double> dlogits,
                                            std::span<double> grad) const {
        const auto f = forward_context(input);
        backward(f, dlogits, grad);
        return f.logits;
    }

  private:
    CircuitTemplate tpl_;
    VqcParameters params_;
};

/**
 * @brief Fully connected feedforward network with ReLU hidden activations.
 *
 * Layout of the flat parameter vector, per layer: weight matrix (row-major,
 * out x in) followed by the bias vector.
 */
class DenseNet {
  public:
    DenseNet(std::vector<std::size_t> layer_sizes)
        : layer_sizes_(std::move(layer_sizes)) {
        if (layer_sizes_.size() < 2) {
            throw std::invalid_argument(
                "DenseNet: need at least input and output layers");
        }
        std::size_t total = 0;
        for (std::size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
            total += layer_sizes_[l] * layer_sizes_[l + 1] +
                     layer_sizes_[l + 1];
        }
        params_.assign(total, 0.0);
    }

    /// Weights and biases ~ U[-1/sqrt(fan_in), 1/sqrt(fan_in)] per layer.
    DenseNet(std::vector<std::size_t> layer_sizes, std::uint32_t seed)
        : DenseNet(std::move(layer_sizes)) {
        auto rng = seeded_rng(seed, "nn-init");
        std::size_t offset = 0;
        for (std::size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
            const double bound = 1.0 / std::sqrt(
                static_cast<double>(layer_sizes_[l]));
            std::uniform_real_distribution<double> dist(-bound, bound);
            const std::size_t count =
                layer_sizes_[l] * layer_sizes_[l + 1] + layer_sizes_[l + 1];
            for (std::size_t i = 0; i < count; ++i) {
                params_[offset + i] = dist(rng);
            }
            offset += count;
        }
    }

    const std::vector<std::size_t> &layer_sizes() const {
        return layer_sizes_;
    }
    std::size_t input_dim() const { return layer_sizes_.front(); }
    std::size_t output_dim() const { return layer_sizes_.back(); }
    std::size_t param_count() const { return params_.size(); }
    std::span<double> params() { return params_; }
    std::span<const double> params() const { return params_; }

    /// Cached activations of one forward pass, reusable by `backward`.
    struct Forward {
        std::vector<double> input;
        std::vector<std::vector<double>> activations;  // hidden layers only
        std::vector<double> logits;
    };

    Forward forward_context(std::span<const double> input) const {
        Forward f;
        f.input.assign(input.begin(), input.end());
        f.logits = forward_cached(input, f.activations);
        return f;
    }

    /// Backprop through the cached pass; accumulates into `grad`.
    void backward(const Forward &f, std::span<const double> dlogits,
                  std::span<double> grad) const {
        const std::size_t n_layers = layer_sizes_.size() - 1;
        std::vector<double> delta(dlogits.begin(), dlogits.end());
        for (std::size_t l = n_layers; l-- > 0;) {
            const std::size_t in = layer_sizes_[l];
            const std::size_t out = layer_sizes_[l + 1];
            const std::size_t offset = layer_offset(l);
            const std::span<const double> in_act =
                l == 0 ? std::span<const double>(f.input)
                       : std::span<const double>(f.activations[l - 1]);

            for (std::size_t r = 0; r < out; ++r) {
                for (std::size_t c = 0; c < in; ++c) {
                    grad[offset + r * in + c] += delta[r] * in_act[c];
                }
                grad[offset + out * in + r] += delta[r];
            }
            if (l == 0) {
                break;
            }
            std::vector<double> prev(in, 0.0);
            for (std::size_t c = 0; c < in; ++c) {
                double acc = 0.0;
                for (std::size_t r = 0; r < out; ++r) {
                    acc += params_[offset + r * in + c] * delta[r];
                }
                // ReLU mask from the stored post-activation
                prev[c] = f.activations[l - 1][c] > 0.0 ? acc : 0.0;
            }
            delta = std::move(prev);
        }
    }

    std::vector<double> forward(std::span<const double> input,
                                OutputMode mode) const {
        std::vector<std::vector<double>> activations;
        const auto logits = forward_cached(input, activations);
        return mode == OutputMode::Probabilities ? softmax(logits) : logits;
    }

    std::vector<double> accumulate_gradient(std::span<const double> input,
                                            std::span<const double> dlogits,
                                            std::span<double> grad) const {
        const auto f = forward_context(input);
        backward(f, dlogits, grad);
        return f.logits;
    }

  private:
    std::size_t layer_offset(std::size_t layer) const {
        std::size_t offset = 0;
        for (std::size_t l = 0; l < layer; ++l) {
            offset += layer_sizes_[l] * layer_sizes_[l + 1] +
                      layer_sizes_[l + 1];
        }
        return offset;
    }

    std::vector<double>
    forward_cached(std::span<const double> input,
                   std::vector<std::vector<double>> &activations) const {
        if (input.size() != layer_sizes_.front()) {
            throw std::invalid_argument(
                "DenseNet: input dimension mismatch (expected " +
                std::to_string(layer_sizes_.front()) + ", got " +
                std::to_string(input.size()) + ")");
        }
        activations.clear();
        std::vector<double> current(input.begin(), input.end());
        const std::size_t n_layers = layer_sizes_.size() - 1;
        for (std::size_t l = 0; l < n_layers; ++l) {
            const std::size_t in = layer_sizes_[l];
            const std::size_t out = layer_sizes_[l + 1];
            const std::size_t offset = layer_offset(l);
            std::vector<double> next(out);
            for (std::size_t r = 0; r < out; ++r) {
                double z = params_[offset + out * in + r];
                for (std::size_t c = 0; c < in; ++c) {
                    z += params_[offset + r * in + c] * current[c];
                }
                next[r] = (l + 1 < n_layers) ? std::max(0.0, z) : z;
            }
            current = std::move(next);
            if (l + 1 < n_layers) {
                activations.push_back(current);
            }
        }
        return current;
    }

    std::vector<std::size_t> layer_sizes_;
    std::vector<double> params_;
};

/// Template-level wrapper: gradient record for (template, parameters, input).
inline GradientRecord adjoint_gradient(const CircuitTemplate &tpl,
                                       const VqcParameters &params,
                                       std::span<const double> input) {
    const auto remap = remap_angles(params.theta());
    return adjoint_gradient(build_circuit(tpl, remap.angles, input));
}

inline GradientRecord
parameter_shift_gradient(const CircuitTemplate &tpl,
                         const VqcParameters &params,
                         std::span<const double> input,
                         double shift = std::numbers::pi / 2.0) {
    const auto remap = remap_angles(params.theta());
    return parameter_shift_gradient(build_circuit(tpl, remap.angles, input),
                                    shift);
}

// ---------------------------------------------------------------------------
// Checkpoint format: self-describing JSON with a fixed field order and the
// flat parameter list at full precision.
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json checkpoint_json(const VqcModel &model) {
    const auto &tpl = model.circuit_template();
    nlohmann::ordered_json j;
    j["family"] = "vqc";
    j["embedding"] = to_string(tpl.embedding);
    j["feature_dim"] = tpl.feature_dim;
    j["n_qubits"] = tpl.n_qubits;
    j["n_layers"] = tpl.n_layers;
    j["n_outputs"] = tpl.n_outputs;
    j["params"] = std::vector<double>(model.params().begin(),
                                      model.params().end());
    return j;
}

inline nlohmann::ordered_json checkpoint_json(const DenseNet &model) {
    nlohmann::ordered_json j;
    j["family"] = "nn";
    j["layer_sizes"] = model.layer_sizes();
    j["params"] = std::vector<double>(model.params().begin(),
                                      model.params().end());
    return j;
}

template <class Model>
void save_checkpoint(const Model &model, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("save_checkpoint: cannot open " + path);
    }
    out << checkpoint_json(model).dump(2) << '\n';
}

inline VqcModel load_vqc_checkpoint(const nlohmann::json &j) {
    const std::string embedding = j.at("embedding").get<std::string>();
    CircuitTemplate tpl = CircuitTemplate::make(
        embedding == "angle" ? EmbeddingKind::Angle : EmbeddingKind::Amplitude,
        j.at("feature_dim").get<std::size_t>(),
        j.at("n_layers").get<std::size_t>(),
        j.at("n_outputs").get<std::size_t>());
    if (tpl.n_qubits != j.at("n_qubits").get<std::size_t>()) {
        throw std::runtime_error(
            "load_vqc_checkpoint: inconsistent qubit count");
    }
    VqcModel model(tpl);
    const auto params = j.at("params").get<std::vector<double>>();
    if (params.size() != model.param_count()) {
        throw std::runtime_error("load_vqc_checkpoint: parameter count "
                                 "does not match the architecture");
    }
    std::copy(params.begin(), params.end(), model.params().begin());
    return model;
}

inline DenseNet load_nn_checkpoint(const nlohmann::json &j) {
    DenseNet model(j.at("layer_sizes").get<std::vector<std::size_t>>());
    const auto params = j.at("params").get<std::vector<double>>();
    if (params.size() != model.param_count()) {
        throw std::runtime_error("load_nn_checkpoint: parameter count "
                                 "does not match the architecture");
    }
    std::copy(params.begin(), params.end(), model.params().begin());
    return model;
}

}  // namespace vqcbench
