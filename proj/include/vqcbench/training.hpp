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
 * Supervised-learning pipeline: cross-entropy loss, mini-batch Adam
 * training with validation-based checkpoint selection, and evaluation.
 *
 * The loop is generic over the model family; circuit wall time is captured
 * only for the quantum family, where each model call executes a circuit.
 */
#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <random>
#include <span>
#include <string_view>
#include <type_traits>
#include <vector>

#include "vqcbench/dataset.hpp"
#include "vqcbench/models.hpp"
#include "vqcbench/optimizer.hpp"
#include "vqcbench/rng.hpp"

namespace vqcbench {

struct SlConfig {
    double learning_rate = 0.01;
    std::size_t epochs = 50;
    std::size_t batch_size = 8;
};

struct EpochRecord {
    std::size_t epoch = 0;  // 1-based
    double train_loss = 0.0;
    double train_accuracy = 0.0;
    double val_loss = 0.0;
    double val_accuracy = 0.0;
};

/**
 * @brief Everything measured during one training run: per-epoch curves,
 * test metrics at the selected checkpoint, and timing.
 */
struct RunMetrics {
    std::vector<EpochRecord> epochs;
    std::size_t best_epoch = 0;  // 0 = untrained initial model
    double best_val_accuracy = 0.0;
    double test_accuracy = 0.0;
    double test_loss = 0.0;
    double wall_seconds = 0.0;
    double circuit_seconds = 0.0;  // time spent executing circuits
    std::size_t circuit_evals = 0;
};

/**
 * @brief Hook for archiving individual circuit evaluations during training.
 *
 * `wants` gates by 1-based epoch (or episode) so that only sampled points
 * pay the recording cost.
 */
class CircuitObserver {
  public:
    virtual ~CircuitObserver() = default;
    virtual bool wants(std::size_t epoch) const = 0;
    virtual void record(std::size_t epoch, std::string_view phase,
                        std::span<const double> input,
                        std::span<const double> raw_params) = 0;
};

/// Five evenly spaced 1-based sample points: {1 + k*floor((total-1)/4)}.
inline std::vector<std::size_t> sample_points(std::size_t total,
                                              std::size_t count = 5) {
    std::vector<std::size_t> points;
    if (total == 0) {
        return points;
    }
    if (total <= count) {
        for (std::size_t e = 1; e <= total; ++e) {
            points.push_back(e);
        }
        return points;
    }
    const std::size_t stride = (total - 1) / (count - 1);
    for (std::size_t k = 0; k < count; ++k) {
        points.push_back(1 + k * stride);
    }
    return points;
}

struct CrossEntropyResult {
    double loss = 0.0;
    std::vector<double> dlogits;  // softmax-fused: probs - onehot(label)
};

/**
 * @brief Cross-entropy of a probability vector against an integer label,
 * with the gradient taken with respect to the pre-softmax logits.
 */
inline CrossEntropyResult cross_entropy(std::span<const double> probs,
                                        int label) {
    CrossEntropyResult result;
    double p = probs[static_cast<std::size_t>(label)];
    if (p < 1e-12) {
        static std::atomic<bool> warned{false};
        if (!warned.exchange(true)) {
            std::cerr << "warning: cross_entropy clamped a vanishing "
                         "probability at 1e-12\n";
        }
        p = 1e-12;
    }
    result.loss = -std::log(p);
    result.dlogits.assign(probs.begin(), probs.end());
    result.dlogits[static_cast<std::size_t>(label)] -= 1.0;
    return result;
}

/// Argmax with ties resolved to the lowest index.
inline std::size_t argmax_lowest(std::span<const double> values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) {
            best = i;
        }
    }
    return best;
}

struct EvalResult {
    double accuracy = 0.0;
    double mean_loss = 0.0;
};

namespace detail {

template <class Model>
inline constexpr bool kExecutesCircuits = std::is_same_v<Model, VqcModel>;

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Evaluation shared by the public entry point and the training loop;
/// optionally accumulates circuit time and archives evaluations.
template <class Model>
EvalResult evaluate_impl(const Model &model, const Dataset &ds,
                         std::span<const std::size_t> indices,
                         RunMetrics *metrics, CircuitObserver *observer,
                         std::size_t epoch, std::string_view phase) {
    if (indices.empty()) {
        throw std::invalid_argument("evaluate: empty split");
    }
    double loss_sum = 0.0;
    std::size_t correct = 0;
    const bool archive = observer != nullptr && observer->wants(epoch);
    for (const std::size_t i : indices) {
        const auto x = ds.row(i);
        const auto t0 = Clock::now();
        const auto probs = model.forward(x, OutputMode::Probabilities);
        if constexpr (kExecutesCircuits<Model>) {
            if (metrics != nullptr) {
                metrics->circuit_seconds += seconds_since(t0);
                ++metrics->circuit_evals;
            }
            if (archive) {
                observer->record(epoch, phase, x, model.params());
            }
        }
        loss_sum += cross_entropy(probs, ds.labels[i]).loss;
        if (argmax_lowest(probs) == static_cast<std::size_t>(ds.labels[i])) {
            ++correct;
        }
    }
    return {static_cast<double>(correct) / static_cast<double>(indices.size()),
            loss_sum / static_cast<double>(indices.size())};
}

}  // namespace detail

/// Accuracy and mean cross-entropy loss of a model on one split.
template <class Model>
EvalResult evaluate(const Model &model, const Dataset &ds,
                    std::span<const std::size_t> indices) {
    return detail::evaluate_impl(model, ds, indices, nullptr, nullptr, 0, "");
}

template <class Model>
struct SlResult {
    RunMetrics metrics;
    Model best_model;
};

/**
 * @brief Trains with shuffled mini-batches and Adam, evaluating validation
 * accuracy after every epoch and keeping the best checkpoint.
 *
 * Ties on validation accuracy keep the earliest epoch. Train loss and
 * accuracy are the online means observed during the epoch's passes.
 */
template <class Model>
SlResult<Model> train_sl(Model model, const Dataset &ds,
                         const SlConfig &config, std::uint32_t seed,
                         CircuitObserver *observer = nullptr) {
    const auto t_start = detail::Clock::now();
    SlResult<Model> result{RunMetrics{}, model};
    RunMetrics &metrics = result.metrics;

    AdamOptimizer opt(model.param_count(), config.learning_rate);
    auto shuffle_rng = seeded_rng(seed, "sl-shuffle");
    std::vector<std::size_t> order(ds.train.begin(), ds.train.end());
    std::vector<double> grad(model.param_count(), 0.0);

    // epoch 0 baseline: the untrained model is the initial checkpoint
    metrics.best_epoch = 0;
    metrics.best_val_accuracy =
        detail::evaluate_impl(model, ds, ds.val, &metrics, nullptr, 0, "val")
            .accuracy;

    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), shuffle_rng);
        double loss_sum = 0.0;
        std::size_t correct = 0;
        const bool archive = observer != nullptr && observer->wants(epoch);

        for (std::size_t begin = 0; begin < order.size();
             begin += config.batch_size) {
            const std::size_t end =
                std::min(begin + config.batch_size, order.size());
            const double batch_n = static_cast<double>(end - begin);
            std::fill(grad.begin(), grad.end(), 0.0);

            for (std::size_t b = begin; b < end; ++b) {
                const std::size_t i = order[b];
                const auto x = ds.row(i);
                const auto t0 = detail::Clock::now();
                const auto ctx = model.forward_context(x);
                const auto probs = softmax(ctx.logits);
                auto ce = cross_entropy(probs, ds.labels[i]);
                for (double &g : ce.dlogits) {
                    g /= batch_n;
                }
                model.backward(ctx, ce.dlogits, grad);
                if constexpr (detail::kExecutesCircuits<Model>) {
                    metrics.circuit_seconds += detail::seconds_since(t0);
                    ++metrics.circuit_evals;
                    if (archive) {
                        observer->record(epoch, "train", x, model.params());
                    }
                }
                loss_sum += ce.loss;
                if (argmax_lowest(probs) ==
                    static_cast<std::size_t>(ds.labels[i])) {
                    ++correct;
                }
            }
            opt.step(model.params(), grad);
        }

        EpochRecord record;
        record.epoch = epoch;
        record.train_loss = loss_sum / static_cast<double>(order.size());
        record.train_accuracy =
            static_cast<double>(correct) / static_cast<double>(order.size());
        const auto val = detail::evaluate_impl(model, ds, ds.val, &metrics,
                                               observer, epoch, "val");
        record.val_loss = val.mean_loss;
        record.val_accuracy = val.accuracy;
        metrics.epochs.push_back(record);

        if (val.accuracy > metrics.best_val_accuracy) {
            metrics.best_val_accuracy = val.accuracy;
            metrics.best_epoch = epoch;
            result.best_model = model;
        }
    }

    const auto test = detail::evaluate_impl(result.best_model, ds, ds.test,
                                            &metrics, nullptr, 0, "test");
    metrics.test_accuracy = test.accuracy;
    metrics.test_loss = test.mean_loss;
    metrics.wall_seconds = detail::seconds_since(t_start);
    return result;
}

}  // namespace vqcbench
