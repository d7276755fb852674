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
 * Deterministic 4x4 Frozen Lake environment and deep Q-learning with
 * experience replay and a periodically copied target network.
 *
 * The grid is regenerated per seed: four holes are rejection-sampled among
 * the interior tiles until the shortest safe path start-to-goal is exactly
 * six moves, so every layout has the same optimal return of 0.95.
 */
#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <deque>
#include <queue>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "vqcbench/rng.hpp"
#include "vqcbench/training.hpp"

namespace vqcbench {

enum class Tile { Frozen, Hole, Start, Goal };
enum class Action { Left = 0, Down = 1, Right = 2, Up = 3 };

constexpr double kStepReward = -0.01;
constexpr double kGoalReward = 1.0;
constexpr double kHoleReward = -0.2;

struct StepResult {
    int next_state = 0;
    double reward = 0.0;
    bool done = false;
};

/**
 * @brief 4x4 gridworld. Tile indices are row-major, 0 top-left (start) to
 * 15 bottom-right (goal); moves off the edge leave the position unchanged.
 */
class LakeEnv {
  public:
    LakeEnv(std::array<Tile, 16> grid, std::uint32_t layout_seed)
        : grid_(grid), layout_seed_(layout_seed) {}

    const std::array<Tile, 16> &grid() const { return grid_; }
    std::uint32_t layout_seed() const { return layout_seed_; }
    int agent_pos() const { return agent_pos_; }
    bool done() const { return done_; }

    int reset() {
        agent_pos_ = 0;
        done_ = false;
        return agent_pos_;
    }

    /// Terminal rewards replace the step penalty, so the best episode
    /// earns 5 * (-0.01) + 1.0 = 0.95 over the six-move shortest path.
    StepResult step(Action action) {
        if (done_) {
            throw std::logic_error("LakeEnv::step called after episode end");
        }
        int row = agent_pos_ / 4;
        int col = agent_pos_ % 4;
        switch (action) {
        case Action::Left: col = std::max(0, col - 1); break;
        case Action::Down: row = std::min(3, row + 1); break;
        case Action::Right: col = std::min(3, col + 1); break;
        case Action::Up: row = std::max(0, row - 1); break;
        }
        agent_pos_ = row * 4 + col;
        StepResult result;
        result.next_state = agent_pos_;
        switch (grid_[static_cast<std::size_t>(agent_pos_)]) {
        case Tile::Goal:
            result.reward = kGoalReward;
            result.done = true;
            break;
        case Tile::Hole:
            result.reward = kHoleReward;
            result.done = true;
            break;
        default:
            result.reward = kStepReward;
            result.done = false;
            break;
        }
        done_ = result.done;
        return result;
    }

  private:
    std::array<Tile, 16> grid_{};
    std::uint32_t layout_seed_ = 0;
    int agent_pos_ = 0;
    bool done_ = false;
};

/// Moves of the shortest start-to-goal path over non-hole tiles, or -1.
inline int bfs_shortest_path(const std::array<Tile, 16> &grid) {
    std::array<int, 16> dist{};
    dist.fill(-1);
    dist[0] = 0;
    std::queue<int> frontier;
    frontier.push(0);
    while (!frontier.empty()) {
        const int tile = frontier.front();
        frontier.pop();
        if (tile == 15) {
            return dist[15];
        }
        const int row = tile / 4;
        const int col = tile % 4;
        const std::array<std::pair<int, int>, 4> moves{
            {{row, col - 1}, {row + 1, col}, {row, col + 1}, {row - 1, col}}};
        for (const auto &[r, c] : moves) {
            if (r < 0 || r > 3 || c < 0 || c > 3) {
                continue;
            }
            const int next = r * 4 + c;
            if (dist[next] != -1 ||
                grid[static_cast<std::size_t>(next)] == Tile::Hole) {
                continue;
            }
            dist[next] = dist[tile] + 1;
            frontier.push(next);
        }
    }
    return dist[15];
}

/**
 * @brief Rejection-samples a layout with four holes among the fourteen
 * interior tiles until the shortest safe path is exactly six moves.
 */
inline LakeEnv generate_lake(std::uint32_t seed) {
    auto rng = seeded_rng(seed, "lake");
    std::vector<int> interior;
    for (int t = 1; t <= 14; ++t) {
        interior.push_back(t);
    }
    while (true) {
        std::array<Tile, 16> grid{};
        grid.fill(Tile::Frozen);
        grid[0] = Tile::Start;
        grid[15] = Tile::Goal;
        std::shuffle(interior.begin(), interior.end(), rng);
        for (int h = 0; h < 4; ++h) {
            grid[static_cast<std::size_t>(interior[static_cast<std::size_t>(
                h)])] = Tile::Hole;
        }
        if (bfs_shortest_path(grid) == 6) {
            return LakeEnv(grid, seed);
        }
    }
}

/// Big-endian 4-bit encoding of a tile index, e.g. 6 -> [0,1,1,0].
inline std::array<double, 4> encode_state(int tile) {
    if (tile < 0 || tile > 15) {
        throw std::invalid_argument("encode_state: tile out of range");
    }
    std::array<double, 4> bits{};
    for (int b = 0; b < 4; ++b) {
        bits[static_cast<std::size_t>(b)] =
            static_cast<double>((tile >> (3 - b)) & 1);
    }
    return bits;
}

/**
 * @brief Encodes a tile for a model input of the given width: 4 means the
 * binary encoding, 16 a one-hot suitable for amplitude embedding (the
 * all-zero binary vector for tile 0 cannot be amplitude-embedded).
 */
inline std::vector<double> encode_for(std::size_t input_dim, int tile) {
    if (input_dim == 4) {
        const auto bits = encode_state(tile);
        return {bits.begin(), bits.end()};
    }
    if (input_dim == 16) {
        std::vector<double> one_hot(16, 0.0);
        one_hot[static_cast<std::size_t>(tile)] = 1.0;
        return one_hot;
    }
    throw std::invalid_argument("encode_for: unsupported input width");
}

/// Element i is the mean of the trailing window ending at i (window of
/// "up to" the given length, so early elements average fewer values).
inline std::vector<double> moving_average(std::span<const double> values,
                                          std::size_t window = 50) {
    std::vector<double> smoothed(values.size());
    double running = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        running += values[i];
        if (i >= window) {
            running -= values[i - window];
        }
        const std::size_t n = std::min(i + 1, window);
        smoothed[i] = running / static_cast<double>(n);
    }
    return smoothed;
}

/**
 * @brief Exhaustive finite-horizon dynamic program over the lake; returns
 * the optimal undiscounted return from the start tile.
 *
 * On every generated layout this equals 0.95; it serves as the oracle the
 * learned policies are compared against.
 */
inline double dp_optimal_return(const LakeEnv &env,
                                std::size_t horizon = 100) {
    std::array<double, 16> value{};
    for (std::size_t t = 0; t < horizon; ++t) {
        std::array<double, 16> next{};
        for (int s = 0; s < 16; ++s) {
            const Tile tile = env.grid()[static_cast<std::size_t>(s)];
            if (tile == Tile::Hole || tile == Tile::Goal) {
                next[static_cast<std::size_t>(s)] = 0.0;
                continue;
            }
            double best = -1e300;
            for (int a = 0; a < 4; ++a) {
                // move arithmetic mirrors LakeEnv::step
                int row = s / 4;
                int col = s % 4;
                switch (static_cast<Action>(a)) {
                case Action::Left: col = std::max(0, col - 1); break;
                case Action::Down: row = std::min(3, row + 1); break;
                case Action::Right: col = std::min(3, col + 1); break;
                case Action::Up: row = std::max(0, row - 1); break;
                }
                const int sp = row * 4 + col;
                const Tile dest = env.grid()[static_cast<std::size_t>(sp)];
                double q = 0.0;
                if (dest == Tile::Goal) {
                    q = kGoalReward;
                } else if (dest == Tile::Hole) {
                    q = kHoleReward;
                } else {
                    q = kStepReward + value[static_cast<std::size_t>(sp)];
                }
                best = std::max(best, q);
            }
            next[static_cast<std::size_t>(s)] = best;
        }
        value = next;
    }
    return value[0];
}

struct Transition {
    int state = 0;
    int action = 0;
    double reward = 0.0;
    int next_state = 0;
    bool done = false;
};

/// Fixed-capacity ring buffer; the oldest transition is overwritten first.
class ReplayBuffer {
  public:
    explicit ReplayBuffer(std::size_t capacity = 1000)
        : capacity_(capacity) {}

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return std::min(count_, capacity_); }
    std::size_t inserted() const { return count_; }

    void push(const Transition &t) {
        if (buffer_.size() < capacity_) {
            buffer_.push_back(t);
        } else {
            buffer_[count_ % capacity_] = t;
        }
        ++count_;
    }

    const Transition &at(std::size_t i) const { return buffer_[i]; }

    /// Uniform sample of `batch` transitions (with replacement).
    std::vector<Transition> sample(std::mt19937 &rng,
                                   std::size_t batch) const {
        if (size() == 0) {
            throw std::logic_error("ReplayBuffer::sample on empty buffer");
        }
        std::uniform_int_distribution<std::size_t> pick(0, size() - 1);
        std::vector<Transition> out;
        out.reserve(batch);
        for (std::size_t b = 0; b < batch; ++b) {
            out.push_back(buffer_[pick(rng)]);
        }
        return out;
    }

  private:
    std::size_t capacity_;
    std::size_t count_ = 0;
    std::vector<Transition> buffer_;
};

struct DqnConfig {
    std::size_t episodes = 500;
    std::size_t max_steps = 100;
    double gamma = 0.95;
    double learning_rate = 0.01;
    std::size_t batch_size = 16;
    double epsilon_start = 1.0;
    double epsilon_decay = 0.99;
    double epsilon_min = 0.01;
    std::size_t target_update_every = 20;  // global environment steps
    std::size_t replay_capacity = 1000;
    std::size_t test_episodes = 50;
};

struct EpisodeRecord {
    std::size_t episode = 0;  // 1-based
    double reward = 0.0;
    std::size_t steps = 0;
    double epsilon = 0.0;             // exploration rate during the episode
    double cumulative_seconds = 0.0;  // training wall clock so far
};

struct DqnMetrics {
    std::vector<EpisodeRecord> episodes;
    double test_reward = 0.0;
    double wall_seconds = 0.0;
    double circuit_seconds = 0.0;
    std::size_t circuit_evals = 0;
    std::size_t total_steps = 0;
};

namespace detail {

template <class Model>
std::vector<double> q_forward(const Model &model, int tile,
                              DqnMetrics *metrics, CircuitObserver *observer,
                              std::size_t episode, std::string_view phase) {
    const auto input = encode_for(model.input_dim(), tile);
    const auto t0 = Clock::now();
    auto q = model.forward(input, OutputMode::Raw);
    if constexpr (kExecutesCircuits<Model>) {
        if (metrics != nullptr) {
            metrics->circuit_seconds += seconds_since(t0);
            ++metrics->circuit_evals;
        }
        if (observer != nullptr && observer->wants(episode)) {
            observer->record(episode, phase, input, model.params());
        }
    }
    return q;
}

}  // namespace detail

/// Mean total reward over greedy rollouts (no exploration).
template <class Model>
double evaluate_policy(const Model &model, LakeEnv env,
                       std::size_t n_episodes = 50,
                       std::size_t max_steps = 100) {
    double total = 0.0;
    for (std::size_t e = 0; e < n_episodes; ++e) {
        int state = env.reset();
        for (std::size_t s = 0; s < max_steps; ++s) {
            const auto q =
                detail::q_forward(model, state, nullptr, nullptr, 0, "");
            const auto result =
                env.step(static_cast<Action>(argmax_lowest(q)));
            total += result.reward;
            state = result.next_state;
            if (result.done) {
                break;
            }
        }
    }
    return total / static_cast<double>(n_episodes);
}

template <class Model>
struct DqnResult {
    DqnMetrics metrics;
    Model model;
    LakeEnv env;
};

/**
 * @brief Deep Q-learning on a seed-generated lake.
 *
 * Per step: epsilon-greedy action, transition stored, and once the buffer
 * holds one batch a uniform sample trains the policy network against
 * bootstrapped targets from the frozen copy. The copy refreshes every 20
 * global environment steps; epsilon decays multiplicatively per episode.
 */
template <class Model>
DqnResult<Model> dqn_train(Model policy, const DqnConfig &config,
                           std::uint32_t seed,
                           CircuitObserver *observer = nullptr) {
    if (policy.output_dim() != 4) {
        throw std::invalid_argument("dqn_train: model must emit 4 action "
                                    "values");
    }
    const auto t_start = detail::Clock::now();
    LakeEnv env = generate_lake(seed);
    Model target = policy;
    AdamOptimizer opt(policy.param_count(), config.learning_rate);
    ReplayBuffer buffer(config.replay_capacity);
    auto action_rng = seeded_rng(seed, "dqn-action");
    auto replay_rng = seeded_rng(seed, "dqn-replay");
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> random_action(0, 3);

    DqnMetrics metrics;
    std::vector<double> grad(policy.param_count(), 0.0);
    double epsilon = config.epsilon_start;
    std::size_t global_step = 0;

    for (std::size_t episode = 1; episode <= config.episodes; ++episode) {
        int state = env.reset();
        double episode_reward = 0.0;
        std::size_t steps = 0;

        for (std::size_t s = 0; s < config.max_steps; ++s) {
            int action;
            if (coin(action_rng) < epsilon) {
                action = random_action(action_rng);
            } else {
                const auto q = detail::q_forward(policy, state, &metrics,
                                                 observer, episode, "act");
                action = static_cast<int>(argmax_lowest(q));
            }
            const auto result = env.step(static_cast<Action>(action));
            buffer.push({state, action, result.reward, result.next_state,
                         result.done});
            episode_reward += result.reward;
            state = result.next_state;
            ++steps;
            ++global_step;

            if (buffer.size() >= config.batch_size) {
                const auto batch =
                    buffer.sample(replay_rng, config.batch_size);
                std::fill(grad.begin(), grad.end(), 0.0);
                const double batch_n =
                    static_cast<double>(config.batch_size);
                for (const Transition &t : batch) {
                    double y = t.reward;
                    if (!t.done) {
                        const auto qn = detail::q_forward(
                            target, t.next_state, &metrics, observer,
                            episode, "target");
                        y += config.gamma * qn[argmax_lowest(qn)];
                    }
                    const auto input =
                        encode_for(policy.input_dim(), t.state);
                    const auto t0 = detail::Clock::now();
                    const auto ctx = policy.forward_context(input);
                    std::vector<double> dlogits(4, 0.0);
                    // mean-squared error with the conventional factor 2
                    dlogits[static_cast<std::size_t>(t.action)] =
                        2.0 *
                        (ctx.logits[static_cast<std::size_t>(t.action)] - y) /
                        batch_n;
                    policy.backward(ctx, dlogits, grad);
                    if constexpr (detail::kExecutesCircuits<Model>) {
                        metrics.circuit_seconds += detail::seconds_since(t0);
                        ++metrics.circuit_evals;
                        if (observer != nullptr &&
                            observer->wants(episode)) {
                            observer->record(episode, "train", input,
                                             policy.params());
                        }
                    }
                }
                opt.step(policy.params(), grad);
            }

            if (global_step % config.target_update_every == 0) {
                std::copy(policy.params().begin(), policy.params().end(),
                          target.params().begin());
            }
            if (result.done) {
                break;
            }
        }

        metrics.episodes.push_back({episode, episode_reward, steps, epsilon,
                                    detail::seconds_since(t_start)});
        metrics.total_steps += steps;
        epsilon = std::max(config.epsilon_min,
                           epsilon * config.epsilon_decay);
    }

    metrics.wall_seconds = detail::seconds_since(t_start);
    metrics.test_reward = evaluate_policy(policy, env, config.test_episodes,
                                          config.max_steps);
    return {std::move(metrics), std::move(policy), std::move(env)};
}

}  // namespace vqcbench
