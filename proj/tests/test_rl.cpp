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

#include "vqcbench/rl.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <map>
#include <queue>
#include <vector>

using namespace vqcbench;

namespace {

// Movement oracle independent of LakeEnv::step.
int oracle_move(int state, int action) {
    int row = state / 4;
    int col = state % 4;
    if (action == 0) col = std::max(0, col - 1);
    if (action == 1) row = std::min(3, row + 1);
    if (action == 2) col = std::min(3, col + 1);
    if (action == 3) row = std::max(0, row - 1);
    return row * 4 + col;
}

// BFS over safe tiles returning an action sequence start to goal.
std::vector<Action> oracle_shortest_actions(const std::array<Tile, 16> &grid) {
    std::array<int, 16> parent{};
    std::array<int, 16> via{};
    parent.fill(-2);
    parent[0] = -1;
    std::queue<int> frontier;
    frontier.push(0);
    while (!frontier.empty()) {
        const int tile = frontier.front();
        frontier.pop();
        if (tile == 15) {
            break;
        }
        for (int a = 0; a < 4; ++a) {
            const int next = oracle_move(tile, a);
            if (next == tile || parent[next] != -2 ||
                grid[static_cast<std::size_t>(next)] == Tile::Hole) {
                continue;
            }
            parent[next] = tile;
            via[next] = a;
            frontier.push(next);
        }
    }
    REQUIRE(parent[15] != -2);
    std::vector<Action> actions;
    for (int tile = 15; tile != 0; tile = parent[tile]) {
        actions.push_back(static_cast<Action>(via[tile]));
    }
    std::reverse(actions.begin(), actions.end());
    return actions;
}

// Greedy tabular stub exercising evaluate_policy without a network.
struct TabularQ {
    std::array<std::array<double, 4>, 16> q{};

    std::size_t input_dim() const { return 4; }
    std::size_t output_dim() const { return 4; }
    std::size_t param_count() const { return 0; }
    std::span<double> params() { return {}; }

    std::vector<double> forward(std::span<const double> input,
                                OutputMode) const {
        int tile = 0;
        for (int b = 0; b < 4; ++b) {
            tile = tile * 2 +
                   (input[static_cast<std::size_t>(b)] > 0.5 ? 1 : 0);
        }
        const auto &row = q[static_cast<std::size_t>(tile)];
        return {row.begin(), row.end()};
    }
};

// Finite-horizon value iteration; a second opinion against dqn policies.
TabularQ oracle_tabular_q(const LakeEnv &env) {
    std::array<double, 16> value{};
    for (int iter = 0; iter < 100; ++iter) {
        std::array<double, 16> next{};
        for (int s = 0; s < 16; ++s) {
            const Tile tile = env.grid()[static_cast<std::size_t>(s)];
            if (tile == Tile::Hole || tile == Tile::Goal) {
                continue;
            }
            double best = -1e300;
            for (int a = 0; a < 4; ++a) {
                const int sp = oracle_move(s, a);
                const Tile dest = env.grid()[static_cast<std::size_t>(sp)];
                double q = kStepReward + value[static_cast<std::size_t>(sp)];
                if (dest == Tile::Goal) {
                    q = kGoalReward;
                } else if (dest == Tile::Hole) {
                    q = kHoleReward;
                }
                best = std::max(best, q);
            }
            next[static_cast<std::size_t>(s)] = best;
        }
        value = next;
    }
    TabularQ stub;
    for (int s = 0; s < 16; ++s) {
        for (int a = 0; a < 4; ++a) {
            const int sp = oracle_move(s, a);
            const Tile dest = env.grid()[static_cast<std::size_t>(sp)];
            double q = kStepReward + value[static_cast<std::size_t>(sp)];
            if (dest == Tile::Goal) {
                q = kGoalReward;
            } else if (dest == Tile::Hole) {
                q = kHoleReward;
            }
            stub.q[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)] =
                q;
        }
    }
    return stub;
}

std::array<Tile, 16> plain_grid() {
    std::array<Tile, 16> grid{};
    grid.fill(Tile::Frozen);
    grid[0] = Tile::Start;
    grid[15] = Tile::Goal;
    return grid;
}

}  // namespace

TEST_CASE("lake generation is deterministic with a six-move solution",
          "[rl]") {
    for (std::uint32_t seed = 0; seed < 20; ++seed) {
        const LakeEnv a = generate_lake(seed);
        const LakeEnv b = generate_lake(seed);
        REQUIRE(a.grid() == b.grid());
        REQUIRE(a.grid()[0] == Tile::Start);
        REQUIRE(a.grid()[15] == Tile::Goal);
        std::size_t holes = 0;
        for (const Tile t : a.grid()) {
            holes += t == Tile::Hole ? 1 : 0;
        }
        REQUIRE(holes == 4);
        REQUIRE(bfs_shortest_path(a.grid()) == 6);
        REQUIRE(dp_optimal_return(a) == Catch::Approx(0.95).margin(1e-12));
    }
    REQUIRE(generate_lake(0).grid() != generate_lake(1).grid());
}

TEST_CASE("the shortest path earns the optimal return", "[rl]") {
    for (std::uint32_t seed : {0u, 3u, 7u}) {
        LakeEnv env = generate_lake(seed);
        const auto actions = oracle_shortest_actions(env.grid());
        REQUIRE(actions.size() == 6);
        env.reset();
        double total = 0.0;
        for (const Action a : actions) {
            const auto result = env.step(a);
            total += result.reward;
        }
        REQUIRE(env.done());
        REQUIRE(total == Catch::Approx(0.95).margin(1e-12));
    }
}

TEST_CASE("terminal rewards and episode-end guard", "[rl]") {
    auto grid = plain_grid();
    grid[1] = Tile::Hole;

    SECTION("falling in a hole ends the episode at -0.2") {
        LakeEnv env(grid, 0);
        env.reset();
        const auto result = env.step(Action::Right);
        REQUIRE(result.reward == Catch::Approx(-0.2));
        REQUIRE(result.done);
        REQUIRE(env.done());
        REQUIRE_THROWS_AS(env.step(Action::Left), std::logic_error);
    }

    SECTION("walking into the wall forever only accrues step penalties") {
        LakeEnv env(grid, 0);
        env.reset();
        double total = 0.0;
        for (int s = 0; s < 100; ++s) {
            const auto result = env.step(Action::Left);
            REQUIRE(result.next_state == 0);
            REQUIRE_FALSE(result.done);
            total += result.reward;
        }
        REQUIRE(total == Catch::Approx(-1.0).margin(1e-9));
    }

    SECTION("stepping onto the goal pays 1.0 in place of the penalty") {
        auto open = plain_grid();
        LakeEnv env(open, 0);
        env.reset();
        for (int i = 0; i < 3; ++i) {
            env.step(Action::Right);
        }
        env.step(Action::Down);
        env.step(Action::Down);
        const auto result = env.step(Action::Down);
        REQUIRE(result.next_state == 15);
        REQUIRE(result.reward == 1.0);
        REQUIRE(result.done);
    }
}

TEST_CASE("state encodings", "[rl]") {
    REQUIRE(encode_state(0) == std::array<double, 4>{0, 0, 0, 0});
    REQUIRE(encode_state(15) == std::array<double, 4>{1, 1, 1, 1});
    REQUIRE(encode_state(6) == std::array<double, 4>{0, 1, 1, 0});
    REQUIRE_THROWS_AS(encode_state(16), std::invalid_argument);
    REQUIRE_THROWS_AS(encode_state(-1), std::invalid_argument);

    REQUIRE(encode_for(4, 6) == std::vector<double>{0, 1, 1, 0});
    const auto one_hot = encode_for(16, 3);
    REQUIRE(one_hot.size() == 16);
    for (std::size_t i = 0; i < 16; ++i) {
        REQUIRE(one_hot[i] == (i == 3 ? 1.0 : 0.0));
    }
    REQUIRE_THROWS_AS(encode_for(5, 0), std::invalid_argument);
}

TEST_CASE("moving average over a trailing window", "[rl]") {
    const std::vector<double> values{1, 2, 3, 4};
    REQUIRE(moving_average(values, 2) ==
            std::vector<double>{1.0, 1.5, 2.5, 3.5});
    REQUIRE(moving_average(values, 10) ==
            std::vector<double>{1.0, 1.5, 2.0, 2.5});
    const std::vector<double> constant(120, 0.7);
    for (const double v : moving_average(constant, 50)) {
        REQUIRE(v == Catch::Approx(0.7).margin(1e-12));
    }
}

TEST_CASE("replay buffer ring semantics", "[rl]") {
    ReplayBuffer buffer(10);
    REQUIRE(buffer.capacity() == 10);
    for (int i = 0; i < 25; ++i) {
        buffer.push({i, 0, 0.0, 0, false});
    }
    REQUIRE(buffer.size() == 10);
    REQUIRE(buffer.inserted() == 25);
    // Slot j holds the newest transition whose insertion index is j mod 10.
    for (std::size_t j = 0; j < 10; ++j) {
        const int expected = j < 5 ? 20 + static_cast<int>(j)
                                   : 10 + static_cast<int>(j);
        REQUIRE(buffer.at(j).state == expected);
    }

    SECTION("sampling is with replacement and seeded") {
        std::mt19937 a(7);
        std::mt19937 b(7);
        const auto sa = buffer.sample(a, 100);
        const auto sb = buffer.sample(b, 100);
        REQUIRE(sa.size() == 100);  // more draws than stored entries
        for (std::size_t i = 0; i < sa.size(); ++i) {
            REQUIRE(sa[i].state == sb[i].state);
        }
    }

    SECTION("sampling an empty buffer is rejected") {
        ReplayBuffer empty(4);
        std::mt19937 rng(0);
        REQUIRE_THROWS_AS(empty.sample(rng, 1), std::logic_error);
    }
}

TEST_CASE("epsilon decays multiplicatively to the floor", "[rl]") {
    DqnConfig config;  // 500 episodes, decay 0.99, floor 0.01
    const auto r = dqn_train(DenseNet({4, 4, 4}, 0u), config, 0);
    REQUIRE(r.metrics.episodes.size() == 500);
    for (const EpisodeRecord &e : r.metrics.episodes) {
        if (e.episode <= 459) {
            const double expected =
                std::pow(0.99, static_cast<double>(e.episode - 1));
            REQUIRE(std::abs(e.epsilon - expected) <= 1e-12);
            REQUIRE(e.epsilon > 0.01);
        } else {
            REQUIRE(e.epsilon == 0.01);
        }
    }
    // Cumulative timing is nondecreasing and totals are consistent.
    std::size_t steps = 0;
    double last = 0.0;
    for (const EpisodeRecord &e : r.metrics.episodes) {
        REQUIRE(e.cumulative_seconds >= last);
        last = e.cumulative_seconds;
        steps += e.steps;
    }
    REQUIRE(steps == r.metrics.total_steps);
}

TEST_CASE("dp optimal return equals the fixed shortest-path value", "[rl]") {
    const LakeEnv env = generate_lake(11);
    REQUIRE(dp_optimal_return(env) == Catch::Approx(0.95).margin(1e-12));
    // The in-test value iteration agrees move for move.
    const TabularQ stub = oracle_tabular_q(env);
    double best = -1e300;
    for (double q : stub.q[0]) {
        best = std::max(best, q);
    }
    REQUIRE(best == Catch::Approx(dp_optimal_return(env)).margin(1e-12));
}

TEST_CASE("evaluate_policy on tabular stubs", "[rl]") {
    const LakeEnv env = generate_lake(5);

    SECTION("the value-iteration policy earns exactly 0.95") {
        const TabularQ optimal = oracle_tabular_q(env);
        REQUIRE(evaluate_policy(optimal, env, 50) ==
                Catch::Approx(0.95).margin(1e-12));
    }

    SECTION("a wall-walker accrues the full step penalty every episode") {
        TabularQ walker;
        for (auto &row : walker.q) {
            row = {1.0, 0.0, 0.0, 0.0};  // always Left: never leaves start
        }
        REQUIRE(evaluate_policy(walker, env, 3) ==
                Catch::Approx(-1.0).margin(1e-9));
    }
}

TEST_CASE("dqn training is deterministic and bounded", "[rl]") {
    DqnConfig config;
    config.episodes = 40;
    config.test_episodes = 5;

    const auto a = dqn_train(DenseNet({4, 6, 4}, 1u), config, 3);
    const auto b = dqn_train(DenseNet({4, 6, 4}, 1u), config, 3);
    REQUIRE(a.metrics.episodes.size() == 40);
    for (std::size_t e = 0; e < 40; ++e) {
        REQUIRE(a.metrics.episodes[e].reward == b.metrics.episodes[e].reward);
        REQUIRE(a.metrics.episodes[e].steps == b.metrics.episodes[e].steps);
        // Worst case: 99 step penalties then a hole; best: the 6-move path.
        REQUIRE(a.metrics.episodes[e].reward >= -1.19 - 1e-9);
        REQUIRE(a.metrics.episodes[e].reward <= 0.95 + 1e-9);
        REQUIRE(a.metrics.episodes[e].steps >= 1);
        REQUIRE(a.metrics.episodes[e].steps <= 100);
    }
    REQUIRE(a.metrics.test_reward == b.metrics.test_reward);
    for (std::size_t i = 0; i < a.model.param_count(); ++i) {
        REQUIRE(a.model.params()[i] == b.model.params()[i]);
    }
    REQUIRE(a.env.grid() == b.env.grid());
}

TEST_CASE("gamma zero still produces a well-formed run", "[rl]") {
    DqnConfig config;
    config.episodes = 15;
    config.gamma = 0.0;
    config.test_episodes = 3;
    const auto r = dqn_train(DenseNet({4, 5, 4}, 0u), config, 1);
    REQUIRE(r.metrics.episodes.size() == 15);
    REQUIRE(r.metrics.test_reward >= -1.19 - 1e-9);
    REQUIRE(r.metrics.test_reward <= 0.95 + 1e-9);
    for (const double p : r.model.params()) {
        REQUIRE(std::isfinite(p));
    }
}

TEST_CASE("models that do not emit four action values are rejected",
          "[rl]") {
    DqnConfig config;
    config.episodes = 1;
    REQUIRE_THROWS_AS(dqn_train(DenseNet({4, 5, 3}, 0u), config, 0),
                      std::invalid_argument);
}

namespace {

/// Observer that keeps every recorded phase/parameter pair.
class PhaseRecorder final : public CircuitObserver {
  public:
    bool wants(std::size_t) const override { return true; }
    void record(std::size_t, std::string_view phase,
                std::span<const double>,
                std::span<const double> raw_params) override {
        entries.emplace_back(std::string(phase),
                             std::vector<double>(raw_params.begin(),
                                                 raw_params.end()));
    }
    std::vector<std::pair<std::string, std::vector<double>>> entries;
};

}  // namespace

TEST_CASE("the target network only refreshes every twenty steps", "[rl]") {
    DqnConfig config;
    config.episodes = 8;
    config.max_steps = 15;
    config.batch_size = 4;
    config.test_episodes = 1;

    const auto tpl = CircuitTemplate::make(EmbeddingKind::Angle, 4, 1, 4);
    PhaseRecorder recorder;
    const auto r = dqn_train(VqcModel(tpl, 0u), config, 2, &recorder);

    std::size_t target_changes = 0;
    std::size_t target_records = 0;
    const std::vector<double> *last = nullptr;
    bool policy_changed = false;
    const std::vector<double> *first_train = nullptr;
    for (const auto &[phase, params] : recorder.entries) {
        if (phase == "target") {
            ++target_records;
            if (last != nullptr && *last != params) {
                ++target_changes;
            }
            last = &params;
        } else if (phase == "train") {
            if (first_train == nullptr) {
                first_train = &params;
            } else if (*first_train != params) {
                policy_changed = true;
            }
        }
    }
    REQUIRE(target_records > 0);
    REQUIRE(policy_changed);
    // The policy updates every trained step, so distinct target parameter
    // vectors bound the number of copies: at most one per 20 global steps.
    REQUIRE(target_changes <= r.metrics.total_steps / 20);
    if (r.metrics.total_steps >= 40) {
        REQUIRE(target_changes >= 1);
    }
}
