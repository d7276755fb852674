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
 * Trains the VQC-41 agent on a seed-generated lake and prints the layout,
 * the reward curve (50-episode moving average), and the greedy test reward
 * against the dynamic-programming optimum.
 *
 * Usage: frozenlake_dqn [seed] [episodes]
 */

#include <cstdio>
#include <cstdlib>
#include <vector>

#include "vqcbench/vqcbench.hpp"

int main(int argc, char **argv) {
    using namespace vqcbench;
    const std::uint32_t seed =
        argc > 1 ? static_cast<std::uint32_t>(std::atoi(argv[1])) : 0;
    DqnConfig config;
    if (argc > 2) {
        config.episodes = static_cast<std::size_t>(std::atoi(argv[2]));
    }

    const LakeEnv env = generate_lake(seed);
    std::printf("lake (seed %u), optimal return %.2f:\n", seed,
                dp_optimal_return(env));
    const char tiles[] = {'F', 'H', 'S', 'G'};  // Tile enumerator order
    for (int row = 0; row < 4; ++row) {
        std::printf("  ");
        for (int col = 0; col < 4; ++col) {
            const Tile tile =
                env.grid()[static_cast<std::size_t>(row * 4 + col)];
            std::printf("%c", tiles[static_cast<int>(tile)]);
        }
        std::printf("\n");
    }

    const ModelConfig cfg =
        vqc_config(Task::FrozenLake, EmbeddingKind::Angle, 3);
    std::printf("\ntraining %s for %zu episodes...\n",
                cfg.display_name().c_str(), config.episodes);
    const auto result =
        dqn_train(VqcModel(cfg.circuit_template(), seed), config, seed);

    std::vector<double> rewards;
    for (const EpisodeRecord &e : result.metrics.episodes) {
        rewards.push_back(e.reward);
    }
    const auto ma = moving_average(rewards);
    for (std::size_t e = 49; e < ma.size(); e += 50) {
        std::printf("  episode %4zu: moving average %+.3f, epsilon %.3f\n",
                    e + 1, ma[e], result.metrics.episodes[e].epsilon);
    }
    std::printf("\ngreedy test reward %.3f (optimum %.2f) after %.1f s; "
                "circuit share %.1f s over %zu executions\n",
                result.metrics.test_reward, dp_optimal_return(result.env),
                result.metrics.wall_seconds, result.metrics.circuit_seconds,
                result.metrics.circuit_evals);
    return 0;
}
