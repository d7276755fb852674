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
 * Trains the comparable Iris pair (NN-75 and VQC-28) on one seed and
 * prints their parameter counts, accuracies, and timings side by side.
 *
 * Usage: train_iris_pair [data_dir] [seed] [epochs]
 */

#include <cstdio>
#include <cstdlib>
#include <string>

#include "vqcbench/vqcbench.hpp"

int main(int argc, char **argv) {
    using namespace vqcbench;
    const std::string data_dir = argc > 1 ? argv[1] : "data";
    const std::uint32_t seed =
        argc > 2 ? static_cast<std::uint32_t>(std::atoi(argv[2])) : 0;
    SlConfig config;
    if (argc > 3) {
        config.epochs = static_cast<std::size_t>(std::atoi(argv[3]));
    }

    const Dataset ds = load_dataset(data_dir + "/iris.csv", "iris", seed);
    std::printf("iris: %zu samples, %zu features, split %zu/%zu/%zu\n",
                ds.n_samples, ds.feature_dim, ds.train.size(), ds.val.size(),
                ds.test.size());

    const ModelConfig nn = nn_config(Task::Iris, 1, 9);
    const ModelConfig vqc = vqc_config(Task::Iris, EmbeddingKind::Angle, 2);

    const auto nn_run =
        train_sl(DenseNet(nn.nn_layer_sizes(), seed), ds, config, seed);
    const auto vqc_run =
        train_sl(VqcModel(vqc.circuit_template(), seed), ds, config, seed);

    std::printf("\n%-18s %8s %10s %10s %12s\n", "model", "params",
                "best val", "test acc", "wall (s)");
    std::printf("%-18s %8zu %10.4f %10.4f %12.3f\n",
                nn.display_name().c_str(), nn.param_count(),
                nn_run.metrics.best_val_accuracy,
                nn_run.metrics.test_accuracy, nn_run.metrics.wall_seconds);
    std::printf("%-18s %8zu %10.4f %10.4f %12.3f\n",
                vqc.display_name().c_str(), vqc.param_count(),
                vqc_run.metrics.best_val_accuracy,
                vqc_run.metrics.test_accuracy, vqc_run.metrics.wall_seconds);
    std::printf("\nparameter ratio %zu/%zu = %.3f; circuit share of VQC "
                "training: %.3f s over %zu executions\n",
                vqc.param_count(), nn.param_count(),
                static_cast<double>(vqc.param_count()) /
                    static_cast<double>(nn.param_count()),
                vqc_run.metrics.circuit_seconds,
                vqc_run.metrics.circuit_evals);
    return 0;
}
