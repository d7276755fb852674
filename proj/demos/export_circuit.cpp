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
 * Binds one freshly initialized Iris circuit to a sample input and prints
 * its OpenQASM 2.0 form, depth, and simulated output distribution.
 *
 * Usage: export_circuit [seed]
 */

#include <cstdio>
#include <cstdlib>
#include <vector>

#include "vqcbench/vqcbench.hpp"

int main(int argc, char **argv) {
    using namespace vqcbench;
    const std::uint32_t seed =
        argc > 1 ? static_cast<std::uint32_t>(std::atoi(argv[1])) : 0;

    const auto tpl = CircuitTemplate::make(EmbeddingKind::Angle, 4, 2, 3);
    VqcModel model(tpl, seed);
    const std::vector<double> input{0.2, 0.4, 0.6, 0.8};

    CircuitArchive archive{tpl, "iris", "vqc-ang-l2", seed, {}};
    archive.entries.push_back(
        {1, "demo", input,
         std::vector<double>(model.params().begin(), model.params().end())});
    const ConcreteCircuit circuit = concrete_circuit(archive, 0);

    std::printf("%s", emit_qasm2(circuit).c_str());
    std::printf("\n// id %s, %zu gates, depth %zu (measurement included)\n",
                circuit.id.c_str(), circuit.gates.size(),
                circuit_depth(circuit));
    const auto probs = simulate_probabilities(circuit);
    std::printf("// basis-state probabilities:\n");
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] > 1e-6) {
            std::printf("//   |%zu%zu%zu%zu>  %.6f\n", (i >> 3) & 1,
                        (i >> 2) & 1, (i >> 1) & 1, i & 1, probs[i]);
        }
    }
    return 0;
}
