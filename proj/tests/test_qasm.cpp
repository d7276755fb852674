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

#include "vqcbench/qasm.hpp"

#include "vqcbench/dataset.hpp"
#include "vqcbench/models.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace vqcbench;

namespace {

/// Archive with one hand-made entry so circuits can be rebuilt directly.
CircuitArchive one_entry_archive(const CircuitTemplate &tpl,
                                 const std::string &task,
                                 const std::string &model_id,
                                 std::uint32_t seed) {
    VqcModel model(tpl, seed);
    std::vector<double> input(tpl.feature_dim);
    for (std::size_t i = 0; i < input.size(); ++i) {
        input[i] = 0.1 + 0.8 * static_cast<double>(i) /
                             static_cast<double>(input.size());
    }
    CircuitArchive archive{tpl, task, model_id, seed, {}};
    archive.entries.push_back(
        {1, "val", input,
         std::vector<double>(model.params().begin(), model.params().end())});
    return archive;
}

double max_prob_delta(const std::vector<double> &a,
                      const std::vector<double> &b) {
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

}  // namespace

TEST_CASE("trivial circuits serialize to exact text", "[qasm]") {
    SECTION("one rotation plus measurement") {
        ConcreteCircuit c;
        c.n_qubits = 1;
        c.gates = {Gate::ry(0, 0.5)};
        c.measured = {0};
        REQUIRE(emit_qasm2(c) == "OPENQASM 2.0;\n"
                                 "include \"qelib1.inc\";\n"
                                 "qreg q[1];\n"
                                 "creg c[1];\n"
                                 "ry(0.5) q[0];\n"
                                 "measure q[0] -> c[0];\n");
    }
    SECTION("a bare cx with no classical register") {
        ConcreteCircuit c;
        c.n_qubits = 2;
        c.gates = {Gate::cnot(0, 1)};
        REQUIRE(emit_qasm2(c) == "OPENQASM 2.0;\n"
                                 "include \"qelib1.inc\";\n"
                                 "qreg q[2];\n"
                                 "cx q[0],q[1];\n");
    }
    SECTION("angles carry seventeen significant digits") {
        ConcreteCircuit c;
        c.n_qubits = 1;
        c.gates = {Gate::rx(0, M_PI)};
        const std::string text = emit_qasm2(c);
        REQUIRE(text.find("rx(3.1415926535897931) q[0];") !=
                std::string::npos);
    }
}

TEST_CASE("emission is a parse/emit fixed point", "[qasm]") {
    const auto tpl = CircuitTemplate::make(EmbeddingKind::Angle, 4, 2, 3);
    const auto archive = one_entry_archive(tpl, "iris", "vqc-ang-l2", 0);
    const ConcreteCircuit circuit = concrete_circuit(archive, 0);
    REQUIRE(circuit.gates.size() == 40);  // 2 layers x (4 + 12 + 4)

    const std::string text = emit_qasm2(circuit);
    const ConcreteCircuit parsed = parse_qasm2(text);
    REQUIRE(parsed.n_qubits == circuit.n_qubits);
    REQUIRE(parsed.gates.size() == circuit.gates.size());
    REQUIRE(parsed.measured == circuit.measured);
    REQUIRE(emit_qasm2(parsed) == text);

    // The parsed gate stream drives the simulator to the same state.
    REQUIRE(max_prob_delta(simulate_probabilities(parsed),
                           simulate_probabilities(circuit)) <= 1e-10);
}

TEST_CASE("the parser rejects malformed input", "[qasm]") {
    const std::string ok = "OPENQASM 2.0;\n"
                           "include \"qelib1.inc\";\n"
                           "qreg q[2];\n"
                           "creg c[1];\n"
                           "rx(0.25) q[0];\n"
                           "measure q[0] -> c[0];\n";
    REQUIRE_NOTHROW(parse_qasm2(ok));
    REQUIRE_THROWS_AS(parse_qasm2("OPENQASM 3.0;\nqreg q[1];\n"),
                      std::runtime_error);
    REQUIRE_THROWS_AS(parse_qasm2("qreg q[1];\n"), std::runtime_error);
    REQUIRE_THROWS_AS(
        parse_qasm2("OPENQASM 2.0;\nqreg q[1];\nh q[0];\n"),
        std::runtime_error);
    REQUIRE_THROWS_AS(
        parse_qasm2("OPENQASM 2.0;\nqreg q[1];\nrx(0.5) q[0]\n"),
        std::runtime_error);
    REQUIRE_THROWS_AS(
        parse_qasm2("OPENQASM 2.0;\nqreg q[1];\nrx(oops) q[0];\n"),
        std::runtime_error);
    REQUIRE_THROWS_AS(
        parse_qasm2("OPENQASM 2.0;\nqreg q[1];\ncx q[0];\n"),
        std::runtime_error);
    // classical bits must appear in creg order
    REQUIRE_THROWS_AS(
        parse_qasm2("OPENQASM 2.0;\nqreg q[2];\ncreg c[2];\n"
                    "measure q[0] -> c[1];\n"),
        std::runtime_error);
    REQUIRE_THROWS_AS(
        parse_qasm2("OPENQASM 2.0;\nqreg q[1];\n"
                    "measure q[0] -> c[0];\n"),
        std::runtime_error);  // creg too small
    REQUIRE_THROWS_AS(
        parse_qasm2("OPENQASM 2.0;\nqreg q[1];\ncreg c[1];\n"
                    "measure q[5] -> c[0];\n"),
        std::runtime_error);
    REQUIRE_THROWS_AS(
        parse_qasm2("OPENQASM 2.0;\nqreg q[1];\nrx(0.5) q[4];\n"),
        std::runtime_error);
}

TEST_CASE("greedy layering counts one layer per dependency step", "[qasm]") {
    SECTION("published depths for the selected circuits") {
        const auto iris =
            CircuitTemplate::make(EmbeddingKind::Angle, 4, 2, 3);
        const auto lake =
            CircuitTemplate::make(EmbeddingKind::Angle, 4, 3, 4);
        REQUIRE(circuit_depth(concrete_circuit(
                    one_entry_archive(iris, "iris", "vqc-ang-l2", 0), 0)) ==
                17);
        REQUIRE(circuit_depth(concrete_circuit(
                    one_entry_archive(lake, "frozenlake", "vqc-ang-l3", 0),
                    0)) == 25);
    }
    SECTION("hand-counted small cases") {
        ConcreteCircuit c;
        c.n_qubits = 2;
        c.gates = {Gate::rx(0, 0.1)};
        REQUIRE(circuit_depth(c) == 1);  // no measurement layer
        c.measured = {0};
        REQUIRE(circuit_depth(c) == 2);
        // Parallel rotations share a layer; the cx serializes them.
        c.gates = {Gate::rx(0, 0.1), Gate::rx(1, 0.2), Gate::cnot(0, 1),
                   Gate::rz(1, 0.3)};
        c.measured.clear();
        REQUIRE(circuit_depth(c) == 3);
        c.measured = {0, 1};
        REQUIRE(circuit_depth(c) == 4);
        const ConcreteCircuit empty;
        REQUIRE(circuit_depth(empty) == 0);
    }
}

TEST_CASE("archived circuits match the model's quantum outputs", "[qasm]") {
    const auto tpl = CircuitTemplate::make(EmbeddingKind::Angle, 4, 2, 3);
    const auto archive = one_entry_archive(tpl, "iris", "vqc-ang-l2", 7);
    const ArchiveEntry &entry = archive.entries[0];
    const ConcreteCircuit circuit = concrete_circuit(archive, 0);
    REQUIRE(circuit.id == "iris_vqc-ang-l2_e1_i0");
    REQUIRE(circuit.shots == 1024);
    REQUIRE(circuit.measured == std::vector<std::size_t>{0, 1, 2});

    // Rebuild the model from the recorded parameters and compare its raw
    // logits against expectations taken on the parsed text's statevector.
    VqcModel model(tpl);
    std::copy(entry.raw_params.begin(), entry.raw_params.end(),
              model.params().begin());
    const auto logits = model.forward(entry.input, OutputMode::Raw);

    const ConcreteCircuit parsed = parse_qasm2(emit_qasm2(circuit));
    StateVector state(static_cast<int>(parsed.n_qubits));
    apply_gates_inplace(state, parsed.gates);
    const std::size_t n_theta = tpl.n_circuit_params();
    const double scale = entry.raw_params[n_theta + tpl.n_outputs];
    for (std::size_t k = 0; k < tpl.n_outputs; ++k) {
        const double bias = entry.raw_params[n_theta + k];
        const double z =
            pauli_z_expectation(state, static_cast<int>(parsed.measured[k]));
        REQUIRE(std::abs(scale * z + bias - logits[k]) <= 1e-10);
    }
}

TEST_CASE("training archives rebuild deterministically", "[qasm]") {
    const Dataset ds =
        load_dataset(testutil::data_path("iris.csv"), "iris", 0);
    const auto tpl = CircuitTemplate::make(EmbeddingKind::Angle, 4, 2, 3);
    SlConfig config;
    config.epochs = 2;

    const auto run = [&] {
        ArchivingObserver observer(tpl, "iris", "vqc-ang-l2", 0,
                                   config.epochs);
        train_sl(VqcModel(tpl, 0u), ds, config, 0, &observer);
        return observer.take();
    };
    const CircuitArchive a = run();
    const CircuitArchive b = run();

    // Two epochs means both are sampled; every evaluation is archived.
    REQUIRE(a.entries.size() == 2 * (112 + 19));
    REQUIRE(a.entries.size() == b.entries.size());
    REQUIRE(a.entries.front().epoch == 1);
    REQUIRE(a.entries.front().phase == "train");
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        REQUIRE(a.entries[i].input == b.entries[i].input);
        REQUIRE(a.entries[i].raw_params == b.entries[i].raw_params);
    }

    // Identically indexed circuits emit identical text.
    const std::string qa = emit_qasm2(concrete_circuit(a, 5));
    const std::string qb = emit_qasm2(concrete_circuit(b, 5));
    REQUIRE(qa == qb);
    REQUIRE(concrete_circuit(a, 5).id == "iris_vqc-ang-l2_e1_i5");

    SECTION("the archive survives a JSON round-trip") {
        const auto j = archive_json(a);
        const CircuitArchive restored = archive_from_json(j);
        REQUIRE(restored.task == a.task);
        REQUIRE(restored.model_id == a.model_id);
        REQUIRE(restored.seed == a.seed);
        REQUIRE(restored.tpl.n_qubits == a.tpl.n_qubits);
        REQUIRE(restored.tpl.embedding == a.tpl.embedding);
        REQUIRE(restored.entries.size() == a.entries.size());
        for (std::size_t i = 0; i < a.entries.size(); i += 37) {
            REQUIRE(restored.entries[i].epoch == a.entries[i].epoch);
            REQUIRE(restored.entries[i].phase == a.entries[i].phase);
            REQUIRE(restored.entries[i].input == a.entries[i].input);
            REQUIRE(restored.entries[i].raw_params ==
                    a.entries[i].raw_params);
        }
        REQUIRE(emit_qasm2(concrete_circuit(restored, 11)) ==
                emit_qasm2(concrete_circuit(a, 11)));
    }

    SECTION("a truncated parameter record is rejected") {
        CircuitArchive broken = a;
        broken.entries[0].raw_params.resize(3);
        REQUIRE_THROWS_AS(concrete_circuit(broken, 0), std::runtime_error);
    }
}
