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
 * OpenQASM 2 serialization of fully bound circuits, a minimal parser for
 * the emitted subset, depth accounting, and the training-time circuit
 * archive the exporter draws from.
 *
 * Emission is a fixed point: parsing an emitted file and emitting again
 * reproduces the bytes, because angles are printed with 17 significant
 * digits and re-read exactly.
 */
#pragma once

#include <cctype>
#include <cstdio>
#include <cstdint>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vqcbench/circuit.hpp"
#include "vqcbench/gradient.hpp"
#include "vqcbench/statevector.hpp"
#include "vqcbench/training.hpp"

namespace vqcbench {

/// One circuit with every angle bound to a concrete value.
struct ConcreteCircuit {
    std::size_t n_qubits = 0;
    std::vector<Gate> gates;
    std::vector<std::size_t> measured;  // qubit indices, creg order
    std::string id;
    std::string task;
    std::string model_id;
    std::size_t epoch = 0;
    std::size_t shots = 1024;
};

namespace detail {

inline std::string format_angle(double angle) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", angle);
    return buf;
}

}  // namespace detail

/// Serializes to OpenQASM 2 with qelib1 gates (rx, ry, rz, cx).
inline std::string emit_qasm2(const ConcreteCircuit &circuit) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << circuit.n_qubits << "];\n";
    if (!circuit.measured.empty()) {
        out << "creg c[" << circuit.measured.size() << "];\n";
    }
    for (const Gate &gate : circuit.gates) {
        switch (gate.kind) {
        case GateKind::RX:
            out << "rx(" << detail::format_angle(gate.angle) << ") q["
                << gate.target << "];\n";
            break;
        case GateKind::RY:
            out << "ry(" << detail::format_angle(gate.angle) << ") q["
                << gate.target << "];\n";
            break;
        case GateKind::RZ:
            out << "rz(" << detail::format_angle(gate.angle) << ") q["
                << gate.target << "];\n";
            break;
        case GateKind::CNOT:
            out << "cx q[" << gate.control << "],q[" << gate.target
                << "];\n";
            break;
        default:
            throw std::invalid_argument("emit_qasm2: unsupported gate kind");
        }
    }
    for (std::size_t j = 0; j < circuit.measured.size(); ++j) {
        out << "measure q[" << circuit.measured[j] << "] -> c[" << j
            << "];\n";
    }
    return out.str();
}

namespace detail {

inline void skip_spaces(std::string_view s, std::size_t &pos) {
    while (pos < s.size() &&
           std::isspace(static_cast<unsigned char>(s[pos]))) {
        ++pos;
    }
}

inline bool consume(std::string_view s, std::size_t &pos,
                    std::string_view token) {
    skip_spaces(s, pos);
    if (s.substr(pos, token.size()) == token) {
        pos += token.size();
        return true;
    }
    return false;
}

inline std::size_t parse_index(std::string_view s, std::size_t &pos,
                               char reg) {
    skip_spaces(s, pos);
    if (pos >= s.size() || s[pos] != reg) {
        throw std::runtime_error("parse_qasm2: expected register " +
                                 std::string(1, reg));
    }
    ++pos;
    if (pos >= s.size() || s[pos] != '[') {
        throw std::runtime_error("parse_qasm2: expected '['");
    }
    ++pos;
    std::size_t value = 0;
    bool any = false;
    while (pos < s.size() &&
           std::isdigit(static_cast<unsigned char>(s[pos]))) {
        value = value * 10 + static_cast<std::size_t>(s[pos] - '0');
        ++pos;
        any = true;
    }
    if (!any || pos >= s.size() || s[pos] != ']') {
        throw std::runtime_error("parse_qasm2: malformed register index");
    }
    ++pos;
    return value;
}

inline double parse_angle(std::string_view s, std::size_t &pos) {
    skip_spaces(s, pos);
    if (pos >= s.size() || s[pos] != '(') {
        throw std::runtime_error("parse_qasm2: expected '('");
    }
    ++pos;
    const std::size_t close = s.find(')', pos);
    if (close == std::string_view::npos) {
        throw std::runtime_error("parse_qasm2: unterminated angle");
    }
    const std::string text(s.substr(pos, close - pos));
    std::size_t consumed = 0;
    double angle = 0.0;
    try {
        angle = std::stod(text, &consumed);
    } catch (const std::exception &) {
        consumed = 0;  // unconvertible or out of range
    }
    if (consumed != text.size() || text.empty()) {
        throw std::runtime_error("parse_qasm2: bad angle literal '" + text +
                                 "'");
    }
    pos = close + 1;
    return angle;
}

}  // namespace detail

/**
 * @brief Parses the emitted OpenQASM 2 subset: header, one qreg, one
 * optional creg, rx/ry/rz/cx statements, and measurements.
 */
inline ConcreteCircuit parse_qasm2(std::string_view text) {
    ConcreteCircuit circuit;
    std::size_t n_creg = 0;
    bool saw_header = false;
    bool saw_qreg = false;
    std::istringstream lines{std::string(text)};
    std::string raw;
    while (std::getline(lines, raw)) {
        std::string_view line(raw);
        if (const auto comment = line.find("//");
            comment != std::string_view::npos) {
            line = line.substr(0, comment);
        }
        std::size_t pos = 0;
        detail::skip_spaces(line, pos);
        if (pos == line.size()) {
            continue;
        }
        if (detail::consume(line, pos, "OPENQASM")) {
            if (!detail::consume(line, pos, "2.0")) {
                throw std::runtime_error("parse_qasm2: unsupported version");
            }
            saw_header = true;
        } else if (detail::consume(line, pos, "include")) {
            continue;  // qelib1.inc is implied
        } else if (detail::consume(line, pos, "qreg")) {
            circuit.n_qubits = detail::parse_index(line, pos, 'q');
            saw_qreg = true;
        } else if (detail::consume(line, pos, "creg")) {
            n_creg = detail::parse_index(line, pos, 'c');
        } else if (detail::consume(line, pos, "rx")) {
            const double angle = detail::parse_angle(line, pos);
            const auto q = detail::parse_index(line, pos, 'q');
            circuit.gates.push_back(Gate::rx(static_cast<int>(q), angle));
        } else if (detail::consume(line, pos, "ry")) {
            const double angle = detail::parse_angle(line, pos);
            const auto q = detail::parse_index(line, pos, 'q');
            circuit.gates.push_back(Gate::ry(static_cast<int>(q), angle));
        } else if (detail::consume(line, pos, "rz")) {
            const double angle = detail::parse_angle(line, pos);
            const auto q = detail::parse_index(line, pos, 'q');
            circuit.gates.push_back(Gate::rz(static_cast<int>(q), angle));
        } else if (detail::consume(line, pos, "cx")) {
            const auto control = detail::parse_index(line, pos, 'q');
            if (!detail::consume(line, pos, ",")) {
                throw std::runtime_error("parse_qasm2: cx needs two qubits");
            }
            const auto target = detail::parse_index(line, pos, 'q');
            circuit.gates.push_back(Gate::cnot(static_cast<int>(control),
                                               static_cast<int>(target)));
        } else if (detail::consume(line, pos, "measure")) {
            const auto q = detail::parse_index(line, pos, 'q');
            if (!detail::consume(line, pos, "->")) {
                throw std::runtime_error("parse_qasm2: measure needs ->");
            }
            const auto c = detail::parse_index(line, pos, 'c');
            if (c != circuit.measured.size()) {
                throw std::runtime_error(
                    "parse_qasm2: classical bits must appear in order");
            }
            circuit.measured.push_back(q);
        } else {
            throw std::runtime_error("parse_qasm2: unsupported statement: " +
                                     raw);
        }
        if (!detail::consume(line, pos, ";")) {
            throw std::runtime_error("parse_qasm2: missing ';' in: " + raw);
        }
        detail::skip_spaces(line, pos);
        if (pos != line.size()) {
            throw std::runtime_error("parse_qasm2: trailing characters in: " +
                                     raw);
        }
    }
    if (!saw_header || !saw_qreg) {
        throw std::runtime_error("parse_qasm2: missing header or qreg");
    }
    if (n_creg < circuit.measured.size()) {
        throw std::runtime_error("parse_qasm2: creg too small");
    }
    for (const auto q : circuit.measured) {
        if (q >= circuit.n_qubits) {
            throw std::runtime_error("parse_qasm2: measured qubit out of "
                                     "range");
        }
    }
    for (const Gate &g : circuit.gates) {
        if (g.target < 0 ||
            static_cast<std::size_t>(g.target) >= circuit.n_qubits ||
            (g.kind == GateKind::CNOT &&
             (g.control < 0 ||
              static_cast<std::size_t>(g.control) >= circuit.n_qubits))) {
            throw std::runtime_error("parse_qasm2: gate qubit out of range");
        }
    }
    return circuit;
}

/**
 * @brief Greedy-layering depth: each gate lands in the earliest layer
 * after every gate sharing one of its qubits, and measurement adds one
 * final layer when present.
 */
inline std::size_t circuit_depth(const ConcreteCircuit &circuit) {
    std::vector<std::size_t> qubit_layer(circuit.n_qubits, 0);
    std::size_t depth = 0;
    for (const Gate &gate : circuit.gates) {
        const auto t = static_cast<std::size_t>(gate.target);
        std::size_t layer = qubit_layer[t] + 1;
        if (gate.kind == GateKind::CNOT) {
            const auto c = static_cast<std::size_t>(gate.control);
            layer = std::max(layer, qubit_layer[c] + 1);
            qubit_layer[c] = layer;
        }
        qubit_layer[t] = layer;
        depth = std::max(depth, layer);
    }
    return circuit.measured.empty() ? depth : depth + 1;
}

/// Re-executes a bound circuit from |0...0> and returns basis
/// probabilities; used to check emitted text against the simulator.
inline std::vector<double> simulate_probabilities(
    const ConcreteCircuit &circuit) {
    StateVector state(static_cast<int>(circuit.n_qubits));
    apply_gates_inplace(state, circuit.gates);
    return probabilities(state);
}

// ---------------------------------------------------------------------------
// Circuit archive: the compact (input, parameters) record of every circuit
// evaluation captured at the sampled epochs/episodes of a training run.
// Concrete circuits are rebuilt from the shared template on demand.
// ---------------------------------------------------------------------------

struct ArchiveEntry {
    std::size_t epoch = 0;
    std::string phase;
    std::vector<double> input;
    std::vector<double> raw_params;  // full flat model parameters
};

struct CircuitArchive {
    CircuitTemplate tpl;
    std::string task;
    std::string model_id;
    std::uint32_t seed = 0;
    std::vector<ArchiveEntry> entries;
};

/// Observer that records evaluations at five evenly spaced sample points.
class ArchivingObserver final : public CircuitObserver {
  public:
    ArchivingObserver(CircuitTemplate tpl, std::string task,
                      std::string model_id, std::uint32_t seed,
                      std::size_t total_epochs)
        : archive_{tpl, std::move(task), std::move(model_id), seed, {}},
          points_(sample_points(total_epochs)) {}

    bool wants(std::size_t epoch) const override {
        return std::find(points_.begin(), points_.end(), epoch) !=
               points_.end();
    }

    void record(std::size_t epoch, std::string_view phase,
                std::span<const double> input,
                std::span<const double> raw_params) override {
        archive_.entries.push_back(
            {epoch, std::string(phase),
             std::vector<double>(input.begin(), input.end()),
             std::vector<double>(raw_params.begin(), raw_params.end())});
    }

    const CircuitArchive &archive() const { return archive_; }
    CircuitArchive take() { return std::move(archive_); }

  private:
    CircuitArchive archive_;
    std::vector<std::size_t> points_;
};

/// Rebuilds the fully bound circuit for one archive entry.
inline ConcreteCircuit concrete_circuit(const CircuitArchive &archive,
                                        std::size_t index) {
    const ArchiveEntry &entry = archive.entries[index];
    const CircuitTemplate &tpl = archive.tpl;
    const std::size_t n_theta = tpl.n_circuit_params();
    if (entry.raw_params.size() < n_theta) {
        throw std::runtime_error("concrete_circuit: parameter record too "
                                 "short");
    }
    const auto remap = remap_angles(
        std::span<const double>(entry.raw_params.data(), n_theta));
    const CircuitProgram prog =
        build_circuit(tpl, remap.angles, entry.input);

    ConcreteCircuit circuit;
    circuit.n_qubits = tpl.n_qubits;
    circuit.gates = prog.gates;
    for (std::size_t k = 0; k < tpl.n_outputs; ++k) {
        circuit.measured.push_back(k);
    }
    circuit.task = archive.task;
    circuit.model_id = archive.model_id;
    circuit.epoch = entry.epoch;
    circuit.id = archive.task + "_" + archive.model_id + "_e" +
                 std::to_string(entry.epoch) + "_i" + std::to_string(index);
    return circuit;
}

inline nlohmann::ordered_json archive_json(const CircuitArchive &archive) {
    nlohmann::ordered_json j;
    j["embedding"] = to_string(archive.tpl.embedding);
    j["feature_dim"] = archive.tpl.feature_dim;
    j["n_qubits"] = archive.tpl.n_qubits;
    j["n_layers"] = archive.tpl.n_layers;
    j["n_outputs"] = archive.tpl.n_outputs;
    j["task"] = archive.task;
    j["model_id"] = archive.model_id;
    j["seed"] = archive.seed;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const ArchiveEntry &e : archive.entries) {
        nlohmann::ordered_json entry;
        entry["epoch"] = e.epoch;
        entry["phase"] = e.phase;
        entry["input"] = e.input;
        entry["params"] = e.raw_params;
        entries.push_back(std::move(entry));
    }
    j["entries"] = std::move(entries);
    return j;
}

inline CircuitArchive archive_from_json(const nlohmann::json &j) {
    const std::string embedding = j.at("embedding").get<std::string>();
    CircuitArchive archive{
        CircuitTemplate::make(embedding == "angle" ? EmbeddingKind::Angle
                                                   : EmbeddingKind::Amplitude,
                              j.at("feature_dim").get<std::size_t>(),
                              j.at("n_layers").get<std::size_t>(),
                              j.at("n_outputs").get<std::size_t>()),
        j.at("task").get<std::string>(),
        j.at("model_id").get<std::string>(),
        j.at("seed").get<std::uint32_t>(),
        {}};
    for (const auto &e : j.at("entries")) {
        archive.entries.push_back(
            {e.at("epoch").get<std::size_t>(),
             e.at("phase").get<std::string>(),
             e.at("input").get<std::vector<double>>(),
             e.at("params").get<std::vector<double>>()});
    }
    return archive;
}

}  // namespace vqcbench
