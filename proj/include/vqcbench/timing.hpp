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
 * Per-circuit timing records, simulator-vs-hardware ratio computation, and
 * the extrapolation of training time onto real hardware.
 *
 * Hardware durations are never produced here; they are ingested from an
 * externally measured CSV and matched to circuits by id.
 */
#pragma once

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vqcbench/qasm.hpp"

namespace vqcbench {

/// One matched circuit timing: the same circuit on both backends.
struct TimingRecord {
    std::string circuit_id;
    double sim_seconds = 0.0;
    double hw_seconds = 0.0;
};

enum class RatioMode {
    MeanOfTimes,   // mean(hardware) / mean(simulator)
    MeanOfRatios,  // mean(hardware_i / simulator_i)
};

/// Average hardware/simulator time ratio over matched circuits.
inline double compute_ratio(const std::vector<TimingRecord> &records,
                            RatioMode mode = RatioMode::MeanOfTimes) {
    if (records.empty()) {
        throw std::invalid_argument("compute_ratio: no matched pairs");
    }
    for (const TimingRecord &r : records) {
        if (!(r.sim_seconds > 0.0) || !(r.hw_seconds > 0.0)) {
            throw std::invalid_argument("compute_ratio: times must be > 0");
        }
    }
    if (mode == RatioMode::MeanOfTimes) {
        double sim_sum = 0.0;
        double hw_sum = 0.0;
        for (const TimingRecord &r : records) {
            sim_sum += r.sim_seconds;
            hw_sum += r.hw_seconds;
        }
        return hw_sum / sim_sum;
    }
    double ratio_sum = 0.0;
    for (const TimingRecord &r : records) {
        ratio_sum += r.hw_seconds / r.sim_seconds;
    }
    return ratio_sum / static_cast<double>(records.size());
}

/**
 * @brief Projects a simulator training run onto hardware: the classical
 * share is kept and the circuit-execution share is scaled by the ratio.
 */
inline double estimate_hw_training_time(double total_train_s,
                                        double circuit_sim_s, double ratio) {
    if (circuit_sim_s < 0.0 || circuit_sim_s > total_train_s) {
        throw std::invalid_argument(
            "estimate_hw_training_time: circuit time must lie within the "
            "total training time");
    }
    return (total_train_s - circuit_sim_s) + ratio * circuit_sim_s;
}

/**
 * @brief Wall time of one simulated execution of a bound circuit,
 * including sampling the configured number of shots.
 *
 * The circuit is run repeatedly until enough wall time accumulates for a
 * stable figure; the mean per execution is returned.
 */
inline double measure_sim_seconds(const ConcreteCircuit &circuit,
                                  std::size_t min_repetitions = 3,
                                  double min_total_seconds = 0.01) {
    using Clock = std::chrono::steady_clock;
    std::mt19937 shot_rng(12345);
    std::size_t reps = 0;
    const auto t0 = Clock::now();
    double elapsed = 0.0;
    volatile std::size_t sink = 0;  // keeps sampling from being elided
    while (reps < min_repetitions || elapsed < min_total_seconds) {
        StateVector state(static_cast<int>(circuit.n_qubits));
        apply_gates_inplace(state, circuit.gates);
        const auto probs = probabilities(state);
        std::discrete_distribution<std::size_t> dist(probs.begin(),
                                                     probs.end());
        for (std::size_t s = 0; s < circuit.shots; ++s) {
            sink = sink + dist(shot_rng);
        }
        ++reps;
        elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
    }
    return elapsed / static_cast<double>(reps);
}

// ---------------------------------------------------------------------------
// External files: the exporter's manifest and the hardware-times CSV.
// ---------------------------------------------------------------------------

struct ManifestRow {
    std::string circuit_id;
    std::string task;
    std::string model_id;
    std::size_t epoch = 0;
    std::string file;
    double sim_seconds = 0.0;
};

inline void write_manifest(const std::vector<ManifestRow> &rows,
                           const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_manifest: cannot open " + path);
    }
    out << "circuit_id,task,model_id,epoch,file,sim_seconds\n";
    for (const ManifestRow &r : rows) {
        char sim[64];
        std::snprintf(sim, sizeof(sim), "%.9g", r.sim_seconds);
        out << r.circuit_id << ',' << r.task << ',' << r.model_id << ','
            << r.epoch << ',' << r.file << ',' << sim << '\n';
    }
}

inline std::vector<ManifestRow> read_manifest(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_manifest: cannot open " + path);
    }
    std::vector<ManifestRow> rows;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::stringstream ss(line);
        ManifestRow row;
        std::string epoch;
        std::string sim;
        if (!std::getline(ss, row.circuit_id, ',') ||
            !std::getline(ss, row.task, ',') ||
            !std::getline(ss, row.model_id, ',') ||
            !std::getline(ss, epoch, ',') || !std::getline(ss, row.file, ',') ||
            !std::getline(ss, sim, ',')) {
            throw std::runtime_error("read_manifest: malformed row: " + line);
        }
        row.epoch = static_cast<std::size_t>(std::stoul(epoch));
        row.sim_seconds = std::stod(sim);
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Reads the externally measured per-circuit hardware durations
/// (columns circuit_id, hardware_seconds).
inline std::map<std::string, double> read_hw_times(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_hw_times: cannot open " + path);
    }
    std::map<std::string, double> times;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::stringstream ss(line);
        std::string id;
        std::string seconds;
        if (!std::getline(ss, id, ',') || !std::getline(ss, seconds, ',')) {
            throw std::runtime_error("read_hw_times: malformed row: " + line);
        }
        times[id] = std::stod(seconds);
    }
    return times;
}

/// Joins manifest rows with hardware measurements by circuit id.
inline std::vector<TimingRecord>
match_timing_records(const std::vector<ManifestRow> &manifest,
                     const std::map<std::string, double> &hw_times) {
    std::vector<TimingRecord> records;
    for (const ManifestRow &row : manifest) {
        const auto it = hw_times.find(row.circuit_id);
        if (it != hw_times.end()) {
            records.push_back({row.circuit_id, row.sim_seconds, it->second});
        }
    }
    return records;
}

}  // namespace vqcbench
