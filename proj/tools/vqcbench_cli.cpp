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
 * Command-line front end for the benchmark workbench.
 *
 * Subcommands:
 *   sl          supervised sweeps (iris, wine, wdbc)
 *   rl          Q-learning sweeps (frozenlake)
 *   export-qasm rebuild archived circuits from a run directory as QASM
 *   estimate-hw join simulator/hardware timings and project training time
 */

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "vqcbench/vqcbench.hpp"

namespace {

using namespace vqcbench;

/// Parses a model id of the form nn-<depth>x<width> or vqc-{ang,amp}-l<L>.
ModelConfig config_from_id(Task task, const std::string &id) {
    if (id.rfind("nn-", 0) == 0) {
        const auto sep = id.find('x', 3);
        if (sep != std::string::npos) {
            const std::size_t depth = std::stoul(id.substr(3, sep - 3));
            const std::size_t width = std::stoul(id.substr(sep + 1));
            return nn_config(task, depth, width);
        }
    } else if (id.rfind("vqc-", 0) == 0) {
        const std::string rest = id.substr(4);
        const auto sep = rest.find("-l");
        if (sep != std::string::npos &&
            (rest.substr(0, sep) == "ang" || rest.substr(0, sep) == "amp")) {
            const EmbeddingKind emb = rest.substr(0, sep) == "ang"
                                          ? EmbeddingKind::Angle
                                          : EmbeddingKind::Amplitude;
            const std::size_t layers = std::stoul(rest.substr(sep + 2));
            return vqc_config(task, emb, layers);
        }
    }
    throw std::invalid_argument(
        "unrecognized model id '" + id +
        "' (expected nn-<depth>x<width> or vqc-{ang,amp}-l<layers>)");
}

/// Overlays a JSON configuration file onto the sweep defaults. The file
/// mirrors the hyperparameter tables: {"sl": {...}, "rl": {...}}.
void apply_config_file(const std::string &path, SweepOptions &opts) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file " + path);
    }
    const auto j = nlohmann::json::parse(in);
    if (j.contains("sl")) {
        const auto &s = j.at("sl");
        opts.sl.learning_rate = s.value("learning_rate", opts.sl.learning_rate);
        opts.sl.epochs = s.value("epochs", opts.sl.epochs);
        opts.sl.batch_size = s.value("batch_size", opts.sl.batch_size);
    }
    if (j.contains("rl")) {
        const auto &r = j.at("rl");
        opts.rl.episodes = r.value("episodes", opts.rl.episodes);
        opts.rl.max_steps = r.value("max_steps", opts.rl.max_steps);
        opts.rl.gamma = r.value("gamma", opts.rl.gamma);
        opts.rl.learning_rate = r.value("learning_rate", opts.rl.learning_rate);
        opts.rl.batch_size = r.value("batch_size", opts.rl.batch_size);
        opts.rl.epsilon_start = r.value("epsilon_start", opts.rl.epsilon_start);
        opts.rl.epsilon_decay = r.value("epsilon_decay", opts.rl.epsilon_decay);
        opts.rl.epsilon_min = r.value("epsilon_min", opts.rl.epsilon_min);
        opts.rl.target_update_every =
            r.value("target_update_every", opts.rl.target_update_every);
        opts.rl.replay_capacity =
            r.value("replay_capacity", opts.rl.replay_capacity);
        opts.rl.test_episodes = r.value("test_episodes", opts.rl.test_episodes);
    }
}

/// Options shared by the sl and rl subcommands.
struct SweepCli {
    std::string task;
    std::string family;  // empty = both
    bool grid = false;
    std::string single_id;
    std::vector<std::uint32_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::string out_dir = "runs";
    std::string data_dir = "data";
    std::string config_file;
    std::vector<std::string> pair_override;  // {nn id, vqc id}
    bool resume = false;
    std::size_t workers = 0;
    double threshold = -1.0;  // < 0 = task default
    bool shared_split = false;
    bool no_circuit_log = false;
};

void add_sweep_flags(CLI::App *cmd, SweepCli &cli) {
    cmd->add_option("--family", cli.family,
                    "Restrict the grid to one model family")
        ->check(CLI::IsMember({"nn", "vqc"}));
    auto *grid = cmd->add_flag("--grid", cli.grid,
                               "Run the full hyperparameter grid (default)");
    cmd->add_option("--single", cli.single_id,
                    "Run one model id, e.g. nn-1x9 or vqc-ang-l2")
        ->excludes(grid);
    cmd->add_option("--seeds", cli.seeds, "Seeds to run (default 0..9)")
        ->delimiter(',');
    cmd->add_option("--out-dir", cli.out_dir,
                    "Directory for run files and tables");
    cmd->add_option("--data-dir", cli.data_dir,
                    "Directory holding the dataset CSVs");
    cmd->add_option("--config", cli.config_file,
                    "JSON file overriding the hyperparameter defaults");
    cmd->add_option("--pair-override", cli.pair_override,
                    "Comparable pair to report instead of the automatic "
                    "choice: <nn id> <vqc id>")
        ->expected(2);
    cmd->add_flag("--resume", cli.resume,
                  "Skip runs whose output file is already complete");
    cmd->add_option("--workers", cli.workers,
                    "Worker threads (default: VQCBENCH_WORKERS or hardware)");
    cmd->add_option("--threshold", cli.threshold,
                    "Metric floor for pair selection (default per task)");
    cmd->add_flag("--shared-split", cli.shared_split,
                  "Reuse the seed-0 dataset split for every seed");
    cmd->add_flag("--no-circuit-log", cli.no_circuit_log,
                  "Skip circuit archiving on seed-0 VQC runs");
}

int run_sweep(const SweepCli &cli, bool rl_mode) {
    const Task task = task_from_name(cli.task);
    if (rl_mode != (task == Task::FrozenLake)) {
        std::cerr << "error: task '" << cli.task << "' belongs to the "
                  << (task == Task::FrozenLake ? "rl" : "sl")
                  << " subcommand\n";
        return 2;
    }

    SweepOptions opts;
    opts.out_dir = cli.out_dir;
    opts.data_dir = cli.data_dir;
    opts.seeds = cli.seeds;
    opts.resume = cli.resume;
    opts.per_seed_split = !cli.shared_split;
    opts.log_circuits = !cli.no_circuit_log;
    opts.workers = cli.workers;
    if (!cli.config_file.empty()) {
        apply_config_file(cli.config_file, opts);
    }

    GridSpec spec;
    if (!cli.single_id.empty()) {
        spec.task = task;
        spec.configs.push_back(config_from_id(task, cli.single_id));
    } else {
        spec = grid_for_task(task);
        if (!cli.family.empty()) {
            std::erase_if(spec.configs, [&](const ModelConfig &cfg) {
                return cfg.family != cli.family;
            });
        }
    }

    std::cout << "running " << spec.configs.size() << " config(s) x "
              << opts.seeds.size() << " seed(s) on "
              << effective_workers(opts) << " worker(s)\n";
    const SweepReport report = run_grid(spec, opts);
    std::cout << "completed " << report.completed << ", skipped "
              << report.skipped << ", failed " << report.failed << '\n';
    for (const std::string &error : report.errors) {
        std::cerr << "  " << error << '\n';
    }

    const auto runs = read_runs(opts.out_dir, task_name(task));
    if (runs.empty()) {
        std::cerr << "no readable runs in " << opts.out_dir << '\n';
        return report.failed > 0 ? 1 : 0;
    }
    const auto rows = summarize_runs(runs);
    const std::string summary =
        write_summary_csv(rows, task_name(task), opts.out_dir);
    std::cout << "summary: " << summary << '\n';

    const double threshold =
        cli.threshold >= 0.0 ? cli.threshold : task_info(task).pair_threshold;
    try {
        PairSelection pair = select_comparable_pair(rows, threshold);
        std::cout << "models at metric >= " << threshold << ":";
        for (const std::string &id : pair.qualifying) {
            std::cout << ' ' << id;
        }
        std::cout << '\n';
        if (!cli.pair_override.empty()) {
            const auto find = [&](const std::string &id) -> const SummaryRow & {
                for (const SummaryRow &row : rows) {
                    if (row.model_id == id) {
                        return row;
                    }
                }
                throw std::runtime_error("pair override id '" + id +
                                         "' has no runs");
            };
            pair.nn = find(cli.pair_override[0]);
            pair.vqc = find(cli.pair_override[1]);
        }
        std::cout << "pair: " << pair.nn.model_id << " vs "
                  << pair.vqc.model_id << " -> "
                  << write_ratio_csv(pair, task_name(task), opts.out_dir)
                  << '\n';
    } catch (const std::exception &e) {
        std::cerr << "pair selection: " << e.what() << '\n';
    }
    return report.failed > 0 ? 1 : 0;
}

int cmd_export_qasm(const std::string &run_dir, std::size_t limit) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(run_dir)) {
        std::cerr << "error: " << run_dir << " is not a directory\n";
        return 2;
    }
    const fs::path qasm_dir = fs::path(run_dir) / "qasm";
    fs::create_directories(qasm_dir);

    std::vector<std::string> run_files;
    for (const auto &entry : fs::directory_iterator(run_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            run_files.push_back(entry.path().string());
        }
    }
    std::sort(run_files.begin(), run_files.end());

    std::vector<ManifestRow> manifest;
    std::size_t archives = 0;
    for (const std::string &file : run_files) {
        nlohmann::json j;
        try {
            std::ifstream in(file);
            j = nlohmann::json::parse(in);
        } catch (const std::exception &) {
            continue;  // not a run file
        }
        if (!j.contains("circuit_archive")) {
            continue;
        }
        const CircuitArchive archive =
            archive_from_json(j.at("circuit_archive"));
        ++archives;
        const std::size_t count =
            limit == 0 ? archive.entries.size()
                       : std::min(limit, archive.entries.size());
        for (std::size_t i = 0; i < count; ++i) {
            const ConcreteCircuit circuit = concrete_circuit(archive, i);
            const std::string name = circuit.id + ".qasm";
            std::ofstream out(qasm_dir / name);
            if (!out) {
                std::cerr << "error: cannot write " << (qasm_dir / name)
                          << '\n';
                return 1;
            }
            out << emit_qasm2(circuit);
            manifest.push_back({circuit.id, circuit.task, circuit.model_id,
                                circuit.epoch, name,
                                measure_sim_seconds(circuit)});
        }
    }
    const std::string manifest_path = (qasm_dir / "manifest.csv").string();
    write_manifest(manifest, manifest_path);
    std::cout << "wrote " << manifest.size() << " circuit(s) from "
              << archives << " archive(s) to " << qasm_dir.string() << '\n'
              << "manifest: " << manifest_path << '\n';
    return 0;
}

int cmd_estimate_hw(const std::string &run_dir, const std::string &hw_csv,
                    std::string manifest_path) {
    namespace fs = std::filesystem;
    if (manifest_path.empty()) {
        manifest_path = (fs::path(run_dir) / "qasm" / "manifest.csv").string();
    }
    const auto manifest = read_manifest(manifest_path);
    const auto hw_times = read_hw_times(hw_csv);
    const auto records = match_timing_records(manifest, hw_times);
    if (records.empty()) {
        std::cerr << "error: no circuit ids shared between " << manifest_path
                  << " and " << hw_csv << '\n';
        return 1;
    }
    const double r_times = compute_ratio(records, RatioMode::MeanOfTimes);
    const double r_ratios = compute_ratio(records, RatioMode::MeanOfRatios);
    std::cout << "matched " << records.size() << " circuit(s)\n"
              << "ratio (mean of times):  " << r_times << '\n'
              << "ratio (mean of ratios): " << r_ratios << '\n';

    const auto runs = read_runs(run_dir);
    const std::string out_path =
        (fs::path(run_dir) / "hw_estimates.csv").string();
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << '\n';
        return 1;
    }
    out << "task,model_id,seed,total_s,circuit_s,"
           "estimate_mean_of_times_s,estimate_mean_of_ratios_s\n";
    char buf[256];
    for (const RunFileData &run : runs) {
        const double by_times = estimate_hw_training_time(
            run.wall_seconds, run.circuit_seconds, r_times);
        const double by_ratios = estimate_hw_training_time(
            run.wall_seconds, run.circuit_seconds, r_ratios);
        std::snprintf(buf, sizeof(buf), "%s,%s,%u,%.9g,%.9g,%.9g,%.9g",
                      run.task.c_str(), run.model_id.c_str(), run.seed,
                      run.wall_seconds, run.circuit_seconds, by_times,
                      by_ratios);
        out << buf << '\n';
    }
    std::cout << "estimates: " << out_path << '\n';
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Dense networks vs variational quantum circuits: training "
                 "benchmarks, circuit export, and hardware projection"};
    app.require_subcommand(1);

    SweepCli sl_cli;
    sl_cli.task = "iris";
    auto *sl = app.add_subcommand("sl", "Supervised-learning sweeps");
    sl->add_option("--task", sl_cli.task, "iris, wine, or wdbc")
        ->check(CLI::IsMember({"iris", "wine", "wdbc"}));
    add_sweep_flags(sl, sl_cli);

    SweepCli rl_cli;
    rl_cli.task = "frozenlake";
    auto *rl = app.add_subcommand("rl", "Reinforcement-learning sweeps");
    rl->add_option("--task", rl_cli.task, "frozenlake")
        ->check(CLI::IsMember({"frozenlake"}));
    add_sweep_flags(rl, rl_cli);

    std::string export_run_dir;
    std::size_t export_limit = 0;
    auto *exp = app.add_subcommand(
        "export-qasm", "Serialize archived circuits as OpenQASM 2.0");
    exp->add_option("--run", export_run_dir, "Run directory to scan")
        ->required();
    exp->add_option("--limit-per-archive", export_limit,
                    "Cap circuits exported per archive (0 = all)");

    std::string est_run_dir;
    std::string est_hw_csv;
    std::string est_manifest;
    auto *est = app.add_subcommand(
        "estimate-hw", "Project training times onto hardware measurements");
    est->add_option("--run", est_run_dir, "Run directory with qasm/manifest")
        ->required();
    est->add_option("--hw-times", est_hw_csv,
                    "CSV of circuit_id,hardware_seconds")
        ->required();
    est->add_option("--manifest", est_manifest,
                    "Manifest path (default <run>/qasm/manifest.csv)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sl->parsed()) {
            return run_sweep(sl_cli, false);
        }
        if (rl->parsed()) {
            return run_sweep(rl_cli, true);
        }
        if (exp->parsed()) {
            return cmd_export_qasm(export_run_dir, export_limit);
        }
        if (est->parsed()) {
            return cmd_estimate_hw(est_run_dir, est_hw_csv, est_manifest);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
