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
 * Experiment orchestration: hyperparameter grids per task, multi-seed
 * sweeps on a bounded worker pool, one JSON file per run for resumability,
 * percentile-bootstrap confidence intervals, comparable-pair selection,
 * and CSV table emission.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "vqcbench/dataset.hpp"
#include "vqcbench/models.hpp"
#include "vqcbench/qasm.hpp"
#include "vqcbench/rl.hpp"
#include "vqcbench/training.hpp"

namespace vqcbench {

enum class Task { Iris, Wine, WDBC, FrozenLake };

inline std::string task_name(Task task) {
    switch (task) {
    case Task::Iris: return "iris";
    case Task::Wine: return "wine";
    case Task::WDBC: return "wdbc";
    case Task::FrozenLake: return "frozenlake";
    }
    throw std::invalid_argument("task_name: unknown task");
}

inline Task task_from_name(const std::string &name) {
    if (name == "iris") return Task::Iris;
    if (name == "wine") return Task::Wine;
    if (name == "wdbc") return Task::WDBC;
    if (name == "frozenlake") return Task::FrozenLake;
    throw std::invalid_argument("task_from_name: unknown task '" + name +
                                "'");
}

/// Static facts about a task: input width, output count, and the
/// accuracy threshold used for comparable-pair filtering.
struct TaskInfo {
    std::size_t feature_dim = 0;
    std::size_t n_outputs = 0;
    double pair_threshold = 0.0;
    const char *csv_file = nullptr;  // null for the RL task
};

inline TaskInfo task_info(Task task) {
    switch (task) {
    case Task::Iris: return {4, 3, 0.96, "iris.csv"};
    case Task::Wine: return {13, 3, 0.97, "wine.csv"};
    case Task::WDBC: return {30, 2, 0.96, "wdbc.csv"};
    case Task::FrozenLake: return {4, 4, 0.5, nullptr};
    }
    throw std::invalid_argument("task_info: unknown task");
}

/**
 * @brief One grid point: either a dense network (hidden layer count and
 * width) or a variational circuit (embedding and layer count).
 */
struct ModelConfig {
    Task task = Task::Iris;
    std::string family;  // "nn" or "vqc"
    std::size_t hidden_layers = 0;
    std::size_t nodes = 0;
    EmbeddingKind embedding = EmbeddingKind::Angle;
    std::size_t vqc_layers = 0;

    /// Model input width. Amplitude models on the RL task consume the
    /// 16-way one-hot state, every other combination the raw features.
    std::size_t input_dim() const {
        const TaskInfo info = task_info(task);
        if (family == "vqc" && task == Task::FrozenLake &&
            embedding == EmbeddingKind::Amplitude) {
            return 16;
        }
        return info.feature_dim;
    }

    std::size_t output_dim() const { return task_info(task).n_outputs; }

    std::vector<std::size_t> nn_layer_sizes() const {
        std::vector<std::size_t> sizes{input_dim()};
        for (std::size_t l = 0; l < hidden_layers; ++l) {
            sizes.push_back(nodes);
        }
        sizes.push_back(output_dim());
        return sizes;
    }

    CircuitTemplate circuit_template() const {
        return CircuitTemplate::make(embedding, input_dim(), vqc_layers,
                                     output_dim());
    }

    std::size_t param_count() const {
        if (family == "nn") {
            const auto sizes = nn_layer_sizes();
            std::size_t total = 0;
            for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
                total += sizes[l] * sizes[l + 1] + sizes[l + 1];
            }
            return total;
        }
        const auto tpl = circuit_template();
        return tpl.n_circuit_params() + tpl.n_outputs + 1;
    }

    /// Stable identifier used in filenames, e.g. nn-1x9 or vqc-ang-l2.
    std::string id() const {
        if (family == "nn") {
            return "nn-" + std::to_string(hidden_layers) + "x" +
                   std::to_string(nodes);
        }
        return std::string("vqc-") +
               (embedding == EmbeddingKind::Angle ? "ang" : "amp") + "-l" +
               std::to_string(vqc_layers);
    }

    /// Parameter-count name in the reporting style, e.g. NN-75 or
    /// VQC-28 (Ang, 2).
    std::string display_name() const {
        if (family == "nn") {
            return "NN-" + std::to_string(param_count());
        }
        return "VQC-" + std::to_string(param_count()) + " (" +
               (embedding == EmbeddingKind::Angle ? "Ang" : "Amp") + ", " +
               std::to_string(vqc_layers) + ")";
    }
};

inline ModelConfig nn_config(Task task, std::size_t hidden_layers,
                             std::size_t nodes) {
    ModelConfig cfg;
    cfg.task = task;
    cfg.family = "nn";
    cfg.hidden_layers = hidden_layers;
    cfg.nodes = nodes;
    return cfg;
}

inline ModelConfig vqc_config(Task task, EmbeddingKind embedding,
                              std::size_t layers) {
    ModelConfig cfg;
    cfg.task = task;
    cfg.family = "vqc";
    cfg.embedding = embedding;
    cfg.vqc_layers = layers;
    return cfg;
}

struct GridSpec {
    Task task = Task::Iris;
    std::vector<ModelConfig> configs;
};

/// The exhaustive per-task grid of model configurations.
inline GridSpec grid_for_task(Task task) {
    GridSpec spec;
    spec.task = task;
    const bool small_grid = task == Task::WDBC;
    const std::vector<std::size_t> depths =
        small_grid ? std::vector<std::size_t>{1, 2}
                   : std::vector<std::size_t>{1, 2, 3};
    const std::vector<std::size_t> widths =
        small_grid ? std::vector<std::size_t>{3, 6, 9}
                   : std::vector<std::size_t>{3, 6, 9, 12};
    for (const std::size_t d : depths) {
        for (const std::size_t w : widths) {
            spec.configs.push_back(nn_config(task, d, w));
        }
    }
    const std::vector<EmbeddingKind> embeddings =
        small_grid
            ? std::vector<EmbeddingKind>{EmbeddingKind::Amplitude}
            : std::vector<EmbeddingKind>{EmbeddingKind::Amplitude,
                                         EmbeddingKind::Angle};
    for (const EmbeddingKind e : embeddings) {
        for (std::size_t layers = 1; layers <= 6; ++layers) {
            spec.configs.push_back(vqc_config(task, e, layers));
        }
    }
    return spec;
}

/// Resolves "nn-1x9", "vqc-ang-l2", or a display name like "NN-75"
/// against the task's grid.
inline ModelConfig resolve_model(Task task, const std::string &name) {
    const GridSpec spec = grid_for_task(task);
    for (const ModelConfig &cfg : spec.configs) {
        if (cfg.id() == name) {
            return cfg;
        }
    }
    for (const ModelConfig &cfg : spec.configs) {
        const std::string display = cfg.display_name();
        if (display == name ||
            display.substr(0, display.find(' ')) == name) {
            return cfg;
        }
    }
    throw std::invalid_argument("resolve_model: no model '" + name +
                                "' in the " + task_name(task) + " grid");
}

// ---------------------------------------------------------------------------
// Bootstrap confidence intervals
// ---------------------------------------------------------------------------

struct BootstrapCi {
    double mean = 0.0;
    double low = 0.0;
    double high = 0.0;
};

/**
 * @brief Percentile bootstrap over resampled means.
 *
 * Resample indices are raw mt19937 outputs reduced modulo n; the interval
 * bounds are the floor(alpha*R) order statistics of the sorted resample
 * means. Both choices are part of the reproducibility contract.
 */
inline BootstrapCi bootstrap_ci(std::span<const double> values,
                                std::size_t resamples = 1000,
                                double level = 0.95,
                                std::uint32_t seed = 0) {
    if (values.empty()) {
        throw std::invalid_argument("bootstrap_ci: empty input");
    }
    const std::size_t n = values.size();
    double sum = 0.0;
    for (const double v : values) {
        sum += v;
    }
    BootstrapCi ci;
    ci.mean = sum / static_cast<double>(n);

    std::mt19937 rng(seed);
    std::vector<double> means(resamples);
    for (std::size_t r = 0; r < resamples; ++r) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s += values[rng() % n];
        }
        means[r] = s / static_cast<double>(n);
    }
    std::sort(means.begin(), means.end());
    const double alpha = (1.0 - level) / 2.0;
    const auto lo_idx = static_cast<std::size_t>(
        alpha * static_cast<double>(resamples));
    auto hi_idx = static_cast<std::size_t>(
        (1.0 - alpha) * static_cast<double>(resamples));
    hi_idx = std::min(hi_idx, resamples - 1);
    ci.low = means[lo_idx];
    ci.high = means[hi_idx];
    return ci;
}

// ---------------------------------------------------------------------------
// Sweep execution and persistence
// ---------------------------------------------------------------------------

struct SweepOptions {
    std::string out_dir = "runs";
    std::string data_dir = "data";
    std::vector<std::uint32_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    bool resume = false;
    bool per_seed_split = true;  // false pins every seed to the seed-0 split
    bool log_circuits = true;    // archive circuits on seed-0 VQC runs
    std::size_t workers = 0;     // 0 = VQCBENCH_WORKERS or hardware default
    SlConfig sl;
    DqnConfig rl;
};

/// Worker-pool width: explicit option, then the VQCBENCH_WORKERS
/// environment variable, then the hardware concurrency.
inline std::size_t effective_workers(const SweepOptions &opts) {
    if (opts.workers > 0) {
        return opts.workers;
    }
    if (const char *env = std::getenv("VQCBENCH_WORKERS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) {
            return static_cast<std::size_t>(parsed);
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

inline std::string run_filename(const ModelConfig &cfg, std::uint32_t seed) {
    return task_name(cfg.task) + "_" + cfg.id() + "_s" +
           std::to_string(seed) + ".json";
}

namespace detail {

inline nlohmann::ordered_json run_header_json(const ModelConfig &cfg,
                                              std::uint32_t seed) {
    nlohmann::ordered_json j;
    j["task"] = task_name(cfg.task);
    j["model_id"] = cfg.id();
    j["display_name"] = cfg.display_name();
    j["family"] = cfg.family;
    j["seed"] = seed;
    j["param_count"] = cfg.param_count();
    return j;
}

template <class Model>
nlohmann::ordered_json sl_run_json(const ModelConfig &cfg,
                                   std::uint32_t seed,
                                   const SlConfig &config,
                                   const SlResult<Model> &result,
                                   const CircuitArchive *archive) {
    auto j = run_header_json(cfg, seed);
    j["config"] = {{"learning_rate", config.learning_rate},
                   {"epochs", config.epochs},
                   {"batch_size", config.batch_size}};
    nlohmann::ordered_json epochs = nlohmann::ordered_json::array();
    for (const EpochRecord &e : result.metrics.epochs) {
        epochs.push_back({{"epoch", e.epoch},
                          {"train_loss", e.train_loss},
                          {"train_accuracy", e.train_accuracy},
                          {"val_loss", e.val_loss},
                          {"val_accuracy", e.val_accuracy}});
    }
    j["epochs"] = std::move(epochs);
    j["best_epoch"] = result.metrics.best_epoch;
    j["best_val_accuracy"] = result.metrics.best_val_accuracy;
    j["test_accuracy"] = result.metrics.test_accuracy;
    j["test_loss"] = result.metrics.test_loss;
    j["metric"] = result.metrics.test_accuracy;
    j["wall_seconds"] = result.metrics.wall_seconds;
    j["circuit_seconds"] = result.metrics.circuit_seconds;
    j["circuit_evals"] = result.metrics.circuit_evals;
    j["checkpoint"] = checkpoint_json(result.best_model);
    if (archive != nullptr) {
        j["circuit_archive"] = archive_json(*archive);
    }
    return j;
}

template <class Model>
nlohmann::ordered_json rl_run_json(const ModelConfig &cfg,
                                   std::uint32_t seed,
                                   const DqnConfig &config,
                                   const DqnResult<Model> &result,
                                   const CircuitArchive *archive) {
    auto j = run_header_json(cfg, seed);
    j["config"] = {{"episodes", config.episodes},
                   {"max_steps", config.max_steps},
                   {"gamma", config.gamma},
                   {"learning_rate", config.learning_rate},
                   {"batch_size", config.batch_size},
                   {"epsilon_start", config.epsilon_start},
                   {"epsilon_decay", config.epsilon_decay},
                   {"epsilon_min", config.epsilon_min},
                   {"target_update_every", config.target_update_every},
                   {"replay_capacity", config.replay_capacity},
                   {"test_episodes", config.test_episodes}};
    nlohmann::ordered_json episodes = nlohmann::ordered_json::array();
    std::vector<double> rewards;
    for (const EpisodeRecord &e : result.metrics.episodes) {
        episodes.push_back({{"episode", e.episode},
                            {"reward", e.reward},
                            {"steps", e.steps},
                            {"epsilon", e.epsilon},
                            {"cumulative_seconds", e.cumulative_seconds}});
        rewards.push_back(e.reward);
    }
    j["episodes"] = std::move(episodes);
    const auto ma = moving_average(rewards);
    j["final_moving_average"] = ma.empty() ? 0.0 : ma.back();
    j["test_reward"] = result.metrics.test_reward;
    j["dp_optimal_return"] = dp_optimal_return(result.env);
    j["solved"] = result.metrics.test_reward >= 0.95 - 1e-9;
    j["metric"] = result.metrics.test_reward;
    j["wall_seconds"] = result.metrics.wall_seconds;
    j["circuit_seconds"] = result.metrics.circuit_seconds;
    j["circuit_evals"] = result.metrics.circuit_evals;
    j["total_steps"] = result.metrics.total_steps;
    j["checkpoint"] = checkpoint_json(result.model);
    if (archive != nullptr) {
        j["circuit_archive"] = archive_json(*archive);
    }
    return j;
}

inline void write_json_file(const nlohmann::ordered_json &j,
                            const std::string &path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) {
            throw std::runtime_error("cannot open " + tmp);
        }
        out << j.dump(1) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace detail

/**
 * @brief Executes one run (train + persist) and returns the output path.
 *
 * Supervised tasks train with Adam/cross-entropy on the task dataset; the
 * RL task runs the Q-learning loop. Circuit archives are recorded when
 * requested (quantum models only).
 */
inline std::string execute_run(const ModelConfig &cfg, std::uint32_t seed,
                               const SweepOptions &opts) {
    const std::filesystem::path out_dir(opts.out_dir);
    std::filesystem::create_directories(out_dir);
    const std::string path = (out_dir / run_filename(cfg, seed)).string();

    const bool vqc = cfg.family == "vqc";
    const bool archive_run = opts.log_circuits && vqc && seed == 0;
    std::optional<ArchivingObserver> observer;

    if (cfg.task == Task::FrozenLake) {
        if (archive_run) {
            observer.emplace(cfg.circuit_template(), task_name(cfg.task),
                             cfg.id(), seed, opts.rl.episodes);
        }
        CircuitObserver *hook = observer ? &*observer : nullptr;
        if (vqc) {
            auto result =
                dqn_train(VqcModel(cfg.circuit_template(), seed), opts.rl,
                          seed, hook);
            const auto archive = observer ? observer->take()
                                          : CircuitArchive{};
            detail::write_json_file(
                detail::rl_run_json(cfg, seed, opts.rl, result,
                                    observer ? &archive : nullptr),
                path);
        } else {
            auto result = dqn_train(DenseNet(cfg.nn_layer_sizes(), seed),
                                    opts.rl, seed, hook);
            detail::write_json_file(
                detail::rl_run_json(cfg, seed, opts.rl, result, nullptr),
                path);
        }
        return path;
    }

    const TaskInfo info = task_info(cfg.task);
    const std::string csv =
        (std::filesystem::path(opts.data_dir) / info.csv_file).string();
    const std::uint32_t split_seed = opts.per_seed_split ? seed : 0;
    const Dataset ds = load_dataset(csv, task_name(cfg.task), split_seed);

    if (archive_run) {
        observer.emplace(cfg.circuit_template(), task_name(cfg.task),
                         cfg.id(), seed, opts.sl.epochs);
    }
    CircuitObserver *hook = observer ? &*observer : nullptr;
    if (vqc) {
        auto result = train_sl(VqcModel(cfg.circuit_template(), seed), ds,
                               opts.sl, seed, hook);
        const auto archive = observer ? observer->take() : CircuitArchive{};
        detail::write_json_file(
            detail::sl_run_json(cfg, seed, opts.sl, result,
                                observer ? &archive : nullptr),
            path);
    } else {
        auto result = train_sl(DenseNet(cfg.nn_layer_sizes(), seed), ds,
                               opts.sl, seed, nullptr);
        detail::write_json_file(
            detail::sl_run_json(cfg, seed, opts.sl, result, nullptr), path);
    }
    return path;
}

struct SweepReport {
    std::size_t completed = 0;
    std::size_t skipped = 0;
    std::size_t failed = 0;
    std::vector<std::string> errors;
};

/**
 * @brief Runs every (config, seed) job on a bounded worker pool. With
 * resume enabled, jobs whose output file already parses are skipped;
 * failures are collected per run and do not abort the sweep.
 */
inline SweepReport run_grid(const GridSpec &spec, const SweepOptions &opts) {
    struct Job {
        ModelConfig cfg;
        std::uint32_t seed;
    };
    std::vector<Job> jobs;
    for (const ModelConfig &cfg : spec.configs) {
        for (const std::uint32_t seed : opts.seeds) {
            jobs.push_back({cfg, seed});
        }
    }

    SweepReport report;
    std::mutex report_mutex;
    std::atomic<std::size_t> next{0};
    const std::size_t n_workers =
        std::min<std::size_t>(std::max<std::size_t>(effective_workers(opts),
                                                    1),
                              jobs.empty() ? 1 : jobs.size());

    const auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) {
                return;
            }
            const Job &job = jobs[i];
            const std::string path =
                (std::filesystem::path(opts.out_dir) /
                 run_filename(job.cfg, job.seed))
                    .string();
            if (opts.resume && std::filesystem::exists(path)) {
                try {
                    std::ifstream in(path);
                    const auto j = nlohmann::json::parse(in);
                    if (j.contains("metric")) {
                        std::lock_guard<std::mutex> lock(report_mutex);
                        ++report.skipped;
                        continue;
                    }
                } catch (const std::exception &) {
                    // unreadable file: fall through and rerun
                }
            }
            try {
                execute_run(job.cfg, job.seed, opts);
                std::lock_guard<std::mutex> lock(report_mutex);
                ++report.completed;
            } catch (const std::exception &e) {
                std::lock_guard<std::mutex> lock(report_mutex);
                ++report.failed;
                report.errors.push_back(run_filename(job.cfg, job.seed) +
                                        ": " + e.what());
            }
        }
    };

    std::vector<std::thread> pool;
    for (std::size_t w = 0; w + 1 < n_workers; ++w) {
        pool.emplace_back(worker);
    }
    worker();
    for (std::thread &t : pool) {
        t.join();
    }
    return report;
}

// ---------------------------------------------------------------------------
// Aggregation over persisted runs
// ---------------------------------------------------------------------------

/// The per-run numbers aggregation needs, as read back from disk.
struct RunFileData {
    std::string task;
    std::string model_id;
    std::string display_name;
    std::string family;
    std::size_t param_count = 0;
    std::uint32_t seed = 0;
    double metric = 0.0;
    double wall_seconds = 0.0;
    double circuit_seconds = 0.0;
    bool has_archive = false;
    std::string path;
};

inline RunFileData read_run_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_run_file: cannot open " + path);
    }
    const auto j = nlohmann::json::parse(in);
    RunFileData data;
    data.task = j.at("task").get<std::string>();
    data.model_id = j.at("model_id").get<std::string>();
    data.display_name = j.at("display_name").get<std::string>();
    data.family = j.at("family").get<std::string>();
    data.param_count = j.at("param_count").get<std::size_t>();
    data.seed = j.at("seed").get<std::uint32_t>();
    data.metric = j.at("metric").get<double>();
    data.wall_seconds = j.at("wall_seconds").get<double>();
    data.circuit_seconds = j.value("circuit_seconds", 0.0);
    data.has_archive = j.contains("circuit_archive");
    data.path = path;
    return data;
}

/// Loads every run file in a directory, optionally filtered by task.
inline std::vector<RunFileData> read_runs(const std::string &dir,
                                          const std::string &task_filter =
                                              "") {
    std::vector<RunFileData> runs;
    if (!std::filesystem::is_directory(dir)) {
        return runs;
    }
    std::vector<std::string> paths;
    for (const auto &entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            paths.push_back(entry.path().string());
        }
    }
    std::sort(paths.begin(), paths.end());
    for (const std::string &path : paths) {
        try {
            RunFileData data = read_run_file(path);
            if (task_filter.empty() || data.task == task_filter) {
                runs.push_back(std::move(data));
            }
        } catch (const std::exception &) {
            // non-run JSON in the directory is ignored
        }
    }
    return runs;
}

/// Aggregated view of one model over its seeds.
struct SummaryRow {
    std::string model_id;
    std::string display_name;
    std::string family;
    std::size_t param_count = 0;
    std::size_t n_seeds = 0;
    BootstrapCi metric;
    BootstrapCi train_seconds;
    double circuit_seconds_mean = 0.0;
};

inline std::vector<SummaryRow>
summarize_runs(const std::vector<RunFileData> &runs) {
    std::map<std::string, std::vector<const RunFileData *>> groups;
    for (const RunFileData &run : runs) {
        groups[run.model_id].push_back(&run);
    }
    std::vector<SummaryRow> rows;
    for (auto &[model_id, group] : groups) {
        std::sort(group.begin(), group.end(),
                  [](const RunFileData *a, const RunFileData *b) {
                      return a->seed < b->seed;
                  });
        SummaryRow row;
        row.model_id = model_id;
        row.display_name = group.front()->display_name;
        row.family = group.front()->family;
        row.param_count = group.front()->param_count;
        row.n_seeds = group.size();
        std::vector<double> metrics;
        std::vector<double> times;
        double circuit_sum = 0.0;
        for (const RunFileData *run : group) {
            metrics.push_back(run->metric);
            times.push_back(run->wall_seconds);
            circuit_sum += run->circuit_seconds;
        }
        row.metric = bootstrap_ci(metrics);
        row.train_seconds = bootstrap_ci(times);
        row.circuit_seconds_mean =
            circuit_sum / static_cast<double>(group.size());
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(),
              [](const SummaryRow &a, const SummaryRow &b) {
                  if (a.family != b.family) {
                      return a.family < b.family;
                  }
                  return a.model_id < b.model_id;
              });
    return rows;
}

// ---------------------------------------------------------------------------
// Comparable-pair selection and table emission
// ---------------------------------------------------------------------------

struct PairSelection {
    SummaryRow nn;
    SummaryRow vqc;
    std::vector<std::string> qualifying;  // every model above threshold
};

/**
 * @brief Filters models whose mean metric reaches the threshold and picks,
 * per family, the one with the lowest mean training time. The qualifying
 * list is kept so a manual override can be made from it.
 */
inline PairSelection
select_comparable_pair(const std::vector<SummaryRow> &rows,
                       double threshold) {
    PairSelection selection;
    const SummaryRow *best_nn = nullptr;
    const SummaryRow *best_vqc = nullptr;
    for (const SummaryRow &row : rows) {
        if (row.metric.mean < threshold) {
            continue;
        }
        selection.qualifying.push_back(row.model_id);
        const SummaryRow *&best =
            row.family == "nn" ? best_nn : best_vqc;
        if (best == nullptr ||
            row.train_seconds.mean < best->train_seconds.mean) {
            best = &row;
        }
    }
    if (best_nn == nullptr || best_vqc == nullptr) {
        throw std::runtime_error(
            "select_comparable_pair: no model of " +
            std::string(best_nn == nullptr ? "the NN" : "the VQC") +
            " family reaches the threshold");
    }
    selection.nn = *best_nn;
    selection.vqc = *best_vqc;
    return selection;
}

namespace detail {

inline std::string csv_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace detail

/// Writes the per-model summary CSV; returns the path.
inline std::string write_summary_csv(const std::vector<SummaryRow> &rows,
                                     const std::string &task,
                                     const std::string &out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::string path =
        (std::filesystem::path(out_dir) / ("summary_" + task + ".csv"))
            .string();
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_summary_csv: cannot open " + path);
    }
    out << "model_id,display_name,family,param_count,seeds,"
           "metric_mean,metric_ci_low,metric_ci_high,"
           "train_s_mean,train_s_ci_low,train_s_ci_high,"
           "circuit_s_mean\n";
    for (const SummaryRow &row : rows) {
        out << row.model_id << ",\"" << row.display_name << "\","
            << row.family << ',' << row.param_count << ',' << row.n_seeds
            << ',' << detail::csv_number(row.metric.mean) << ','
            << detail::csv_number(row.metric.low) << ','
            << detail::csv_number(row.metric.high) << ','
            << detail::csv_number(row.train_seconds.mean) << ','
            << detail::csv_number(row.train_seconds.low) << ','
            << detail::csv_number(row.train_seconds.high) << ','
            << detail::csv_number(row.circuit_seconds_mean) << '\n';
    }
    return path;
}

/// Writes the parameter/training-time ratio CSV for a chosen pair;
/// returns the path.
inline std::string write_ratio_csv(const PairSelection &pair,
                                   const std::string &task,
                                   const std::string &out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::string path =
        (std::filesystem::path(out_dir) / ("ratios_" + task + ".csv"))
            .string();
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_ratio_csv: cannot open " + path);
    }
    const double param_ratio =
        static_cast<double>(pair.vqc.param_count) /
        static_cast<double>(pair.nn.param_count);
    const double time_ratio =
        pair.vqc.train_seconds.mean / pair.nn.train_seconds.mean;
    out << "task,nn_model,vqc_model,nn_params,vqc_params,param_ratio,"
           "nn_train_s,vqc_train_s,train_time_ratio\n";
    out << task << ',' << pair.nn.model_id << ',' << pair.vqc.model_id
        << ',' << pair.nn.param_count << ',' << pair.vqc.param_count << ','
        << detail::csv_number(param_ratio) << ','
        << detail::csv_number(pair.nn.train_seconds.mean) << ','
        << detail::csv_number(pair.vqc.train_seconds.mean) << ','
        << detail::csv_number(time_ratio) << '\n';
    return path;
}

}  // namespace vqcbench
