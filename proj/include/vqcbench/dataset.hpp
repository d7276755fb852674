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
 * CSV ingestion, min-max feature scaling, and seeded train/val/test splits.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vqcbench/rng.hpp"

namespace vqcbench {

/**
 * @brief Classification dataset with features scaled to [0,1] and disjoint
 * train/val/test index lists covering all samples.
 */
struct Dataset {
    std::string name;
    std::size_t n_samples = 0;
    std::size_t feature_dim = 0;
    std::size_t n_classes = 0;
    std::vector<double> features;  // row-major n_samples x feature_dim
    std::vector<int> labels;
    std::vector<std::size_t> train;
    std::vector<std::size_t> val;
    std::vector<std::size_t> test;

    std::span<const double> row(std::size_t i) const {
        return {features.data() + i * feature_dim, feature_dim};
    }
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
    }
    return cells;
}

}  // namespace detail

/**
 * @brief Reads a CSV with a header row, decimal feature columns, and an
 * integer class label in the final column.
 */
inline Dataset load_csv(const std::string &path, const std::string &name) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("load_csv: cannot open " + path);
    }
    Dataset ds;
    ds.name = name;
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("load_csv: empty file " + path);
    }
    const std::size_t n_columns = detail::split_csv_line(line).size();
    if (n_columns < 2) {
        throw std::runtime_error("load_csv: need at least one feature "
                                 "column and a label column in " + path);
    }
    ds.feature_dim = n_columns - 1;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != n_columns) {
            throw std::runtime_error(
                "load_csv: wrong column count at line " +
                std::to_string(line_no) + " of " + path);
        }
        for (std::size_t c = 0; c + 1 < n_columns; ++c) {
            std::size_t consumed = 0;
            const double v = std::stod(cells[c], &consumed);
            if (consumed == 0) {
                throw std::runtime_error("load_csv: bad number at line " +
                                         std::to_string(line_no));
            }
            ds.features.push_back(v);
        }
        ds.labels.push_back(std::stoi(cells.back()));
    }
    ds.n_samples = ds.labels.size();
    if (ds.n_samples == 0) {
        throw std::runtime_error("load_csv: no data rows in " + path);
    }
    const int max_label =
        *std::max_element(ds.labels.begin(), ds.labels.end());
    const int min_label =
        *std::min_element(ds.labels.begin(), ds.labels.end());
    if (min_label < 0) {
        throw std::runtime_error("load_csv: negative class label");
    }
    ds.n_classes = static_cast<std::size_t>(max_label) + 1;
    return ds;
}

/// Min-max scales every column to [0,1] in place, fit on all rows.
inline void minmax_scale(Dataset &ds) {
    for (std::size_t c = 0; c < ds.feature_dim; ++c) {
        double lo = ds.features[c];
        double hi = ds.features[c];
        for (std::size_t i = 1; i < ds.n_samples; ++i) {
            const double v = ds.features[i * ds.feature_dim + c];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const double range = hi - lo;
        for (std::size_t i = 0; i < ds.n_samples; ++i) {
            double &v = ds.features[i * ds.feature_dim + c];
            // constant columns carry no information; map them to zero
            v = range > 0.0 ? (v - lo) / range : 0.0;
        }
    }
}

/**
 * @brief Assigns a seeded shuffle split: floor(0.75 N) train, half of the
 * remainder (rounded down) validation, the rest test.
 */
inline void assign_splits(Dataset &ds, std::uint32_t split_seed) {
    std::vector<std::size_t> order(ds.n_samples);
    std::iota(order.begin(), order.end(), 0);
    auto rng = seeded_rng(split_seed, "split");
    std::shuffle(order.begin(), order.end(), rng);

    const std::size_t n_train =
        static_cast<std::size_t>(0.75 * static_cast<double>(ds.n_samples));
    const std::size_t n_val = (ds.n_samples - n_train) / 2;
    ds.train.assign(order.begin(), order.begin() + n_train);
    ds.val.assign(order.begin() + n_train, order.begin() + n_train + n_val);
    ds.test.assign(order.begin() + n_train + n_val, order.end());
}

/**
 * @brief Loads, scales, and splits a dataset. Scaling is fit on the full
 * dataset before splitting; the split is deterministic per seed.
 */
inline Dataset load_dataset(const std::string &path, const std::string &name,
                            std::uint32_t split_seed) {
    Dataset ds = load_csv(path, name);
    minmax_scale(ds);
    assign_splits(ds, split_seed);
    return ds;
}

}  // namespace vqcbench
