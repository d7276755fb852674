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
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace vqcbench {

/// FNV-1a, used to derive independent named RNG streams from one run seed.
inline std::uint32_t fnv1a(std::string_view text) {
    std::uint32_t h = 2166136261u;
    for (const char c : text) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 16777619u;
    }
    return h;
}

/**
 * @brief Deterministic generator for stream `tag` under run seed `seed`.
 *
 * Distinct tags (init, shuffle, layout, ...) draw from decoupled streams so
 * adding draws to one stage never perturbs another.
 */
inline std::mt19937 seeded_rng(std::uint32_t seed, std::string_view tag) {
    std::seed_seq seq{seed, fnv1a(tag)};
    return std::mt19937(seq);
}

}  // namespace vqcbench
