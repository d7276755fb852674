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
 * Convenience umbrella for the whole library.
 */
#pragma once

#include "vqcbench/circuit.hpp"
#include "vqcbench/dataset.hpp"
#include "vqcbench/gradient.hpp"
#include "vqcbench/harness.hpp"
#include "vqcbench/models.hpp"
#include "vqcbench/mottonen.hpp"
#include "vqcbench/optimizer.hpp"
#include "vqcbench/qasm.hpp"
#include "vqcbench/rl.hpp"
#include "vqcbench/rng.hpp"
#include "vqcbench/statevector.hpp"
#include "vqcbench/timing.hpp"
#include "vqcbench/training.hpp"
