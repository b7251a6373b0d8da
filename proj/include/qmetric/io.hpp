// Copyright 2026 The qmetric Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON files.
//
//   trajectories: {"T": 3, "trajectories": [{"start": 1, "states": [[0.0], [0.5]]}]}
//   objects:      {"objects": [[0.0, 1.0], [2.0, 3.0]]}
//
// Errors carry the line of the offending value.

#include <string>
#include <string_view>

#include "qmetric/core.hpp"

namespace qmetric {

/// Throws ParseError on malformed JSON, gaps (null states), states beyond T
/// and any other content that does not form a valid set.
TrajectorySet parse_trajectory_set(std::string_view text);
TrajectorySet load_trajectory_set(const std::string& path);

/// Writes numbers with 17 significant digits, so reading back is exact.
std::string to_json(const TrajectorySet& set);
void save_trajectory_set(const std::string& path, const TrajectorySet& set);

ObjectSet parse_object_set(std::string_view text);
std::string to_json(const ObjectSet& set);

/// An object-set file, or a trajectory file cut at time step `step`.
ObjectSet parse_objects_or_slice(std::string_view text, int step);
ObjectSet load_objects_or_slice(const std::string& path, int step);

/// Whole file as a string; ParseError if it cannot be read.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

/// 17 significant digits with a "." separator, independent of locale.
std::string format_number(double v);

}  // namespace qmetric
