// SPDX-License-Identifier: Apache-2.0
//
// atfkit: region-to-region acoustic transfer function interpolation
// Copyright (C) 2026 The atfkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

// JSON files for datasets and fitted models, and small file helpers.
//
// Dataset file:
//   {"frequency_hz": f, "speed_of_sound": c,
//    "pairs": [[rx, ry, rz, sx, sy, sz], ...],
//    "measurements": [[re, im], ...],
//    "layout": {"sources": L, "receivers": M} or null,
//    "v0": [x, y, z]}                      (optional)
//
// Model file:
//   {"kernel_spec": {"family": "uniform" | "directional", "beta": b, "gamma": g, "v0": [...],
//                    "frequency_hz": f, "speed_of_sound": c},
//    "lambda": l, "dataset": {dataset file}, "alpha": [[re, im], ...]}

#include <filesystem>
#include <optional>
#include <string>

#include "atfkit/core.hpp"
#include "atfkit/regression.hpp"

namespace atfkit {

struct DatasetFile {
  ATFDataset dataset;
  std::optional<UnitVec3> v0;  // direction between the region centers, when recorded
};

std::string dataset_to_json(const ATFDataset& dataset, const std::optional<UnitVec3>& v0 = std::nullopt);
/// Throws FormatError on malformed input and DomainError on invalid values.
DatasetFile dataset_from_json(const std::string& text);

std::string model_to_json(const RidgeModel& model);
RidgeModel model_from_json(const std::string& text);

/// Whole-file read; throws Error when the file cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it into place, so readers
/// never observe a partial file. Creates parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace atfkit
