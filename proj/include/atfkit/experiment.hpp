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

// Experiment harness: simulated rooms, measurement layouts, fitting with each
// interpolation method, evaluation and resumable frequency sweeps.
//
// Sweep output layout under the output directory:
//   f<Hz>/train.json            noisy training dataset (direct part removed)
//   f<Hz>/eval.json             noiseless evaluation dataset (direct part removed)
//   f<Hz>/model_<method>.json   fitted model
//   f<Hz>/trace_<method>.csv    optimizer trace (directional methods)
//   f<Hz>/nmse_<method>.csv     single-row NMSE table
//   f<Hz>/nse_<method>.csv      NSE slice at the configured frequency
//   nmse.csv                    every row, in configuration order

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atfkit/core.hpp"
#include "atfkit/hyperopt.hpp"
#include "atfkit/metrics.hpp"
#include "atfkit/regression.hpp"
#include "atfkit/roomsim.hpp"
#include "atfkit/sampling.hpp"

namespace atfkit {

enum class Method { Uniform, DirectionalSqe, DirectionalTukey };

/// "uniform", "directional-sqe", "directional-tukey".
std::string_view method_name(Method m);
/// Throws DomainError for an unknown name.
Method parse_method(std::string_view name);

struct NseSettings {
  double frequency_hz = 950.0;
  std::size_t grid = 51;
};

struct ExperimentConfig {
  RoomSpec room;
  SphericalRegion source_region{Point3(0.35, 0.43, 0.29), 0.2};
  SphericalRegion receiver_region{Point3(-0.35, -0.43, -0.29), 0.2};
  std::vector<LayerSpec> layers = default_layers();
  std::vector<double> frequencies;
  std::vector<Method> methods{Method::Uniform, Method::DirectionalSqe, Method::DirectionalTukey};
  double lambda = 1e-2;
  double snr_db = 20.0;
  std::uint64_t seed = 1;  // noise seed
  double tukey_sigma = LossSpec::default_tukey_sigma;
  std::size_t eval_pairs = 9025;
  std::uint64_t eval_seed = 7;
  OptimizerConfig optimizer;
  std::optional<NseSettings> nse;
  std::filesystem::path output_dir = "results";

  /// Direction from the source region center to the receiver region center.
  [[nodiscard]] UnitVec3 v0() const { return UnitVec3::between(source_region.center(), receiver_region.center()); }
  [[nodiscard]] LossSpec loss_for(Method m) const;

  /// Throws DomainError when regions leave the room, overlap, or any value is out of range.
  void validate() const;
};

/// Parses a configuration document. Unknown keys are rejected. Relative
/// output directories are kept as written.
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ExperimentConfig& cfg);

/// Noise seed of one frequency cell.
std::uint64_t cell_seed(std::uint64_t seed, double frequency_hz);

struct SimulatedCell {
  ATFDataset train;
  ATFDataset eval;
  UnitVec3 v0;
};

/// Training grid from the two layouts (noise added to the raw ATF, then the
/// direct part removed) and the noiseless evaluation set at one frequency.
/// The noise seed is cell_seed(seed, frequency_hz).
SimulatedCell simulate(const ExperimentConfig& cfg, double frequency_hz, std::uint64_t seed);

struct FitOutcome {
  RidgeModel model;
  std::optional<OptimizationTrace> trace;  // directional methods only
};

/// Uniform: direct fit. Directional: LOO minimization with the method's loss,
/// then a fit at the optimum.
FitOutcome fit_method(const ATFDataset& train, const UnitVec3& v0, Method method, const ExperimentConfig& cfg);

/// NMSE of h_D + predict against h_D + truth over the evaluation set.
double evaluate_nmse(const RidgeModel& model, const ATFDataset& eval);

/// NSE over the configured slice of the receiver region for a source at the
/// source region center.
std::vector<NsePoint> evaluate_nse(const RidgeModel& model, const ExperimentConfig& cfg, std::size_t grid);

std::string cell_dir_name(double frequency_hz);

struct CellFailure {
  double frequency_hz = 0.0;
  std::string method;
  std::string message;
};

struct SweepReport {
  std::vector<NmseRow> rows;
  std::vector<CellFailure> failures;
};

/// Runs simulate, fit and evaluate for every (frequency, method) cell under
/// `out`, `workers` frequencies at a time. Cells whose output files exist are
/// reused. Writes out/nmse.csv with the rows of every successful cell.
SweepReport sweep(const ExperimentConfig& cfg, const std::filesystem::path& out, unsigned workers,
                  std::ostream* log = nullptr);

/// Runs one frequency cell for every method (or only `only`), with the same
/// resumable file layout as sweep.
std::vector<NmseRow> run_cell(const ExperimentConfig& cfg, double frequency_hz, const std::filesystem::path& out,
                              std::vector<CellFailure>& failures, std::optional<Method> only = std::nullopt,
                              std::ostream* log = nullptr);

}  // namespace atfkit
