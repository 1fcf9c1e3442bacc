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

// Normalized error metrics in dB: the mean square error over an evaluation
// set (NMSE) and the per-point squared error field (NSE).

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "atfkit/core.hpp"

namespace atfkit {

/// Reported in place of -inf for an exact estimate.
inline constexpr double db_floor = -300.0;

/// 10 log10(sum |est - truth|^2 / sum |truth|^2), floored at db_floor.
/// Throws DomainError for mismatched or empty inputs and an all-zero truth.
double nmse_db(const Eigen::VectorXcd& estimate, const Eigen::VectorXcd& truth);

struct NsePoint {
  Point3 point;
  double nse_db = 0.0;
  bool valid = true;  // false where the truth vanishes; such points are left out of CSV output
};

/// Per-point 10 log10(|truth - est|^2 / |truth|^2), floored at db_floor.
std::vector<NsePoint> nse_field(const std::vector<Point3>& points, const Eigen::VectorXcd& estimate,
                                const Eigen::VectorXcd& truth);

/// n x n grid over the bounding square of `region` in the plane z = center.z,
/// x varying fastest.
std::vector<Point3> nse_slice_points(const SphericalRegion& region, std::size_t n = 51);

struct EvalReport {
  double frequency_hz = 0.0;
  std::string method;
  double nmse_db = 0.0;
  std::vector<NsePoint> nse;
};

struct NmseRow {
  double frequency_hz = 0.0;
  std::string method;
  double nmse_db = 0.0;
};

/// Fixed text form of a double used by every CSV writer (shortest repr that round-trips).
std::string format_double(double v);

/// Header `frequency_hz,method,nmse_db`.
void write_nmse_csv(std::ostream& out, const std::vector<NmseRow>& rows);
std::vector<NmseRow> read_nmse_csv(std::istream& in);

/// Header `x,y,nse_db`; invalid points are skipped.
void write_nse_csv(std::ostream& out, const std::vector<NsePoint>& field);

}  // namespace atfkit
