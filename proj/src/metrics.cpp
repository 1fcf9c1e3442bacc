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

#include "atfkit/metrics.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "atfkit/error.hpp"

namespace atfkit {

namespace {

double ratio_db(double num, double den) {
  if (num == 0.0) {
    return db_floor;
  }
  return std::max(10.0 * std::log10(num / den), db_floor);
}

}  // namespace

double nmse_db(const Eigen::VectorXcd& estimate, const Eigen::VectorXcd& truth) {
  if (estimate.size() != truth.size() || truth.size() == 0) {
    throw DomainError("nmse_db: inputs must have equal nonzero length");
  }
  const double den = truth.squaredNorm();
  if (!(den > 0.0)) {
    throw DomainError("nmse_db: ground truth is identically zero");
  }
  return ratio_db((estimate - truth).squaredNorm(), den);
}

std::vector<NsePoint> nse_field(const std::vector<Point3>& points, const Eigen::VectorXcd& estimate,
                                const Eigen::VectorXcd& truth) {
  const auto n = static_cast<Eigen::Index>(points.size());
  if (points.empty() || estimate.size() != n || truth.size() != n) {
    throw DomainError("nse_field: points, estimate and truth must have equal nonzero length");
  }
  std::vector<NsePoint> out;
  out.reserve(points.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const double den = std::norm(truth[i]);
    NsePoint p{points[static_cast<std::size_t>(i)], 0.0, den > 0.0};
    if (p.valid) {
      p.nse_db = ratio_db(std::norm(truth[i] - estimate[i]), den);
    }
    out.push_back(p);
  }
  return out;
}

std::vector<Point3> nse_slice_points(const SphericalRegion& region, std::size_t n) {
  if (n < 2) {
    throw DomainError("nse_slice_points: need at least 2 points per side");
  }
  const Point3& c = region.center();
  const double r = region.radius();
  std::vector<Point3> out;
  out.reserve(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    const double y = c.y() - r + 2.0 * r * static_cast<double>(j) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = c.x() - r + 2.0 * r * static_cast<double>(i) / static_cast<double>(n - 1);
      out.emplace_back(x, y, c.z());
    }
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_nmse_csv(std::ostream& out, const std::vector<NmseRow>& rows) {
  out << "frequency_hz,method,nmse_db\n";
  for (const auto& r : rows) {
    out << format_double(r.frequency_hz) << ',' << r.method << ',' << format_double(r.nmse_db) << '\n';
  }
}

std::vector<NmseRow> read_nmse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "frequency_hz,method,nmse_db") {
    throw FormatError("read_nmse_csv: missing or unexpected header");
  }
  std::vector<NmseRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto a = line.find(',');
    const auto b = line.find(',', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos) {
      throw FormatError("read_nmse_csv: malformed row '" + line + "'");
    }
    NmseRow r;
    try {
      r.frequency_hz = std::stod(line.substr(0, a));
      r.method = line.substr(a + 1, b - a - 1);
      r.nmse_db = std::stod(line.substr(b + 1));
    } catch (const std::exception&) {
      throw FormatError("read_nmse_csv: malformed number in '" + line + "'");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_nse_csv(std::ostream& out, const std::vector<NsePoint>& field) {
  out << "x,y,nse_db\n";
  for (const auto& p : field) {
    if (!p.valid) continue;
    out << format_double(p.point.x()) << ',' << format_double(p.point.y()) << ',' << format_double(p.nse_db) << '\n';
  }
}

}  // namespace atfkit
