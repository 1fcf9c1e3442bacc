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

#include "atfkit/detail/factor_table.hpp"

#include <array>
#include <map>

namespace atfkit::detail {

PairIndex index_pairs(std::span<const PositionPair> pairs) {
  PairIndex index;
  std::map<std::array<double, 3>, int> seen;
  const auto lookup = [&](const Point3& p) {
    const std::array<double, 3> key{p.x(), p.y(), p.z()};
    const auto [it, inserted] = seen.try_emplace(key, static_cast<int>(index.points.size()));
    if (inserted) {
      index.points.push_back(p);
    }
    return it->second;
  };
  index.receiver.reserve(pairs.size());
  index.source.reserve(pairs.size());
  for (const auto& q : pairs) {
    index.receiver.push_back(lookup(q.receiver()));
    index.source.push_back(lookup(q.source()));
  }
  return index;
}

FactorTable factor_table(std::span<const Point3> rows, std::span<const Point3> cols, const KernelSpec& spec,
                         bool with_derivatives) {
  const auto nr = static_cast<Eigen::Index>(rows.size());
  const auto nc = static_cast<Eigen::Index>(cols.size());
  FactorTable t;
  t.value.resize(nr, nc);
  if (with_derivatives) {
    t.d_beta.resize(nr, nc);
    t.d_gamma.resize(nr, nc);
  }
  for (Eigen::Index b = 0; b < nc; ++b) {
    for (Eigen::Index a = 0; a < nr; ++a) {
      const Eigen::Vector3d d = rows[static_cast<std::size_t>(a)] - cols[static_cast<std::size_t>(b)];
      if (with_derivatives) {
        const auto f = psi_derivatives(d, spec.params(), spec.wavenumber());
        t.value(a, b) = f.value;
        t.d_beta(a, b) = f.d_beta;
        t.d_gamma(a, b) = f.d_gamma;
      } else {
        t.value(a, b) = kernel_factor(d, spec);
      }
    }
  }
  return t;
}

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& table, const PairIndex& rows, const PairIndex& cols) {
  const auto n = static_cast<Eigen::Index>(rows.receiver.size());
  const auto m = static_cast<Eigen::Index>(cols.receiver.size());
  Eigen::MatrixXd k(n, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const int rj = cols.receiver[static_cast<std::size_t>(j)];
    const int sj = cols.source[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < n; ++i) {
      const int ri = rows.receiver[static_cast<std::size_t>(i)];
      const int si = rows.source[static_cast<std::size_t>(i)];
      k(i, j) = 0.5 * (table(ri, rj) * table(si, sj) + table(si, rj) * table(ri, sj));
    }
  }
  return k;
}

Eigen::MatrixXd kernel_matrix_derivative(const Eigen::MatrixXd& table, const Eigen::MatrixXd& d_table,
                                         const PairIndex& rows, const PairIndex& cols) {
  const auto n = static_cast<Eigen::Index>(rows.receiver.size());
  const auto m = static_cast<Eigen::Index>(cols.receiver.size());
  Eigen::MatrixXd k(n, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const int rj = cols.receiver[static_cast<std::size_t>(j)];
    const int sj = cols.source[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < n; ++i) {
      const int ri = rows.receiver[static_cast<std::size_t>(i)];
      const int si = rows.source[static_cast<std::size_t>(i)];
      k(i, j) = 0.5 * (d_table(ri, rj) * table(si, sj) + table(ri, rj) * d_table(si, sj) +
                       d_table(si, rj) * table(ri, sj) + table(si, rj) * d_table(ri, sj));
    }
  }
  return k;
}

}  // namespace atfkit::detail
