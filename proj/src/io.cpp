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

#include "atfkit/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "atfkit/error.hpp"

namespace atfkit {

using nlohmann::json;

namespace {

json point_json(const Point3& p) { return json::array({p.x(), p.y(), p.z()}); }

Point3 point_from(const json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw FormatError("expected a 3-vector");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json dataset_json(const ATFDataset& d, const std::optional<UnitVec3>& v0) {
  json pairs = json::array();
  for (const auto& q : d.pairs()) {
    pairs.push_back({q.receiver().x(), q.receiver().y(), q.receiver().z(), q.source().x(), q.source().y(),
                     q.source().z()});
  }
  json meas = json::array();
  for (Eigen::Index i = 0; i < d.measurements().size(); ++i) {
    meas.push_back({d.measurements()[i].real(), d.measurements()[i].imag()});
  }
  json out;
  out["frequency_hz"] = d.wavenumber().frequency_hz();
  out["speed_of_sound"] = d.wavenumber().speed_of_sound();
  out["pairs"] = std::move(pairs);
  out["measurements"] = std::move(meas);
  if (d.layout()) {
    out["layout"] = {{"sources", d.layout()->sources}, {"receivers", d.layout()->receivers}};
  } else {
    out["layout"] = nullptr;
  }
  if (v0) {
    out["v0"] = point_json(v0->vec());
  }
  return out;
}

Eigen::VectorXcd complex_vector_from(const json& j, const char* what) {
  if (!j.is_array()) {
    throw FormatError(std::string(what) + " must be an array");
  }
  Eigen::VectorXcd out(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    if (!e.is_array() || e.size() != 2) {
      throw FormatError(std::string(what) + " entries must be [re, im]");
    }
    out[static_cast<Eigen::Index>(i)] = Complex(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

json complex_vector_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back({v[i].real(), v[i].imag()});
  }
  return out;
}

DatasetFile dataset_from(const json& j) {
  const WavenumberSpec k(j.at("frequency_hz").get<double>(), j.at("speed_of_sound").get<double>());
  std::vector<PositionPair> pairs;
  for (const auto& p : j.at("pairs")) {
    if (!p.is_array() || p.size() != 6) {
      throw FormatError("dataset: pairs entries must have 6 coordinates");
    }
    pairs.emplace_back(Point3(p[0].get<double>(), p[1].get<double>(), p[2].get<double>()),
                       Point3(p[3].get<double>(), p[4].get<double>(), p[5].get<double>()));
  }
  std::optional<GridLayout> layout;
  if (j.contains("layout") && !j.at("layout").is_null()) {
    const auto& l = j.at("layout");
    layout = GridLayout{l.at("sources").get<std::size_t>(), l.at("receivers").get<std::size_t>()};
  }
  std::optional<UnitVec3> v0;
  if (j.contains("v0")) {
    v0 = UnitVec3(point_from(j.at("v0")));
  }
  return {ATFDataset(std::move(pairs), complex_vector_from(j.at("measurements"), "measurements"), k, layout), v0};
}

template <class F>
auto parse_guarded(const std::string& text, const char* what, F&& f) {
  try {
    return f(json::parse(text));
  } catch (const json::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string dataset_to_json(const ATFDataset& dataset, const std::optional<UnitVec3>& v0) {
  return dataset_json(dataset, v0).dump() + "\n";
}

DatasetFile dataset_from_json(const std::string& text) {
  return parse_guarded(text, "dataset_from_json", [](const json& j) { return dataset_from(j); });
}

std::string model_to_json(const RidgeModel& model) {
  const auto& spec = model.spec();
  json ks;
  ks["family"] = spec.is_directional() ? "directional" : "uniform";
  if (spec.is_directional()) {
    ks["beta"] = spec.params().beta();
    ks["gamma"] = spec.params().gamma();
    ks["v0"] = point_json(spec.params().v0().vec());
  }
  ks["frequency_hz"] = spec.wavenumber().frequency_hz();
  ks["speed_of_sound"] = spec.wavenumber().speed_of_sound();
  json out;
  out["kernel_spec"] = std::move(ks);
  out["lambda"] = model.lambda();
  out["dataset"] = dataset_json(model.dataset(), std::nullopt);
  out["alpha"] = complex_vector_json(model.alpha());
  return out.dump() + "\n";
}

RidgeModel model_from_json(const std::string& text) {
  return parse_guarded(text, "model_from_json", [](const json& j) {
    const auto& ks = j.at("kernel_spec");
    const WavenumberSpec k(ks.at("frequency_hz").get<double>(), ks.at("speed_of_sound").get<double>());
    const auto family = ks.at("family").get<std::string>();
    const auto spec = [&] {
      if (family == "uniform") {
        return KernelSpec::uniform(k);
      }
      if (family != "directional") {
        throw FormatError("model_from_json: unknown kernel family '" + family + "'");
      }
      return KernelSpec::directional(DirectionalWeightParams(ks.at("beta").get<double>(), ks.at("gamma").get<double>(),
                                                             UnitVec3(point_from(ks.at("v0")))),
                                     k);
    }();
    auto data = dataset_from(j.at("dataset"));
    return RidgeModel(std::move(data.dataset), spec, j.at("lambda").get<double>(),
                      complex_vector_from(j.at("alpha"), "alpha"));
  });
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("cannot write " + tmp.string());
    }
    out << content;
    if (!out.flush()) {
      throw Error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace atfkit
