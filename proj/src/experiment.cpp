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

#include "atfkit/experiment.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "atfkit/error.hpp"
#include "atfkit/io.hpp"

namespace atfkit {

using nlohmann::json;

namespace {

std::mutex log_mutex;

void log_line(std::ostream* log, const std::string& line) {
  if (log == nullptr) return;
  const std::lock_guard lock(log_mutex);
  *log << line << '\n' << std::flush;
}

void check_keys(const json& j, const char* where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) {
    throw FormatError(std::string("config: ") + where + " must be an object");
  }
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* a : allowed) {
      known = known || item.key() == a;
    }
    if (!known) {
      throw FormatError(std::string("config: unknown key '") + item.key() + "' in " + where);
    }
  }
}

Point3 vec3(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) {
    throw FormatError(std::string("config: ") + what + " must be a 3-vector");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json vec3_json(const Point3& p) { return json::array({p.x(), p.y(), p.z()}); }

SphericalRegion region_from(const json& j, const char* where) {
  check_keys(j, where, {"center", "radius"});
  return {vec3(j.at("center"), "region center"), j.at("radius").get<double>()};
}

json region_json(const SphericalRegion& r) { return {{"center", vec3_json(r.center())}, {"radius", r.radius()}}; }

RoomSpec room_from(const json& j) {
  check_keys(j, "room", {"dims", "t60", "reflection", "speed_of_sound", "max_order", "origin"});
  const Eigen::Vector3d dims = vec3(j.at("dims"), "room dims");
  const double c = j.value("speed_of_sound", default_speed_of_sound);
  const int max_order = j.value("max_order", 40);
  RoomOrigin origin = RoomOrigin::Center;
  if (j.contains("origin")) {
    const auto o = j.at("origin").get<std::string>();
    if (o == "corner") {
      origin = RoomOrigin::Corner;
    } else if (o != "center") {
      throw FormatError("config: room origin must be \"center\" or \"corner\"");
    }
  }
  if (j.contains("t60") == j.contains("reflection")) {
    throw FormatError("config: room needs exactly one of \"t60\" and \"reflection\"");
  }
  if (j.contains("t60")) {
    return RoomSpec::with_t60(dims, j.at("t60").get<double>(), c, max_order, origin);
  }
  RoomSpec room;
  room.dims = dims;
  const auto& r = j.at("reflection");
  if (r.is_number()) {
    room.reflection.fill(r.get<double>());
  } else if (r.is_array() && r.size() == 6) {
    for (std::size_t i = 0; i < 6; ++i) room.reflection[i] = r[i].get<double>();
  } else {
    throw FormatError("config: room reflection must be a number or a list of 6");
  }
  room.speed_of_sound = c;
  room.max_order = max_order;
  room.origin = origin;
  room.validate();
  return room;
}

std::vector<double> frequencies_from(const json& j) {
  std::vector<double> out;
  if (j.is_array()) {
    for (const auto& f : j) out.push_back(f.get<double>());
    return out;
  }
  check_keys(j, "frequencies", {"start", "stop", "step"});
  const double start = j.at("start").get<double>();
  const double stop = j.at("stop").get<double>();
  const double step = j.at("step").get<double>();
  if (!(step > 0.0) || !(stop >= start)) {
    throw FormatError("config: frequency range needs step > 0 and stop >= start");
  }
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

OptimizerConfig optimizer_from(const json& j) {
  check_keys(j, "optimizer", {"init_beta", "init_gamma", "step_init", "step_min", "step_max", "eta_plus", "eta_minus",
                              "max_iters", "grad_tolerance"});
  OptimizerConfig o;
  o.init_beta = j.value("init_beta", o.init_beta);
  o.init_gamma = j.value("init_gamma", o.init_gamma);
  o.step_init = j.value("step_init", o.step_init);
  o.step_min = j.value("step_min", o.step_min);
  o.step_max = j.value("step_max", o.step_max);
  o.eta_plus = j.value("eta_plus", o.eta_plus);
  o.eta_minus = j.value("eta_minus", o.eta_minus);
  o.max_iters = j.value("max_iters", o.max_iters);
  o.grad_tolerance = j.value("grad_tolerance", o.grad_tolerance);
  o.validate();
  return o;
}

json optimizer_json(const OptimizerConfig& o) {
  return {{"init_beta", o.init_beta},   {"init_gamma", o.init_gamma}, {"step_init", o.step_init},
          {"step_min", o.step_min},     {"step_max", o.step_max},     {"eta_plus", o.eta_plus},
          {"eta_minus", o.eta_minus},   {"max_iters", o.max_iters},   {"grad_tolerance", o.grad_tolerance}};
}

bool region_in_room(const SphericalRegion& r, const RoomSpec& room) {
  const Point3 c = room.to_corner(r.center());
  return (c.array() - r.radius() > 0.0).all() && (c.array() + r.radius() < room.dims.array()).all();
}

Eigen::VectorXcd direct_vector(std::span<const PositionPair> pairs, const WavenumberSpec& k) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    out[static_cast<Eigen::Index>(n)] = green_function(pairs[n], k);
  }
  return out;
}

bool same_frequency(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

std::string nmse_table(const std::vector<NmseRow>& rows) {
  std::ostringstream ss;
  write_nmse_csv(ss, rows);
  return ss.str();
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::Uniform:
      return "uniform";
    case Method::DirectionalSqe:
      return "directional-sqe";
    case Method::DirectionalTukey:
      return "directional-tukey";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::Uniform, Method::DirectionalSqe, Method::DirectionalTukey}) {
    if (name == method_name(m)) return m;
  }
  throw DomainError("unknown method '" + std::string(name) +
                    "' (expected uniform, directional-sqe or directional-tukey)");
}

LossSpec ExperimentConfig::loss_for(Method m) const {
  return m == Method::DirectionalTukey ? LossSpec::tukey(tukey_sigma) : LossSpec::sqe();
}

void ExperimentConfig::validate() const {
  room.validate();
  if (!region_in_room(source_region, room) || !region_in_room(receiver_region, room)) {
    throw DomainError("config: both regions must lie strictly inside the room");
  }
  if ((source_region.center() - receiver_region.center()).norm() <=
      source_region.radius() + receiver_region.radius()) {
    throw DomainError("config: source and receiver regions overlap");
  }
  if (frequencies.empty() || methods.empty()) {
    throw DomainError("config: at least one frequency and one method are required");
  }
  for (double f : frequencies) {
    if (!(f > 0.0) || !std::isfinite(f)) throw DomainError("config: frequencies must be positive");
  }
  if (!(lambda > 0.0)) throw DomainError("config: lambda must be positive");
  if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity()) {
    throw DomainError("config: snr_db must be a number or null");
  }
  if (!(tukey_sigma > 0.0)) throw DomainError("config: tukey_sigma must be positive");
  const auto a = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(eval_pairs))));
  if (eval_pairs == 0 || a * a != eval_pairs) throw DomainError("config: eval n_pairs must be a perfect square");
  optimizer.validate();
  if (nse && nse->grid < 2) throw DomainError("config: nse grid must be at least 2");
}

ExperimentConfig config_from_json(const std::string& text) {
  try {
    const json j = json::parse(text, nullptr, true, true);
    check_keys(j, "top level", {"room", "regions", "layout", "frequencies", "methods", "lambda", "noise",
                                "tukey_sigma", "eval", "optimizer", "nse", "output_dir", "description"});
    ExperimentConfig cfg;
    cfg.room = room_from(j.at("room"));
    if (j.contains("regions")) {
      const auto& r = j.at("regions");
      check_keys(r, "regions", {"source", "receiver"});
      cfg.source_region = region_from(r.at("source"), "regions.source");
      cfg.receiver_region = region_from(r.at("receiver"), "regions.receiver");
    }
    if (j.contains("layout")) {
      const auto& l = j.at("layout");
      check_keys(l, "layout", {"layers"});
      cfg.layers.clear();
      for (const auto& layer : l.at("layers")) {
        check_keys(layer, "layout.layers", {"radius_fraction", "t"});
        cfg.layers.push_back({layer.at("radius_fraction").get<double>(), layer.at("t").get<int>()});
      }
    }
    cfg.frequencies = frequencies_from(j.at("frequencies"));
    if (j.contains("methods")) {
      cfg.methods.clear();
      for (const auto& m : j.at("methods")) cfg.methods.push_back(parse_method(m.get<std::string>()));
    }
    cfg.lambda = j.value("lambda", cfg.lambda);
    if (j.contains("noise")) {
      const auto& n = j.at("noise");
      check_keys(n, "noise", {"snr_db", "seed"});
      if (n.contains("snr_db")) {
        cfg.snr_db = n.at("snr_db").is_null() ? std::numeric_limits<double>::infinity() : n.at("snr_db").get<double>();
      }
      cfg.seed = n.value("seed", cfg.seed);
    }
    cfg.tukey_sigma = j.value("tukey_sigma", cfg.tukey_sigma);
    if (j.contains("eval")) {
      const auto& e = j.at("eval");
      check_keys(e, "eval", {"n_pairs", "seed"});
      cfg.eval_pairs = e.value("n_pairs", cfg.eval_pairs);
      cfg.eval_seed = e.value("seed", cfg.eval_seed);
    }
    if (j.contains("optimizer")) cfg.optimizer = optimizer_from(j.at("optimizer"));
    if (j.contains("nse") && !j.at("nse").is_null()) {
      const auto& n = j.at("nse");
      check_keys(n, "nse", {"frequency_hz", "grid"});
      NseSettings s;
      s.frequency_hz = n.value("frequency_hz", s.frequency_hz);
      s.grid = n.value("grid", s.grid);
      cfg.nse = s;
    }
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) { return config_from_json(read_text_file(path)); }

std::string config_to_json(const ExperimentConfig& cfg) {
  json room;
  room["dims"] = vec3_json(cfg.room.dims);
  if (cfg.room.target_t60) {
    room["t60"] = *cfg.room.target_t60;
  } else {
    room["reflection"] = cfg.room.reflection;
  }
  room["speed_of_sound"] = cfg.room.speed_of_sound;
  room["max_order"] = cfg.room.max_order;
  room["origin"] = cfg.room.origin == RoomOrigin::Center ? "center" : "corner";
  json layers = json::array();
  for (const auto& l : cfg.layers) layers.push_back({{"radius_fraction", l.radius_fraction}, {"t", l.t}});
  json methods = json::array();
  for (Method m : cfg.methods) methods.push_back(std::string(method_name(m)));
  json j;
  j["room"] = room;
  j["regions"] = {{"source", region_json(cfg.source_region)}, {"receiver", region_json(cfg.receiver_region)}};
  j["layout"] = {{"layers", layers}};
  j["frequencies"] = cfg.frequencies;
  j["methods"] = methods;
  j["lambda"] = cfg.lambda;
  j["noise"] = {{"snr_db", std::isfinite(cfg.snr_db) ? json(cfg.snr_db) : json(nullptr)}, {"seed", cfg.seed}};
  j["tukey_sigma"] = cfg.tukey_sigma;
  j["eval"] = {{"n_pairs", cfg.eval_pairs}, {"seed", cfg.eval_seed}};
  j["optimizer"] = optimizer_json(cfg.optimizer);
  j["nse"] = cfg.nse ? json{{"frequency_hz", cfg.nse->frequency_hz}, {"grid", cfg.nse->grid}} : json(nullptr);
  j["output_dir"] = cfg.output_dir.string();
  return j.dump(2) + "\n";
}

std::uint64_t cell_seed(std::uint64_t seed, double frequency_hz) {
  return splitmix64(seed ^ static_cast<std::uint64_t>(std::llround(frequency_hz * 1000.0)));
}

SimulatedCell simulate(const ExperimentConfig& cfg, double frequency_hz, std::uint64_t seed) {
  cfg.validate();
  const WavenumberSpec k(frequency_hz, cfg.room.speed_of_sound);
  const auto receivers = build_layout(cfg.receiver_region, cfg.layers);
  const auto sources = build_layout(cfg.source_region, cfg.layers);
  auto pairs = grid_pairs(receivers.points(), sources.points());
  const GridLayout layout{sources.size(), receivers.size()};
  const Eigen::VectorXcd raw = ism_atf(cfg.room, pairs, k);
  const Eigen::VectorXcd noisy = add_noise(raw, NoiseSpec{cfg.snr_db, cell_seed(seed, frequency_hz)});
  ATFDataset train = strip_direct(std::move(pairs), noisy, k, layout);

  auto eval_pairs = eval_grid(cfg.receiver_region, cfg.source_region, cfg.eval_pairs, cfg.eval_seed);
  const Eigen::VectorXcd eval_raw = ism_atf(cfg.room, eval_pairs, k);
  ATFDataset eval = strip_direct(std::move(eval_pairs), eval_raw, k);
  return {std::move(train), std::move(eval), cfg.v0()};
}

FitOutcome fit_method(const ATFDataset& train, const UnitVec3& v0, Method method, const ExperimentConfig& cfg) {
  const auto& k = train.wavenumber();
  if (method == Method::Uniform) {
    return {fit(train, KernelSpec::uniform(k), cfg.lambda), std::nullopt};
  }
  auto result = optimize(train, k, v0, cfg.lambda, cfg.loss_for(method), cfg.optimizer);
  auto model = fit(train, KernelSpec::directional(result.params, k), cfg.lambda);
  return {std::move(model), std::move(result.trace)};
}

double evaluate_nmse(const RidgeModel& model, const ATFDataset& eval) {
  if (!same_frequency(model.spec().wavenumber().frequency_hz(), eval.wavenumber().frequency_hz())) {
    throw DomainError("evaluate: model and evaluation set have different frequencies");
  }
  const Eigen::VectorXcd direct = direct_vector(eval.pairs(), eval.wavenumber());
  const Eigen::VectorXcd estimate = predict(model, eval.pairs());
  return nmse_db(estimate + direct, eval.measurements() + direct);
}

std::vector<NsePoint> evaluate_nse(const RidgeModel& model, const ExperimentConfig& cfg, std::size_t grid) {
  const auto& k = model.spec().wavenumber();
  const auto points = nse_slice_points(cfg.receiver_region, grid);
  std::vector<PositionPair> pairs;
  pairs.reserve(points.size());
  for (const auto& p : points) pairs.emplace_back(p, cfg.source_region.center());
  const Eigen::VectorXcd truth = ism_atf(cfg.room, pairs, k);
  const Eigen::VectorXcd estimate = predict(model, pairs) + direct_vector(pairs, k);
  return nse_field(points, estimate, truth);
}

std::string cell_dir_name(double frequency_hz) {
  const auto mhz = std::llround(frequency_hz * 1000.0);
  std::ostringstream ss;
  ss << 'f';
  ss.width(4);
  ss.fill('0');
  ss << mhz / 1000;
  if (mhz % 1000 != 0) {
    ss << '_';
    ss.width(3);
    ss << mhz % 1000;
  }
  return ss.str();
}

std::vector<NmseRow> run_cell(const ExperimentConfig& cfg, double frequency_hz, const std::filesystem::path& out,
                              std::vector<CellFailure>& failures, std::optional<Method> only, std::ostream* log) {
  const auto dir = out / cell_dir_name(frequency_hz);
  std::vector<Method> methods = cfg.methods;
  if (only) methods = {*only};

  std::optional<DatasetFile> train;
  std::optional<ATFDataset> eval;
  try {
    const auto train_path = dir / "train.json";
    const auto eval_path = dir / "eval.json";
    if (std::filesystem::exists(train_path) && std::filesystem::exists(eval_path)) {
      train = dataset_from_json(read_text_file(train_path));
      eval = dataset_from_json(read_text_file(eval_path)).dataset;
    } else {
      log_line(log, "simulate " + cell_dir_name(frequency_hz));
      auto cell = simulate(cfg, frequency_hz, cfg.seed);
      write_text_file(eval_path, dataset_to_json(cell.eval));
      write_text_file(train_path, dataset_to_json(cell.train, cell.v0));
      train = DatasetFile{std::move(cell.train), cell.v0};
      eval = std::move(cell.eval);
    }
  } catch (const Error& e) {
    for (Method m : methods) failures.push_back({frequency_hz, std::string(method_name(m)), e.what()});
    log_line(log, "failed " + cell_dir_name(frequency_hz) + ": " + e.what());
    return {};
  }

  std::vector<NmseRow> rows;
  for (Method m : methods) {
    const std::string name(method_name(m));
    try {
      const auto nmse_path = dir / ("nmse_" + name + ".csv");
      if (std::filesystem::exists(nmse_path)) {
        std::ifstream in(nmse_path);
        for (auto& r : read_nmse_csv(in)) rows.push_back(std::move(r));
        continue;
      }
      const auto model_path = dir / ("model_" + name + ".json");
      std::optional<RidgeModel> model;
      if (std::filesystem::exists(model_path)) {
        model = model_from_json(read_text_file(model_path));
      } else {
        log_line(log, "fit " + cell_dir_name(frequency_hz) + " " + name);
        const UnitVec3 v0 = train->v0.value_or(cfg.v0());
        auto outcome = fit_method(train->dataset, v0, m, cfg);
        if (outcome.trace) {
          std::ostringstream trace;
          write_trace_csv(trace, *outcome.trace);
          write_text_file(dir / ("trace_" + name + ".csv"), trace.str());
        }
        write_text_file(model_path, model_to_json(outcome.model));
        model = std::move(outcome.model);
      }
      if (cfg.nse && same_frequency(cfg.nse->frequency_hz, frequency_hz)) {
        std::ostringstream nse;
        write_nse_csv(nse, evaluate_nse(*model, cfg, cfg.nse->grid));
        write_text_file(dir / ("nse_" + name + ".csv"), nse.str());
      }
      const NmseRow row{frequency_hz, name, evaluate_nmse(*model, *eval)};
      write_text_file(nmse_path, nmse_table({row}));
      log_line(log, "nmse " + cell_dir_name(frequency_hz) + " " + name + " " + format_double(row.nmse_db) + " dB");
      rows.push_back(row);
    } catch (const Error& e) {
      failures.push_back({frequency_hz, name, e.what()});
      log_line(log, "failed " + cell_dir_name(frequency_hz) + " " + name + ": " + e.what());
    }
  }
  return rows;
}

SweepReport sweep(const ExperimentConfig& cfg, const std::filesystem::path& out, unsigned workers,
                  std::ostream* log) {
  cfg.validate();
  const std::size_t n = cfg.frequencies.size();
  std::vector<std::vector<NmseRow>> rows(n);
  std::vector<std::vector<CellFailure>> failures(n);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      rows[i] = run_cell(cfg, cfg.frequencies[i], out, failures[i], std::nullopt, log);
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (count == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(work);
  }
  SweepReport report;
  for (std::size_t i = 0; i < n; ++i) {
    report.rows.insert(report.rows.end(), rows[i].begin(), rows[i].end());
    report.failures.insert(report.failures.end(), failures[i].begin(), failures[i].end());
  }
  write_text_file(out / "nmse.csv", nmse_table(report.rows));
  return report;
}

}  // namespace atfkit
