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

#include <doctest.h>

#include <filesystem>
#include <random>

#include "atfkit/error.hpp"
#include "atfkit/experiment.hpp"
#include "atfkit/io.hpp"
#include "atfkit/regression.hpp"
#include "test_util.hpp"

using namespace atfkit;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "atfkit_test_io" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("dataset JSON round trip is exact") {
  std::mt19937_64 rng(1);
  const WavenumberSpec k(950.0, 340.0);
  const ATFDataset d(test::random_pairs(12, rng), test::random_values(12, rng), k, GridLayout{3, 4});
  const auto back = dataset_from_json(dataset_to_json(d, test::axis_v0));
  CHECK(back.dataset.size() == 12);
  CHECK(back.dataset.measurements() == d.measurements());
  CHECK(back.dataset.wavenumber().frequency_hz() == 950.0);
  CHECK(back.dataset.wavenumber().speed_of_sound() == 340.0);
  REQUIRE(back.dataset.layout().has_value());
  CHECK(back.dataset.layout()->sources == 3);
  CHECK(back.dataset.layout()->receivers == 4);
  REQUIRE(back.v0.has_value());
  CHECK(back.v0->vec() == test::axis_v0.vec());
  for (std::size_t n = 0; n < d.size(); ++n) {
    CHECK(back.dataset.pairs()[n].receiver() == d.pairs()[n].receiver());
    CHECK(back.dataset.pairs()[n].source() == d.pairs()[n].source());
  }
  const auto plain = dataset_from_json(dataset_to_json(ATFDataset(d.pairs(), d.measurements(), k)));
  CHECK_FALSE(plain.v0.has_value());
  CHECK_FALSE(plain.dataset.layout().has_value());
}

TEST_CASE("malformed dataset files") {
  CHECK_THROWS_AS(dataset_from_json("{"), FormatError);
  CHECK_THROWS_AS(dataset_from_json("{\"frequency_hz\": 100}"), FormatError);
  CHECK_THROWS_AS(dataset_from_json(R"({"frequency_hz": 100, "speed_of_sound": 343,
      "pairs": [[0, 0, 0, 1, 1, 1]], "measurements": [[1, 0], [2, 0]], "layout": null})"),
                  Error);
  CHECK_THROWS_AS(dataset_from_json(R"({"frequency_hz": 100, "speed_of_sound": 343,
      "pairs": [[0, 0, 0, 1, 1]], "measurements": [[1, 0]], "layout": null})"),
                  FormatError);
}

TEST_CASE("model JSON round trip predicts identically") {
  std::mt19937_64 rng(2);
  const WavenumberSpec k(700.0);
  const ATFDataset d(test::random_pairs(10, rng), test::random_values(10, rng), k);
  for (const auto& spec : {KernelSpec::uniform(k),
                           KernelSpec::directional(DirectionalWeightParams(12.5, 0.3, test::axis_v0), k)}) {
    const auto model = fit(d, spec, 1e-2);
    const auto back = model_from_json(model_to_json(model));
    CHECK(back.alpha() == model.alpha());
    CHECK(back.lambda() == model.lambda());
    CHECK(back.spec().is_directional() == spec.is_directional());
    const auto q = test::random_pair(rng);
    CHECK(predict(back, q) == predict(model, q));
  }
  CHECK_THROWS_AS(model_from_json(R"({"kernel_spec": {"family": "cubic"}})"), FormatError);
}

TEST_CASE("text files are written atomically into new directories") {
  const auto dir = scratch_dir("text");
  const auto path = dir / "a" / "b" / "file.txt";
  write_text_file(path, "first");
  CHECK(read_text_file(path) == "first");
  write_text_file(path, "second");
  CHECK(read_text_file(path) == "second");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(path.parent_path())) ++entries;
  CHECK(entries == 1);
  CHECK_THROWS_AS(read_text_file(dir / "missing.txt"), Error);
}

TEST_CASE("shipped full-study configuration") {
  const auto cfg = load_config(fs::path(ATFKIT_SOURCE_DIR) / "configs" / "study.json");
  CHECK(cfg.room.dims == Eigen::Vector3d(3.2, 4.0, 2.7));
  REQUIRE(cfg.room.target_t60.has_value());
  CHECK(*cfg.room.target_t60 == 0.45);
  CHECK(cfg.room.reflection[0] == doctest::Approx(0.9085106393233695).epsilon(1e-13));
  CHECK(cfg.source_region.center() == Point3(0.35, 0.43, 0.29));
  CHECK(cfg.receiver_region.center() == Point3(-0.35, -0.43, -0.29));
  CHECK(cfg.source_region.radius() == 0.2);
  CHECK(cfg.receiver_region.radius() == 0.2);
  CHECK(cfg.lambda == 1e-2);
  CHECK(cfg.snr_db == 20.0);
  CHECK(cfg.tukey_sigma == 0.4);
  CHECK(cfg.eval_pairs == 9025);
  REQUIRE(cfg.frequencies.size() == 22);
  CHECK(cfg.frequencies.front() == 100.0);
  CHECK(cfg.frequencies.back() == 1150.0);
  CHECK(cfg.methods.size() == 3);
  std::size_t points = 0;
  for (const auto& l : cfg.layers) points += static_cast<std::size_t>((l.t + 1) * (l.t + 1));
  CHECK(points == 41);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("configuration round trip") {
  const auto cfg = load_config(fs::path(ATFKIT_SOURCE_DIR) / "configs" / "smoke.json");
  const auto back = config_from_json(config_to_json(cfg));
  CHECK(back.frequencies == cfg.frequencies);
  CHECK(back.room.reflection == cfg.room.reflection);
  CHECK(back.eval_pairs == 625);
  CHECK(back.methods == cfg.methods);
  CHECK(back.optimizer.max_iters == cfg.optimizer.max_iters);
  CHECK(back.output_dir == cfg.output_dir);
  CHECK(config_to_json(back) == config_to_json(cfg));
}

TEST_CASE("configuration schema errors") {
  const std::string base = R"("room": {"dims": [3.2, 4.0, 2.7], "reflection": 0.5, "max_order": 3}, "frequencies": [500])";
  CHECK_NOTHROW(config_from_json("{" + base + "}"));
  CHECK_THROWS_AS(config_from_json("{" + base + R"(, "lamda": 0.1})"), FormatError);
  CHECK_THROWS_AS(config_from_json(R"({"room": {"dims": [3, 4, 2], "t60": 0.4, "reflection": 0.5}, "frequencies": [1]})"),
                  FormatError);
  CHECK_THROWS_AS(config_from_json("{" + base + R"(, "methods": ["cubic"]})"), DomainError);
  CHECK_THROWS_AS(config_from_json("{" + base + R"(, "eval": {"n_pairs": 10}})"), DomainError);

  const auto range = config_from_json(R"({"room": {"dims": [3.2, 4.0, 2.7], "reflection": [0, 0.1, 0.2, 0.3, 0.4, 0.5]},
      "frequencies": {"start": 100, "stop": 300, "step": 50}, "noise": {"snr_db": null}})");
  CHECK(range.frequencies == std::vector<double>{100, 150, 200, 250, 300});
  CHECK(range.room.reflection[5] == 0.5);
  CHECK_FALSE(range.room.target_t60.has_value());
  CHECK_FALSE(std::isfinite(range.snr_db));
}
