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

// Command-line front end: simulate, fit, evaluate, sweep and quadcheck.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "atfkit/error.hpp"
#include "atfkit/experiment.hpp"
#include "atfkit/io.hpp"
#include "atfkit/kernel_quadrature.hpp"

namespace fs = std::filesystem;
using namespace atfkit;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_numerical = 2;
constexpr int exit_partial = 3;

struct Options {
  std::string config;
  std::vector<double> freqs;
  std::string method;
  std::optional<std::uint64_t> seed;
  std::string out;
  unsigned workers = 1;
};

ExperimentConfig load(const Options& o) {
  ExperimentConfig cfg = load_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  return cfg;
}

fs::path out_dir(const Options& o, const ExperimentConfig& cfg) { return o.out.empty() ? cfg.output_dir : fs::path(o.out); }

std::vector<double> frequencies(const Options& o, const ExperimentConfig& cfg) {
  return o.freqs.empty() ? cfg.frequencies : o.freqs;
}

std::vector<Method> methods(const Options& o, const ExperimentConfig& cfg) {
  return o.method.empty() ? cfg.methods : std::vector<Method>{parse_method(o.method)};
}

int cmd_simulate(const Options& o) {
  const auto cfg = load(o);
  const auto out = out_dir(o, cfg);
  for (double f : frequencies(o, cfg)) {
    const auto cell = simulate(cfg, f, cfg.seed);
    const auto dir = out / cell_dir_name(f);
    write_text_file(dir / "train.json", dataset_to_json(cell.train, cell.v0));
    write_text_file(dir / "eval.json", dataset_to_json(cell.eval));
    std::cout << dir.string() << ": train " << cell.train.size() << " pairs, eval " << cell.eval.size() << " pairs\n";
  }
  return exit_ok;
}

int cmd_fit(const Options& o) {
  const auto cfg = load(o);
  const auto out = out_dir(o, cfg);
  for (double f : frequencies(o, cfg)) {
    const auto dir = out / cell_dir_name(f);
    const auto train = dataset_from_json(read_text_file(dir / "train.json"));
    for (Method m : methods(o, cfg)) {
      const std::string name(method_name(m));
      const auto outcome = fit_method(train.dataset, train.v0.value_or(cfg.v0()), m, cfg);
      write_text_file(dir / ("model_" + name + ".json"), model_to_json(outcome.model));
      std::cout << dir.string() << ": " << name;
      if (outcome.trace) {
        std::ostringstream trace;
        write_trace_csv(trace, *outcome.trace);
        write_text_file(dir / ("trace_" + name + ".csv"), trace.str());
        std::cout << " beta " << outcome.trace->best_beta << " gamma " << outcome.trace->best_gamma << " loo "
                  << outcome.trace->best_value << " after " << outcome.trace->records.size() << " evaluations";
      }
      std::cout << '\n';
    }
  }
  return exit_ok;
}

int cmd_evaluate(const Options& o) {
  const auto cfg = load(o);
  const auto out = out_dir(o, cfg);
  std::vector<NmseRow> rows;
  for (double f : frequencies(o, cfg)) {
    const auto dir = out / cell_dir_name(f);
    const auto eval = dataset_from_json(read_text_file(dir / "eval.json")).dataset;
    for (Method m : methods(o, cfg)) {
      const std::string name(method_name(m));
      const auto model = model_from_json(read_text_file(dir / ("model_" + name + ".json")));
      const NmseRow row{f, name, evaluate_nmse(model, eval)};
      std::ostringstream table;
      write_nmse_csv(table, {row});
      write_text_file(dir / ("nmse_" + name + ".csv"), table.str());
      if (cfg.nse && std::abs(cfg.nse->frequency_hz - f) < 1e-9) {
        std::ostringstream nse;
        write_nse_csv(nse, evaluate_nse(model, cfg, cfg.nse->grid));
        write_text_file(dir / ("nse_" + name + ".csv"), nse.str());
      }
      rows.push_back(row);
    }
  }
  write_nmse_csv(std::cout, rows);
  return exit_ok;
}

int cmd_sweep(const Options& o) {
  auto cfg = load(o);
  if (!o.freqs.empty()) cfg.frequencies = o.freqs;
  if (!o.method.empty()) cfg.methods = {parse_method(o.method)};
  const auto report = sweep(cfg, out_dir(o, cfg), o.workers, &std::cerr);
  write_nmse_csv(std::cout, report.rows);
  if (!report.failures.empty()) {
    std::cerr << "failed cells:\n";
    for (const auto& fail : report.failures) {
      std::cerr << "  " << fail.frequency_hz << " Hz " << fail.method << ": " << fail.message << '\n';
    }
    return exit_partial;
  }
  return exit_ok;
}

int cmd_quadcheck(const Options& o) {
  ExperimentConfig cfg;
  if (!o.config.empty()) cfg = load(o);
  const std::vector<double> freqs = o.freqs.empty() ? std::vector<double>{500.0, 950.0} : o.freqs;
  const auto checks = kernel_oracle_suite(cfg.receiver_region, cfg.source_region, {0.0, 10.0, 100.0},
                                          {0.01, 0.1, 1.0}, freqs, 100, o.seed.value_or(1),
                                          cfg.room.speed_of_sound);
  constexpr double tolerance = 1e-6;
  bool ok = true;
  std::printf("%10s %8s %8s %7s %14s\n", "freq_hz", "beta", "gamma", "degree", "max_rel_error");
  for (const auto& c : checks) {
    std::printf("%10g %8g %8g %7d %14.3e\n", c.frequency_hz, c.beta, c.gamma, c.degree, c.max_rel_error);
    ok = ok && c.max_rel_error <= tolerance;
  }
  std::printf("%s (tolerance %g)\n", ok ? "PASS" : "FAIL", tolerance);
  return ok ? exit_ok : exit_numerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Region-to-region acoustic transfer function interpolation"};
  app.require_subcommand(1);
  Options o;

  const auto add_common = [&](CLI::App* sub, bool need_config) {
    auto* c = sub->add_option("--config", o.config, "Experiment configuration (JSON)");
    if (need_config) c->required()->check(CLI::ExistingFile);
    sub->add_option("--freq", o.freqs, "Frequency in Hz (repeatable; default: all configured)");
    sub->add_option("--seed", o.seed, "Noise seed, overriding the configuration");
    sub->add_option("--out", o.out, "Output directory (default: output_dir of the configuration)");
  };
  auto* simulate_cmd = app.add_subcommand("simulate", "Generate training and evaluation datasets");
  add_common(simulate_cmd, true);
  auto* fit_cmd = app.add_subcommand("fit", "Fit models for simulated datasets");
  add_common(fit_cmd, true);
  fit_cmd->add_option("--method", o.method, "uniform, directional-sqe or directional-tukey (default: all)");
  auto* eval_cmd = app.add_subcommand("evaluate", "Compute NMSE (and NSE) for fitted models");
  add_common(eval_cmd, true);
  eval_cmd->add_option("--method", o.method, "Method to evaluate (default: all)");
  auto* sweep_cmd = app.add_subcommand("sweep", "Simulate, fit and evaluate every configured cell (resumable)");
  add_common(sweep_cmd, true);
  sweep_cmd->add_option("--method", o.method, "Restrict to one method");
  sweep_cmd->add_option("--workers", o.workers, "Frequencies processed concurrently")->check(CLI::PositiveNumber);
  auto* quad_cmd = app.add_subcommand("quadcheck", "Compare closed-form kernels with quadrature");
  add_common(quad_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*simulate_cmd) return cmd_simulate(o);
    if (*fit_cmd) return cmd_fit(o);
    if (*eval_cmd) return cmd_evaluate(o);
    if (*sweep_cmd) return cmd_sweep(o);
    if (*quad_cmd) return cmd_quadcheck(o);
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}
