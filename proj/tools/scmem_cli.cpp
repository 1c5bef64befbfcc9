/*
 * Copyright 2026 The scmem Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// scmem: command-line front end for the stochastic MAC simulator.
//
//   scmem mac --in 110,111 --w +100,-110 --m 3 --vdd 1.0
//   scmem compare [--config PATH] [--out DIR] [--seed U64] [--format csv|json|both]
//   scmem sweep --m 7,15 --length 16,64 ...
//   scmem asc-stats --m 15 --sigma 0.15
//   scmem selftest
//
// Exit status: 0 ok, 1 runtime failure, 2 bad config or arguments,
// 3 size mismatch, 4 I/O failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "scmem/config.hpp"
#include "scmem/errors.hpp"
#include "scmem/mac_engine.hpp"
#include "scmem/pipelines.hpp"
#include "scmem/report.hpp"
#include "scmem/selftest.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace scmem;

namespace {

struct Common {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string format = "both";

  bool csv() const { return format != "json"; }
  bool json_out() const { return format != "csv"; }
};

SimConfig load(const Common& c) {
  SimConfig cfg = c.config_path.empty() ? default_config() : load_config(c.config_path);
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

fs::path out_path(const Common& c, const std::string& name) {
  std::error_code ec;
  fs::create_directories(c.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + c.out_dir + "': " + ec.message());
  return fs::path(c.out_dir) / name;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::size_t end = comma == std::string::npos ? s.size() : comma;
    out.push_back(s.substr(start, end - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Bitstream parse_stream(const std::string& text) {
  try {
    return Bitstream::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("bad bitstream '" + text + "': " + e.what());
  }
}

// ---- mac --------------------------------------------------------------------

struct MacArgs {
  std::string in;
  std::string w;
  std::size_t m = 0;
  double vdd = 1.0;
};

int run_mac(const Common& common, const MacArgs& a) {
  MacInputs inputs;
  for (const auto& s : split_list(a.in)) inputs.in.push_back(parse_stream(s));
  for (const auto& s : split_list(a.w)) {
    if (s.empty()) throw ConfigError("empty weight");
    bool positive = true;
    std::string body = s;
    if (s[0] == '+' || s[0] == '-') {
      positive = s[0] == '+';
      body = s.substr(1);
    }
    inputs.w.push_back({parse_stream(body), positive});
  }

  MacConfig cfg;
  cfg.m = a.m != 0 ? a.m : inputs.in.empty() ? 0 : inputs.in.front().length();
  cfg.n_inputs = inputs.in.size();
  cfg.vdd = a.vdd;
  if (inputs.w.size() != inputs.in.size())
    throw SizeMismatchError(fmt::format("{} inputs but {} weights", inputs.in.size(), inputs.w.size()));
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  validate(inputs, cfg);

  const MacResult r = mac_evaluate(inputs, cfg);
  const std::int64_t decoded = decode_voltage(r.voltage, cfg);
  fmt::print("m = {}, N = {}, VDD = {} V\n", cfg.m, cfg.n_inputs, format_number(cfg.vdd));
  fmt::print("n_p = {}, n_n = {}\n", r.counts.n_p, r.counts.n_n);
  fmt::print("VP = {:.9f} V, VN = {:.9f} V\n", r.phase1.vp, r.phase1.vn);
  fmt::print("V = {:.9f} V\n", r.voltage);
  fmt::print("decoded = {}\n", decoded);

  if (!common.out_dir.empty()) {
    const json j = {{"schema_version", kReportSchemaVersion},
                    {"m", cfg.m},
                    {"n_inputs", cfg.n_inputs},
                    {"vdd", cfg.vdd},
                    {"n_p", r.counts.n_p},
                    {"n_n", r.counts.n_n},
                    {"vp", r.phase1.vp},
                    {"vn", r.phase1.vn},
                    {"voltage", r.voltage},
                    {"decoded", decoded}};
    if (common.json_out()) write_file_atomic(out_path(common, "mac.json"), j.dump(2) + "\n");
    if (common.csv())
      write_file_atomic(out_path(common, "mac.csv"),
                        fmt::format("m,n_inputs,vdd,n_p,n_n,vp,vn,voltage,decoded\n{},{},{},{},{},{},{},{},{}\n",
                                    cfg.m, cfg.n_inputs, format_number(cfg.vdd), r.counts.n_p,
                                    r.counts.n_n, format_number(r.phase1.vp),
                                    format_number(r.phase1.vn), format_number(r.voltage), decoded));
  }
  return 0;
}

// ---- compare ----------------------------------------------------------------

struct Overrides {
  std::optional<std::size_t> m;
  std::optional<std::size_t> n_inputs;
  std::optional<std::size_t> length;
  std::optional<double> sigma;
  std::optional<double> flip_p;
  std::optional<std::size_t> trials;
  std::string profile;
};

void apply(SimConfig& cfg, const Overrides& o) {
  if (o.m) cfg.mac.m = *o.m;
  if (o.n_inputs) cfg.mac.n_inputs = *o.n_inputs;
  if (o.length) cfg.stream_length = *o.length;
  if (o.sigma) cfg.distribution = ZeroPeakedGaussian{*o.sigma};
  if (o.flip_p) cfg.flip_p = *o.flip_p;
  if (o.trials) cfg.trials = *o.trials;
  if (!o.profile.empty()) {
    try {
      cfg.profile = parse_profile_kind(o.profile);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }
  // Re-run the config checks on the overridden values.
  cfg = parse_config(to_json(cfg));
}

int run_compare(const Common& common, const Overrides& o) {
  SimConfig cfg = load(common);
  apply(cfg, o);
  const Comparison c = run_comparison(pipeline_config(cfg, Architecture::Conventional),
                                      pipeline_config(cfg, Architecture::Proposed));
  const json summary = comparison_summary(c, cfg);
  std::cout << format_summary(summary);

  if (!common.out_dir.empty()) {
    if (common.csv()) {
      write_file_atomic(out_path(common, "conventional_trials.csv"), trials_csv(c.baseline));
      write_file_atomic(out_path(common, "proposed_trials.csv"), trials_csv(c.candidate));
      write_file_atomic(out_path(common, "energy.csv"), energy_csv(c));
    }
    if (common.json_out())
      write_file_atomic(out_path(common, "summary.json"), summary.dump(2) + "\n");
  }
  return 0;
}

// ---- sweep ------------------------------------------------------------------

struct SweepArgs {
  std::vector<std::size_t> m;
  std::vector<std::size_t> n_inputs;
  std::vector<std::size_t> length;
  std::vector<double> sigma;
  std::vector<double> flip_p;
  std::optional<std::size_t> trials;
};

int run_sweep(const Common& common, const SweepArgs& a) {
  SimConfig cfg = load(common);
  if (a.trials) cfg.trials = *a.trials;
  double base_sigma = 0.15;
  if (const auto* g = std::get_if<ZeroPeakedGaussian>(&cfg.distribution)) base_sigma = g->sigma;

  const auto or_default = [](auto values, auto fallback) {
    if (values.empty()) values.push_back(fallback);
    return values;
  };
  const auto ms = or_default(a.m, cfg.mac.m);
  const auto ns = or_default(a.n_inputs, cfg.mac.n_inputs);
  const auto ls = or_default(a.length, cfg.stream_length);
  const auto ss = or_default(a.sigma, base_sigma);
  const auto ps = or_default(a.flip_p, cfg.flip_p);

  std::vector<SweepRow> rows;
  fmt::print("{:>4} {:>6} {:>6} {:>7} {:>8} {:>14} {:>14} {:>10} {:>10} {:>9}\n", "m", "N", "L",
             "sigma", "flip_p", "conv_rmse", "prop_rmse", "conv_pJ", "prop_pJ", "reduce%");
  for (auto m : ms)
    for (auto n : ns)
      for (auto l : ls)
        for (auto s : ss)
          for (auto p : ps) {
            SweepPoint pt{m, n, l, s, p};
            SimConfig point_cfg = cfg;
            point_cfg.mac.m = m;
            point_cfg.mac.n_inputs = n;
            point_cfg.stream_length = l;
            point_cfg.flip_p = p;
            point_cfg = parse_config(to_json(point_cfg));
            const SweepRow r = run_sweep_point(point_cfg, pt);
            fmt::print("{:>4} {:>6} {:>6} {:>7g} {:>8g} {:>14.6g} {:>14.6g} {:>10.4f} {:>10.4f} {:>9.2f}\n",
                       m, n, l, s, p, r.conventional.rmse, r.proposed.rmse, r.conventional_pj,
                       r.proposed_pj, r.reduction);
            rows.push_back(r);
          }

  if (!common.out_dir.empty()) {
    if (common.csv()) write_file_atomic(out_path(common, "sweep.csv"), sweep_csv(rows));
    if (common.json_out()) {
      json j = {{"schema_version", kReportSchemaVersion}, {"config", to_json(cfg)}, {"rows", json::array()}};
      for (const auto& r : rows)
        j["rows"].push_back({{"m", r.point.m},
                             {"n_inputs", r.point.n_inputs},
                             {"length", r.point.length},
                             {"sigma", r.point.sigma},
                             {"flip_p", r.point.flip_p},
                             {"conventional_rmse", r.conventional.rmse},
                             {"conventional_max_abs", r.conventional.max_abs},
                             {"proposed_rmse", r.proposed.rmse},
                             {"proposed_max_abs", r.proposed.max_abs},
                             {"conventional_pj", r.conventional_pj},
                             {"proposed_pj", r.proposed_pj},
                             {"reduction_percent", r.reduction}});
      write_file_atomic(out_path(common, "sweep.json"), j.dump(2) + "\n");
    }
  }
  return 0;
}

// ---- asc-stats ----------------------------------------------------------------

struct AscArgs {
  std::optional<std::size_t> m;
  std::optional<double> sigma;
  std::size_t samples = 100000;
};

int run_asc_stats(const Common& common, const AscArgs& a) {
  SimConfig cfg = load(common);
  if (a.m) cfg.mac.m = *a.m;
  double sigma = 0.15;
  if (const auto* g = std::get_if<ZeroPeakedGaussian>(&cfg.distribution)) sigma = g->sigma;
  if (a.sigma) sigma = *a.sigma;
  if (cfg.mac.m < 1) throw ConfigError("m must be positive");
  if (!(sigma > 0)) throw ConfigError("sigma must be positive");
  if (a.samples < 1) throw ConfigError("samples must be positive");

  const PipelineConfig prop = pipeline_config(cfg, Architecture::Proposed);
  const double sa_fj = prop.energy_table.unit_fj(events::kSaFire);
  const auto rows = asc_gating_stats(cfg.mac.m, sigma, sa_fj, a.samples, cfg.seed);

  fmt::print("ASC sense-amplifier activity, m = {} ({} samples, sa_fire = {} fJ)\n", cfg.mac.m,
             a.samples, format_number(sa_fj));
  fmt::print("{:<32} {:>10} {:>10} {:>9} {:>10}\n", "distribution", "expected", "sampled", "saving%",
             "energy_fJ");
  for (const auto& r : rows)
    fmt::print("{:<32} {:>10.4f} {:>10.4f} {:>9.2f} {:>10.3f}\n", r.distribution, r.expected_enabled,
               r.sampled_enabled, 100.0 * r.saving, r.energy_fj);

  if (!common.out_dir.empty()) {
    if (common.csv()) write_file_atomic(out_path(common, "asc_stats.csv"), asc_stats_csv(rows));
    if (common.json_out()) {
      json j = {{"schema_version", kReportSchemaVersion}, {"m", cfg.mac.m}, {"rows", json::array()}};
      for (const auto& r : rows)
        j["rows"].push_back({{"distribution", r.distribution},
                             {"expected_enabled", r.expected_enabled},
                             {"sampled_enabled", r.sampled_enabled},
                             {"saving_percent", 100.0 * r.saving},
                             {"energy_fj", r.energy_fj}});
      write_file_atomic(out_path(common, "asc_stats.json"), j.dump(2) + "\n");
    }
  }
  return 0;
}

// ---- selftest ----------------------------------------------------------------

int run_selftest() {
  int failed = 0;
  for (const auto& c : run_selftests()) {
    fmt::print("[{}] {}{}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail.empty() ? "" : ": " + c.detail);
    failed += c.passed ? 0 : 1;
  }
  fmt::print("{} check(s) failed\n", failed);
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic-computing MAC memory simulator"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  Common common;
  app.add_option("--config", common.config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--out", common.out_dir, "Directory for report files");
  app.add_option("--seed", common.seed, "Master seed (overrides the config)");
  app.add_option("--format", common.format, "Report files to write")
      ->check(CLI::IsMember({"csv", "json", "both"}));

  MacArgs mac_args;
  auto* mac = app.add_subcommand("mac", "Evaluate one MAC from explicit bitstreams");
  mac->add_option("--in", mac_args.in, "Comma-separated input streams, e.g. 110,111")->required();
  mac->add_option("--w", mac_args.w, "Comma-separated signed weights, e.g. +100,-110")->required();
  mac->add_option("--m", mac_args.m, "Bits per stream (default: input length)");
  mac->add_option("--vdd", mac_args.vdd, "Supply voltage");

  Overrides ov;
  auto* compare = app.add_subcommand("compare", "Conventional vs proposed pipeline");
  compare->add_option("--m", ov.m, "Stochastic number length m");
  compare->add_option("--n-inputs", ov.n_inputs, "MAC inputs N");
  compare->add_option("--length", ov.length, "Conventional bitstream length L");
  compare->add_option("--sigma", ov.sigma, "Zero-peaked Gaussian sigma");
  compare->add_option("--flip-p", ov.flip_p, "Bit-flip probability");
  compare->add_option("--trials", ov.trials, "Monte Carlo trials");
  compare->add_option("--profile", ov.profile, "Activity profile")
      ->check(CLI::IsMember({"simulated", "naive", "calibrated"}));

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Grid over m, N, L, sigma and flip probability");
  sweep->add_option("--m", sw.m, "m values")->delimiter(',');
  sweep->add_option("--n-inputs", sw.n_inputs, "N values")->delimiter(',');
  sweep->add_option("--length", sw.length, "L values")->delimiter(',');
  sweep->add_option("--sigma", sw.sigma, "sigma values")->delimiter(',');
  sweep->add_option("--flip-p", sw.flip_p, "flip probabilities")->delimiter(',');
  sweep->add_option("--trials", sw.trials, "Monte Carlo trials per point");

  AscArgs asc;
  auto* asc_stats = app.add_subcommand("asc-stats", "ASC gating activity vs input distribution");
  asc_stats->add_option("--m", asc.m, "Stochastic number length m");
  asc_stats->add_option("--sigma", asc.sigma, "Zero-peaked Gaussian sigma");
  asc_stats->add_option("--samples", asc.samples, "Inputs sampled per distribution");

  auto* selftest = app.add_subcommand("selftest", "Run built-in invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (mac->parsed()) return run_mac(common, mac_args);
    if (compare->parsed()) return run_compare(common, ov);
    if (sweep->parsed()) return run_sweep(common, sw);
    if (asc_stats->parsed()) return run_asc_stats(common, asc);
    if (selftest->parsed()) return run_selftest();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const SizeMismatchError& e) {
    std::cerr << "size mismatch: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
