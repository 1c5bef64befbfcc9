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

#include "scmem/report.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "scmem/converters.hpp"
#include "scmem/errors.hpp"
#include "scmem/rng.hpp"

namespace scmem {

using nlohmann::json;

HeadlineMetrics headline_metrics(double energy_per_output_joules, double rate_hz, double ops,
                                 double steps) {
  HeadlineMetrics h;
  h.energy_pj = energy_per_output_joules * 1e12;
  h.power_uw = energy_per_output_joules * rate_hz * 1e6;
  h.efficiency_tops_w = efficiency(ops, energy_per_output_joules) * 1e-12;
  h.fom_fj_per_step = fom(energy_per_output_joules, steps, ops) * 1e15;
  return h;
}

double structural_ops(const MacConfig& mac) { return 2.0 * static_cast<double>(mac.n_inputs) - 1.0; }

double structural_steps(const MacConfig& mac) {
  return 2.0 * static_cast<double>(mac.products()) + 1.0;
}

std::string format_number(double v) { return fmt::format("{}", v); }

namespace {

json headline_json(const HeadlineMetrics& h, double ops, double steps) {
  return {{"ops", ops},
          {"steps", steps},
          {"energy_pj", h.energy_pj},
          {"power_uw", h.power_uw},
          {"efficiency_tops_w", h.efficiency_tops_w},
          {"fom_fj_per_step", h.fom_fj_per_step}};
}

json architecture_json(const ExperimentResult& r, const SimConfig& cfg) {
  json energy = json::object();
  const double outputs = static_cast<double>(r.energy.outputs);
  for (const auto& [name, aj] : r.energy.category_aj)
    energy[name] = static_cast<double>(aj) * 1e-3 / outputs;

  const EnergyReport simulated = accumulate(r.activity, r.config.energy_table);
  const double joules = r.energy.per_output_joules();
  json j = {
      {"profile", std::string(to_string(r.config.profile))},
      {"energy_fj", energy},
      {"energy_per_output_pj", r.energy.per_output_pj()},
      {"simulated_energy_per_output_pj", simulated.per_output_pj()},
      {"power_uw", r.energy.power_uw(r.config.rate_hz)},
      {"accuracy",
       {{"trials", r.trials.size()},
        {"rmse", r.stats.rmse},
        {"max_abs", r.stats.max_abs},
        {"mean_error", r.stats.mean},
        {"units", r.config.variant == Architecture::Conventional ? "normalized MAC value"
                                                                : "n_p - n_n count"}}},
  };
  if (joules > 0.0) {
    const double ops = cfg.metrics.ops_per_output;
    const double steps = cfg.metrics.fom_steps;
    j["table_convention"] =
        headline_json(headline_metrics(joules, cfg.rate_hz, ops, steps), ops, steps);
    const double sops = structural_ops(cfg.mac);
    const double ssteps = structural_steps(cfg.mac);
    j["structural_convention"] =
        headline_json(headline_metrics(joules, cfg.rate_hz, sops, ssteps), sops, ssteps);
  }
  if (r.config.variant == Architecture::Proposed) {
    const double total = static_cast<double>(r.activity.sa_enabled() + r.activity.sa_disabled());
    j["sense_amps"] = {
        {"enabled", r.activity.sa_enabled()},
        {"disabled", r.activity.sa_disabled()},
        {"gating_saving_percent",
         total > 0 ? 100.0 * static_cast<double>(r.activity.sa_disabled()) / total : 0.0}};
  }
  return j;
}

double profile_reduction(const SimConfig& cfg, ProfileKind kind, const Comparison& c) {
  const PipelineConfig conv = pipeline_config(cfg, Architecture::Conventional);
  const PipelineConfig prop = pipeline_config(cfg, Architecture::Proposed);
  if (kind == ProfileKind::Simulated)
    return reduction_percent(accumulate(c.baseline.activity, c.baseline.config.energy_table),
                             accumulate(c.candidate.activity, c.candidate.config.energy_table));
  const ActivityLog conv_log =
      kind == ProfileKind::Naive ? naive_profile(Architecture::Conventional) : cfg.conventional_calibrated;
  const ActivityLog prop_log =
      kind == ProfileKind::Naive ? naive_profile(Architecture::Proposed) : cfg.proposed_calibrated;
  return reduction_percent(accumulate(conv_log, conv.energy_table),
                           accumulate(prop_log, prop.energy_table));
}

std::string cell(const json& obj, const std::string& key, const char* pattern) {
  if (!obj.contains(key)) return "-";
  return fmt::format(fmt::runtime(pattern), obj.at(key).get<double>());
}

}  // namespace

json comparison_summary(const Comparison& c, const SimConfig& cfg) {
  const double ref_joules = 0.91e-12;
  const double ops = cfg.metrics.ops_per_output;
  const double steps = cfg.metrics.fom_steps;
  const double sops = structural_ops(cfg.mac);

  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["config"] = to_json(cfg);
  j["selected_profile"] = std::string(to_string(cfg.profile));
  j["architectures"] = {{std::string(to_string(c.baseline.config.variant)), architecture_json(c.baseline, cfg)},
                        {std::string(to_string(c.candidate.config.variant)), architecture_json(c.candidate, cfg)}};
  j["baseline"] = std::string(to_string(c.baseline.config.variant));
  j["candidate"] = std::string(to_string(c.candidate.config.variant));
  const HeadlineMetrics ref = headline_metrics(ref_joules, cfg.rate_hz, ops, steps);
  j["reference_point"] = {
      {"energy_pj", ref.energy_pj},
      {"rate_hz", cfg.rate_hz},
      {"power_uw", ref.power_uw},
      {"ops", ops},
      {"steps", steps},
      {"efficiency_tops_w", ref.efficiency_tops_w},
      {"structural_ops", sops},
      {"structural_efficiency_tops_w", efficiency(sops, ref_joules) * 1e-12},
      {"fom_fj_per_step", ref.fom_fj_per_step},
  };
  j["reduction_percent"] = {
      {"selected", c.reduction},
      {"simulated", profile_reduction(cfg, ProfileKind::Simulated, c)},
      {"naive", profile_reduction(cfg, ProfileKind::Naive, c)},
      {"calibrated", profile_reduction(cfg, ProfileKind::Calibrated, c)},
  };
  return j;
}

std::string format_summary(const json& s) {
  const json& cfg = s.at("config");
  const json& mac = cfg.at("mac");
  const json& pipe = cfg.at("pipeline");
  const std::string base = s.at("baseline");
  const std::string cand = s.at("candidate");
  const json& b = s.at("architectures").at(base);
  const json& c = s.at("architectures").at(cand);
  const double rate_mhz = pipe.at("rate_hz").get<double>() * 1e-6;

  std::string out;
  auto line = [&out](const std::string& text) { out += text + "\n"; };

  line(fmt::format("MAC comparison: N={} m={} n={} L={} @ {:g} MHz, {} trials, {} profile",
                   mac.at("n_inputs").get<std::size_t>(), mac.at("m").get<std::size_t>(),
                   pipe.at("binary_bits").get<unsigned>(), pipe.at("stream_length").get<std::size_t>(),
                   rate_mhz, cfg.at("experiment").at("trials").get<std::size_t>(),
                   s.at("selected_profile").get<std::string>()));
  line("");
  line(fmt::format("{:<34}{:>16}{:>16}", "energy per output (fJ)", base, cand));
  std::set<std::string> categories;
  for (const auto& [k, _] : b.at("energy_fj").items()) categories.insert(k);
  for (const auto& [k, _] : c.at("energy_fj").items()) categories.insert(k);
  for (const auto& k : categories)
    line(fmt::format("  {:<32}{:>16}{:>16}", k, cell(b.at("energy_fj"), k, "{:.2f}"),
                     cell(c.at("energy_fj"), k, "{:.2f}")));
  line(fmt::format("  {:<32}{:>16.2f}{:>16.2f}", "total",
                   b.at("energy_per_output_pj").get<double>() * 1e3,
                   c.at("energy_per_output_pj").get<double>() * 1e3));
  line("");

  auto metric_row = [&](const std::string& label, const char* conv, const char* key,
                        const char* pattern) {
    const std::string bv = b.contains(conv) ? cell(b.at(conv), key, pattern) : "-";
    const std::string cv = c.contains(conv) ? cell(c.at(conv), key, pattern) : "-";
    line(fmt::format("  {:<32}{:>16}{:>16}", label, bv, cv));
  };
  line(fmt::format("  {:<32}{:>16.2f}{:>16.2f}", "energy / output (pJ)",
                   b.at("energy_per_output_pj").get<double>(), c.at("energy_per_output_pj").get<double>()));
  line(fmt::format("  {:<32}{:>16.2f}{:>16.2f}", fmt::format("power @ {:g} MHz (uW)", rate_mhz),
                   b.at("power_uw").get<double>(), c.at("power_uw").get<double>()));
  const json& tc = c.contains("table_convention") ? c.at("table_convention") : b.at("table_convention");
  const json& sc = c.contains("structural_convention") ? c.at("structural_convention")
                                                        : b.at("structural_convention");
  metric_row(fmt::format("efficiency, {:g} ops (TOPS/W)", tc.at("ops").get<double>()),
             "table_convention", "efficiency_tops_w", "{:.1f}");
  metric_row(fmt::format("efficiency, {:g} ops (TOPS/W)", sc.at("ops").get<double>()),
             "structural_convention", "efficiency_tops_w", "{:.1f}");
  metric_row(fmt::format("FoM, {:g} steps (fJ/step)", tc.at("steps").get<double>()),
             "table_convention", "fom_fj_per_step", "{:.2f}");
  metric_row(fmt::format("FoM, {:g} steps (fJ/step)", sc.at("steps").get<double>()),
             "structural_convention", "fom_fj_per_step", "{:.3g}");
  line(fmt::format("  {:<32}{:>16.2f}{:>16.2f}", "simulated activity (pJ/output)",
                   b.at("simulated_energy_per_output_pj").get<double>(),
                   c.at("simulated_energy_per_output_pj").get<double>()));
  line("");

  const json& ref = s.at("reference_point");
  line(fmt::format("reference point {:.2f} pJ/output @ {:g} MHz: power {:.2f} uW, efficiency "
                   "{:.1f} TOPS/W ({:g} ops) / {:.1f} TOPS/W ({:g} ops), FoM {:.2f} fJ/step",
                   ref.at("energy_pj").get<double>(), ref.at("rate_hz").get<double>() * 1e-6,
                   ref.at("power_uw").get<double>(), ref.at("efficiency_tops_w").get<double>(),
                   ref.at("ops").get<double>(), ref.at("structural_efficiency_tops_w").get<double>(),
                   ref.at("structural_ops").get<double>(), ref.at("fom_fj_per_step").get<double>()));
  line("");

  const json& red = s.at("reduction_percent");
  line(fmt::format("reduction: {:.1f}% ({} profile)", red.at("selected").get<double>(),
                   s.at("selected_profile").get<std::string>()));
  line(fmt::format("reduction by profile: calibrated {:.1f}%, naive {:.1f}%, simulated {:.1f}%",
                   red.at("calibrated").get<double>(), red.at("naive").get<double>(),
                   red.at("simulated").get<double>()));
  line("");

  for (const auto& [name, a] : {std::pair{base, b}, std::pair{cand, c}}) {
    const json& acc = a.at("accuracy");
    line(fmt::format("accuracy {:<13} rmse {:.6g}  max|err| {:.6g}  mean err {:.6g}  ({})", name,
                     acc.at("rmse").get<double>(), acc.at("max_abs").get<double>(),
                     acc.at("mean_error").get<double>(), acc.at("units").get<std::string>()));
  }
  for (const auto& a : {b, c}) {
    if (!a.contains("sense_amps")) continue;
    const json& sa = a.at("sense_amps");
    line(fmt::format("sense amplifiers: {} enabled, {} gated off ({:.1f}% saved)",
                     sa.at("enabled").get<std::uint64_t>(), sa.at("disabled").get<std::uint64_t>(),
                     sa.at("gating_saving_percent").get<double>()));
  }
  return out;
}

std::string trials_csv(const ExperimentResult& r) {
  std::string out = "trial,seed,decoded,oracle,error,voltage_v\n";
  for (std::size_t i = 0; i < r.trials.size(); ++i) {
    const TrialRecord& t = r.trials[i];
    out += fmt::format("{},{},{},{},{},{}\n", i, t.seed, format_number(t.decoded),
                       format_number(t.oracle), format_number(t.error()),
                       t.voltage ? format_number(*t.voltage) : std::string());
  }
  return out;
}

std::string energy_csv(const Comparison& c) {
  std::string out = "architecture,profile,category,count,unit_fj,energy_fj\n";
  for (const ExperimentResult* r : {&c.baseline, &c.candidate}) {
    const PipelineConfig& cfg = r->config;
    const ActivityLog& log = cfg.profile == ProfileKind::Simulated ? r->activity : cfg.profile_log;
    const double outputs = static_cast<double>(r->energy.outputs);
    for (const auto& [name, aj] : r->energy.category_aj) {
      out += fmt::format("{},{},{},{},{},{}\n", to_string(cfg.variant), to_string(cfg.profile), name,
                         format_number(static_cast<double>(log.count(name)) / outputs),
                         format_number(cfg.energy_table.unit_fj(name)),
                         format_number(static_cast<double>(aj) * 1e-3 / outputs));
    }
    out += fmt::format("{},{},total,,,{}\n", to_string(cfg.variant), to_string(cfg.profile),
                       format_number(r->energy.per_output_fj()));
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write '" + tmp.string() + "'");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw IoError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
}

SweepRow run_sweep_point(const SimConfig& base, const SweepPoint& point) {
  SimConfig cfg = base;
  cfg.mac.m = point.m;
  cfg.mac.n_inputs = point.n_inputs;
  cfg.stream_length = point.length;
  cfg.flip_p = point.flip_p;
  if (auto* g = std::get_if<ZeroPeakedGaussian>(&cfg.distribution)) g->sigma = point.sigma;

  const Comparison c = run_comparison(pipeline_config(cfg, Architecture::Conventional),
                                      pipeline_config(cfg, Architecture::Proposed));
  SweepRow row;
  row.point = point;
  row.conventional = c.baseline.stats;
  row.proposed = c.candidate.stats;
  row.conventional_pj = c.baseline.energy.per_output_pj();
  row.proposed_pj = c.candidate.energy.per_output_pj();
  row.reduction = c.reduction;
  return row;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "m,n_inputs,length,sigma,flip_p,conventional_rmse,conventional_max_abs,proposed_rmse,"
      "proposed_max_abs,conventional_pj,proposed_pj,reduction_percent\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", r.point.m, r.point.n_inputs,
                       r.point.length, format_number(r.point.sigma), format_number(r.point.flip_p),
                       format_number(r.conventional.rmse), format_number(r.conventional.max_abs),
                       format_number(r.proposed.rmse), format_number(r.proposed.max_abs),
                       format_number(r.conventional_pj), format_number(r.proposed_pj),
                       format_number(r.reduction));
  }
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("loglog_slope: need at least two (x, y) pairs");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw std::invalid_argument("loglog_slope: values must be positive");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(x.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<AscStatsRow> asc_gating_stats(std::size_t m, double sigma, double sa_fire_fj,
                                          std::size_t samples, std::uint64_t seed) {
  const RefLadder ladder = ref_ladder(m, 1.0);
  std::vector<AscStatsRow> rows;
  for (int kind = 0; kind < 2; ++kind) {
    const InputDistribution dist =
        kind == 0 ? InputDistribution{UniformInputs{}} : InputDistribution{ZeroPeakedGaussian{sigma}};
    const TrialInputs in = draw_inputs(dist, samples, seed);
    double enabled = 0.0;
    for (double x : in.samples) enabled += static_cast<double>(asc_encode(x, ladder).activity.enabled_count());

    AscStatsRow row;
    row.distribution = describe(dist);
    row.m = m;
    row.expected_enabled = kind == 0 ? expected_enabled_sas_uniform(m)
                                     : expected_enabled_sas(m, half_normal_tail(sigma));
    row.sampled_enabled = enabled / static_cast<double>(samples);
    row.saving = gating_saving(row.expected_enabled, m);
    row.energy_fj = row.expected_enabled * sa_fire_fj;
    rows.push_back(row);
  }
  return rows;
}

std::string asc_stats_csv(const std::vector<AscStatsRow>& rows) {
  std::string out = "distribution,m,expected_enabled,sampled_enabled,saving_percent,energy_fj\n";
  for (const auto& r : rows)
    out += fmt::format("{},{},{},{},{},{}\n", r.distribution, r.m, format_number(r.expected_enabled),
                       format_number(r.sampled_enabled), format_number(100.0 * r.saving),
                       format_number(r.energy_fj));
  return out;
}

}  // namespace scmem
