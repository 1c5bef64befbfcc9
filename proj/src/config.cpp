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

#include "scmem/config.hpp"

#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <type_traits>

#include "scmem/errors.hpp"

namespace scmem {

using nlohmann::json;

namespace {

void allow_only(const json& obj, std::string_view section,
                std::initializer_list<std::string_view> keys) {
  if (!obj.is_object()) throw ConfigError(std::string(section) + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (auto k : keys) known = known || key == k;
    if (!known) throw ConfigError(std::string(section) + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read(const json& obj, std::string_view section, const char* key, T& out) {
  if (!obj.contains(key)) return;
  if constexpr (std::is_integral_v<T> && std::is_unsigned_v<T> && !std::is_same_v<T, bool>) {
    if (!obj.at(key).is_number_unsigned())
      throw ConfigError(std::string(section) + "." + key + ": expected a non-negative integer");
  }
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string(section) + "." + key + ": " + e.what());
  }
}

EnergyTable parse_table(const json& j, std::string_view section) {
  if (!j.is_object()) throw ConfigError(std::string(section) + ": expected an object");
  EnergyTable t;
  for (const auto& [name, value] : j.items()) {
    if (!value.is_number())
      throw ConfigError(std::string(section) + "." + name + ": expected a number (fJ)");
    try {
      t.set_fj(name, value.get<double>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return t;
}

json table_to_json(const EnergyTable& t) {
  json j = json::object();
  for (const auto& [name, aj] : t.entries()) j[name] = static_cast<double>(aj) / 1000.0;
  return j;
}

ActivityLog parse_counts(const json& j, std::string_view section) {
  if (!j.is_object()) throw ConfigError(std::string(section) + ": expected an object");
  ActivityLog log;
  log.add_outputs(1);
  for (const auto& [name, value] : j.items()) {
    if (!value.is_number_unsigned())
      throw ConfigError(std::string(section) + "." + name + ": expected a non-negative integer");
    log.add(name, value.get<std::uint64_t>());
  }
  return log;
}

json counts_to_json(const ActivityLog& log) {
  json j = json::object();
  for (const auto& [name, n] : log.counts()) j[name] = n;
  return j;
}

InputDistribution parse_distribution(const json& j) {
  allow_only(j, "experiment.distribution", {"kind", "sigma", "samples", "weights"});
  std::string kind = "zero_peaked_gaussian";
  read(j, "experiment.distribution", "kind", kind);
  if (kind == "uniform") return UniformInputs{};
  if (kind == "zero_peaked_gaussian") {
    ZeroPeakedGaussian g;
    read(j, "experiment.distribution", "sigma", g.sigma);
    return g;
  }
  if (kind == "explicit") {
    ExplicitInputs e;
    read(j, "experiment.distribution", "samples", e.samples);
    read(j, "experiment.distribution", "weights", e.weights);
    return e;
  }
  throw ConfigError("experiment.distribution.kind: unknown kind '" + kind + "'");
}

json distribution_to_json(const InputDistribution& d) {
  if (std::holds_alternative<UniformInputs>(d)) return {{"kind", "uniform"}};
  if (const auto* g = std::get_if<ZeroPeakedGaussian>(&d))
    return {{"kind", "zero_peaked_gaussian"}, {"sigma", g->sigma}};
  const auto& e = std::get<ExplicitInputs>(d);
  return {{"kind", "explicit"}, {"samples", e.samples}, {"weights", e.weights}};
}

}  // namespace

SimConfig default_config() {
  SimConfig cfg;
  const DefaultTables tables = default_tables(static_cast<unsigned>(cfg.mac.m));
  cfg.conventional_table = tables.conventional;
  for (const auto& [name, aj] : tables.proposed.entries())
    if (name != events::kSaFire) cfg.proposed_table.set_aj(name, aj);
  cfg.conventional_calibrated = calibrated_profile(Architecture::Conventional);
  cfg.proposed_calibrated = calibrated_profile(Architecture::Proposed);
  return cfg;
}

SimConfig parse_config(const json& j) {
  SimConfig cfg = default_config();
  allow_only(j, "config", {"schema_version", "pipeline", "mac", "energy_tables", "experiment"});
  int version = kConfigSchemaVersion;
  read(j, "config", "schema_version", version);
  if (version != kConfigSchemaVersion)
    throw ConfigError("config: unsupported schema_version " + std::to_string(version));

  if (j.contains("pipeline")) {
    const json& p = j.at("pipeline");
    allow_only(p, "pipeline",
               {"binary_bits", "stream_length", "lfsr_width", "lfsr_taps", "mux_select",
                "asc_gating", "flip_p", "rate_hz"});
    read(p, "pipeline", "binary_bits", cfg.binary_bits);
    read(p, "pipeline", "stream_length", cfg.stream_length);
    read(p, "pipeline", "lfsr_width", cfg.lfsr_width);
    read(p, "pipeline", "lfsr_taps", cfg.lfsr_taps);
    std::string select = "lfsr";
    read(p, "pipeline", "mux_select", select);
    if (select == "lfsr") cfg.select = SelectKind::Lfsr;
    else if (select == "alternating") cfg.select = SelectKind::Alternating;
    else throw ConfigError("pipeline.mux_select: expected 'lfsr' or 'alternating'");
    read(p, "pipeline", "asc_gating", cfg.asc_gating);
    read(p, "pipeline", "flip_p", cfg.flip_p);
    read(p, "pipeline", "rate_hz", cfg.rate_hz);
  }

  if (j.contains("mac")) {
    const json& m = j.at("mac");
    allow_only(m, "mac", {"m", "n_inputs", "vdd"});
    read(m, "mac", "m", cfg.mac.m);
    read(m, "mac", "n_inputs", cfg.mac.n_inputs);
    read(m, "mac", "vdd", cfg.mac.vdd);
  }

  if (j.contains("energy_tables")) {
    const json& e = j.at("energy_tables");
    allow_only(e, "energy_tables",
               {"profile", "conventional", "proposed", "calibrated_profile", "metrics"});
    if (e.contains("profile")) {
      try {
        cfg.profile = parse_profile_kind(e.at("profile").get<std::string>());
      } catch (const std::exception& ex) {
        throw ConfigError(std::string("energy_tables.profile: ") + ex.what());
      }
    }
    if (e.contains("conventional"))
      cfg.conventional_table = parse_table(e.at("conventional"), "energy_tables.conventional");
    if (e.contains("proposed"))
      cfg.proposed_table = parse_table(e.at("proposed"), "energy_tables.proposed");
    if (e.contains("calibrated_profile")) {
      const json& c = e.at("calibrated_profile");
      allow_only(c, "energy_tables.calibrated_profile", {"conventional", "proposed"});
      if (c.contains("conventional"))
        cfg.conventional_calibrated =
            parse_counts(c.at("conventional"), "energy_tables.calibrated_profile.conventional");
      if (c.contains("proposed"))
        cfg.proposed_calibrated =
            parse_counts(c.at("proposed"), "energy_tables.calibrated_profile.proposed");
    }
    if (e.contains("metrics")) {
      const json& m = e.at("metrics");
      allow_only(m, "energy_tables.metrics", {"ops_per_output", "fom_steps"});
      read(m, "energy_tables.metrics", "ops_per_output", cfg.metrics.ops_per_output);
      read(m, "energy_tables.metrics", "fom_steps", cfg.metrics.fom_steps);
      if (!(cfg.metrics.ops_per_output > 0) || !(cfg.metrics.fom_steps > 0))
        throw ConfigError("energy_tables.metrics: ops_per_output and fom_steps must be positive");
    }
  }

  if (j.contains("experiment")) {
    const json& x = j.at("experiment");
    allow_only(x, "experiment", {"trials", "seed", "distribution"});
    read(x, "experiment", "trials", cfg.trials);
    read(x, "experiment", "seed", cfg.seed);
    if (x.contains("distribution")) cfg.distribution = parse_distribution(x.at("distribution"));
  }

  // Surface range errors now rather than at run time.
  try {
    pipeline_config(cfg, Architecture::Conventional).validate();
    pipeline_config(cfg, Architecture::Proposed).validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const SizeMismatchError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "': " + e.what());
  }
  return parse_config(j);
}

json to_json(const SimConfig& cfg) {
  json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["pipeline"] = {
      {"binary_bits", cfg.binary_bits},
      {"stream_length", cfg.stream_length},
      {"lfsr_width", cfg.lfsr_width},
      {"lfsr_taps", cfg.lfsr_taps},
      {"mux_select", cfg.select == SelectKind::Lfsr ? "lfsr" : "alternating"},
      {"asc_gating", cfg.asc_gating},
      {"flip_p", cfg.flip_p},
      {"rate_hz", cfg.rate_hz},
  };
  j["mac"] = {{"m", cfg.mac.m}, {"n_inputs", cfg.mac.n_inputs}, {"vdd", cfg.mac.vdd}};
  j["energy_tables"] = {
      {"profile", std::string(to_string(cfg.profile))},
      {"conventional", table_to_json(cfg.conventional_table)},
      {"proposed", table_to_json(cfg.proposed_table)},
      {"calibrated_profile",
       {{"conventional", counts_to_json(cfg.conventional_calibrated)},
        {"proposed", counts_to_json(cfg.proposed_calibrated)}}},
      {"metrics",
       {{"ops_per_output", cfg.metrics.ops_per_output}, {"fom_steps", cfg.metrics.fom_steps}}},
  };
  j["experiment"] = {{"trials", cfg.trials},
                     {"seed", cfg.seed},
                     {"distribution", distribution_to_json(cfg.distribution)}};
  return j;
}

PipelineConfig pipeline_config(const SimConfig& cfg, Architecture variant) {
  PipelineConfig p;
  p.variant = variant;
  p.mac = cfg.mac;
  p.binary_bits = cfg.binary_bits;
  p.stream_length = cfg.stream_length;
  p.lfsr_width = cfg.lfsr_width;
  p.lfsr_taps = cfg.lfsr_taps;
  p.select = cfg.select;
  p.asc_gating = cfg.asc_gating;
  p.rate_hz = cfg.rate_hz;
  p.distribution = cfg.distribution;
  p.flip_p = cfg.flip_p;
  p.seed = cfg.seed;
  p.trials = cfg.trials;
  p.profile = cfg.profile;
  if (variant == Architecture::Conventional) {
    p.energy_table = cfg.conventional_table;
    p.profile_log = cfg.profile == ProfileKind::Naive ? naive_profile(variant)
                                                      : cfg.conventional_calibrated;
  } else {
    p.energy_table = cfg.proposed_table;
    if (!p.energy_table.contains(events::kSaFire) && cfg.mac.m > 0) {
      const auto asc = p.energy_table.unit_aj(events::kAscConvert).value_or(0);
      const auto m = static_cast<std::int64_t>(cfg.mac.m);
      p.energy_table.set_aj(events::kSaFire, (asc + m / 2) / m);
    }
    p.profile_log =
        cfg.profile == ProfileKind::Naive ? naive_profile(variant) : cfg.proposed_calibrated;
  }
  return p;
}

}  // namespace scmem
