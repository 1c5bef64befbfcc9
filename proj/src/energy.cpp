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

#include "scmem/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace scmem {

std::string_view to_string(Architecture a) {
  return a == Architecture::Conventional ? "conventional" : "proposed";
}

void EnergyTable::set_fj(std::string_view event, double femtojoules) {
  if (!(femtojoules >= 0.0) || !std::isfinite(femtojoules))
    throw std::invalid_argument("EnergyTable: energy for '" + std::string(event) +
                                "' must be a finite value >= 0");
  set_aj(event, std::llround(femtojoules * 1000.0));
}

void EnergyTable::set_aj(std::string_view event, std::int64_t attojoules) {
  if (attojoules < 0)
    throw std::invalid_argument("EnergyTable: negative energy for '" + std::string(event) + "'");
  unit_aj_[std::string(event)] = attojoules;
}

bool EnergyTable::contains(std::string_view event) const { return unit_aj_.contains(event); }

std::optional<std::int64_t> EnergyTable::unit_aj(std::string_view event) const {
  const auto it = unit_aj_.find(event);
  if (it == unit_aj_.end()) return std::nullopt;
  return it->second;
}

double EnergyTable::unit_fj(std::string_view event) const {
  return static_cast<double>(unit_aj(event).value_or(0)) * 1e-3;
}

EnergyTable EnergyTable::scaled(std::int64_t k) const {
  EnergyTable t;
  for (const auto& [name, aj] : unit_aj_) t.set_aj(name, aj * k);
  return t;
}

DefaultTables default_tables(unsigned asc_bits) {
  if (asc_bits == 0) throw std::invalid_argument("default_tables: asc_bits must be positive");
  DefaultTables t;
  t.conventional.set_fj(events::kSramCellAccess, 28.00);
  t.conventional.set_fj(events::kAdcConvert, 2150.0);
  t.conventional.set_fj(events::kBscConvert, 141.61);
  t.conventional.set_fj(events::kSbcConvert, 185.54);
  t.conventional.set_fj(events::kScLogicEval, 20.26);

  t.proposed.set_fj(events::kSramCellAccess, 28.00);
  t.proposed.set_fj(events::kAscConvert, 16.20);
  t.proposed.set_fj(events::kMixedSignalMacEval, 11.86);
  const std::int64_t asc_aj = *t.proposed.unit_aj(events::kAscConvert);
  t.proposed.set_aj(events::kSaFire, (asc_aj + asc_bits / 2) / asc_bits);
  return t;
}

void ActivityLog::add(std::string_view event, std::uint64_t count) {
  auto it = counts_.find(event);
  if (it == counts_.end()) it = counts_.emplace(std::string(event), 0).first;
  it->second += count;
}

std::uint64_t ActivityLog::count(std::string_view event) const {
  const auto it = counts_.find(event);
  return it == counts_.end() ? 0 : it->second;
}

ActivityLog& ActivityLog::merge(const ActivityLog& other) {
  for (const auto& [name, n] : other.counts_) add(name, n);
  outputs_ += other.outputs_;
  sa_enabled_ += other.sa_enabled_;
  sa_disabled_ += other.sa_disabled_;
  return *this;
}

ActivityLog ActivityLog::scaled(std::uint64_t k) const {
  ActivityLog out = *this;
  for (auto& [name, n] : out.counts_) n *= k;
  out.outputs_ *= k;
  out.sa_enabled_ *= k;
  out.sa_disabled_ *= k;
  return out;
}

ActivityLog operator+(ActivityLog a, const ActivityLog& b) { return a.merge(b); }

double EnergyReport::category_fj(std::string_view event) const {
  const auto it = category_aj.find(std::string(event));
  return it == category_aj.end() ? 0.0 : static_cast<double>(it->second) * 1e-3;
}

double EnergyReport::per_output_fj() const {
  return total_fj() / static_cast<double>(outputs == 0 ? 1 : outputs);
}

double EnergyReport::power_uw(double rate_hz) const {
  return per_output_joules() * rate_hz * 1e6;
}

EnergyReport accumulate(const ActivityLog& log, const EnergyTable& table) {
  EnergyReport r;
  r.outputs = log.outputs() == 0 ? 1 : log.outputs();
  for (const auto& [name, n] : log.counts()) {
    const auto unit = table.unit_aj(name);
    if (!unit) throw std::invalid_argument("accumulate: no unit energy for event '" + name + "'");
    const std::int64_t e = static_cast<std::int64_t>(n) * *unit;
    r.category_aj[name] = e;
    r.total_aj += e;
  }
  return r;
}

double efficiency(double ops_per_output, double energy_per_output_joules) {
  if (!(ops_per_output > 0.0)) throw std::invalid_argument("efficiency: ops must be positive");
  if (!(energy_per_output_joules > 0.0))
    throw std::invalid_argument("efficiency: energy must be positive");
  return ops_per_output / energy_per_output_joules;
}

double fom(double energy_per_output_joules, double steps, double ops) {
  if (!(steps > 0.0) || !(ops > 0.0))
    throw std::invalid_argument("fom: steps and ops must be positive");
  return energy_per_output_joules / (steps * ops);
}

double reduction_percent(const EnergyReport& baseline, const EnergyReport& candidate) {
  if (!(baseline.per_output_fj() > 0.0))
    throw std::invalid_argument("reduction_percent: baseline energy is zero");
  return 100.0 * (1.0 - candidate.per_output_fj() / baseline.per_output_fj());
}

std::string_view to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::Simulated:
      return "simulated";
    case ProfileKind::Naive:
      return "naive";
    case ProfileKind::Calibrated:
      return "calibrated";
  }
  return "?";
}

ProfileKind parse_profile_kind(std::string_view name) {
  if (name == "simulated") return ProfileKind::Simulated;
  if (name == "naive") return ProfileKind::Naive;
  if (name == "calibrated") return ProfileKind::Calibrated;
  throw std::invalid_argument("unknown activity profile '" + std::string(name) + "'");
}

ActivityLog naive_profile(Architecture a) {
  ActivityLog log;
  log.add_outputs(1);
  log.add(events::kSramCellAccess);
  if (a == Architecture::Conventional) {
    log.add(events::kAdcConvert);
    log.add(events::kBscConvert);
    log.add(events::kSbcConvert);
    log.add(events::kScLogicEval);
  } else {
    log.add(events::kAscConvert);
    log.add(events::kMixedSignalMacEval);
  }
  return log;
}

ActivityLog calibrated_profile(Architecture a) {
  ActivityLog log;
  log.add_outputs(1);
  if (a == Architecture::Conventional) {
    log.add(events::kSramCellAccess, 9);
    log.add(events::kAdcConvert, 2);
    log.add(events::kBscConvert, 2);
    log.add(events::kSbcConvert, 1);
    log.add(events::kScLogicEval, 4);
  } else {
    log.add(events::kSramCellAccess, 31);
    log.add(events::kAscConvert, 2);
    log.add(events::kMixedSignalMacEval, 1);
  }
  return log;
}

double expected_enabled_sas(std::size_t m, const TailProbability& tail) {
  if (m == 0) throw std::invalid_argument("expected_enabled_sas: m must be positive");
  double e = 1.0;
  for (std::size_t i = 1; i < m; ++i)
    e += tail(static_cast<double>(i) / static_cast<double>(m + 1));
  return e;
}

double expected_enabled_sas_uniform(std::size_t m) {
  if (m == 0) throw std::invalid_argument("expected_enabled_sas_uniform: m must be positive");
  const double md = static_cast<double>(m);
  return md - md * (md - 1.0) / (2.0 * (md + 1.0));
}

TailProbability half_normal_tail(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("half_normal_tail: sigma must be positive");
  return [sigma](double t) {
    if (t <= 0.0) return 1.0;
    if (t > 1.0) return 0.0;
    return std::erfc(t / (sigma * std::sqrt(2.0)));
  };
}

TailProbability uniform_tail() {
  return [](double t) {
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    return 1.0 - t;
  };
}

double gating_saving(double expected_enabled, std::size_t m) {
  if (m == 0) throw std::invalid_argument("gating_saving: m must be positive");
  return 1.0 - expected_enabled / static_cast<double>(m);
}

}  // namespace scmem
