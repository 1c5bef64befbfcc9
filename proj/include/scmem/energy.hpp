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

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace scmem {

enum class Architecture { Conventional, Proposed };

std::string_view to_string(Architecture a);

namespace events {
inline constexpr std::string_view kSramCellAccess = "sram_cell_access";
inline constexpr std::string_view kAdcConvert = "adc_convert";
inline constexpr std::string_view kBscConvert = "bsc_convert";
inline constexpr std::string_view kSbcConvert = "sbc_convert";
inline constexpr std::string_view kScLogicEval = "sc_logic_eval";
inline constexpr std::string_view kAscConvert = "asc_convert";
inline constexpr std::string_view kMixedSignalMacEval = "mixed_signal_mac_eval";
inline constexpr std::string_view kSaFire = "sa_fire";
}  // namespace events

// Unit energies per event. Stored as integer attojoules so that energy
// accounting is exact and linear in the event counts.
class EnergyTable {
 public:
  void set_fj(std::string_view event, double femtojoules);
  void set_aj(std::string_view event, std::int64_t attojoules);

  bool contains(std::string_view event) const;
  std::optional<std::int64_t> unit_aj(std::string_view event) const;
  double unit_fj(std::string_view event) const;  // 0 when absent

  const std::map<std::string, std::int64_t, std::less<>>& entries() const { return unit_aj_; }

  // Every entry multiplied by k.
  EnergyTable scaled(std::int64_t k) const;

  friend bool operator==(const EnergyTable&, const EnergyTable&) = default;

 private:
  std::map<std::string, std::int64_t, std::less<>> unit_aj_;
};

struct DefaultTables {
  EnergyTable conventional;
  EnergyTable proposed;
};

// Per-module energies of the 28 nm comparison at 10 MHz. The LFSR +
// comparator unit is the BSC and the counter is the SBC. sa_fire is
// asc_convert / asc_bits, so an ASC with every SA enabled costs one
// asc_convert.
DefaultTables default_tables(unsigned asc_bits = 15);

// Event counts for a run. `outputs` is the number of MAC results the counts
// cover; reports are normalised per output.
class ActivityLog {
 public:
  void add(std::string_view event, std::uint64_t count = 1);
  void add_outputs(std::uint64_t n) { outputs_ += n; }
  void add_sense_amps(std::uint64_t enabled, std::uint64_t disabled) {
    sa_enabled_ += enabled;
    sa_disabled_ += disabled;
  }

  std::uint64_t count(std::string_view event) const;
  std::uint64_t outputs() const { return outputs_; }
  std::uint64_t sa_enabled() const { return sa_enabled_; }
  std::uint64_t sa_disabled() const { return sa_disabled_; }
  const std::map<std::string, std::uint64_t, std::less<>>& counts() const { return counts_; }

  // Associative, commutative merge.
  ActivityLog& merge(const ActivityLog& other);
  ActivityLog scaled(std::uint64_t k) const;

  friend bool operator==(const ActivityLog&, const ActivityLog&) = default;

 private:
  std::map<std::string, std::uint64_t, std::less<>> counts_;
  std::uint64_t outputs_ = 0;
  std::uint64_t sa_enabled_ = 0;
  std::uint64_t sa_disabled_ = 0;
};

ActivityLog operator+(ActivityLog a, const ActivityLog& b);

struct EnergyReport {
  std::map<std::string, std::int64_t> category_aj;
  std::int64_t total_aj = 0;
  std::uint64_t outputs = 1;

  double category_fj(std::string_view event) const;
  double total_fj() const { return static_cast<double>(total_aj) * 1e-3; }
  double per_output_fj() const;
  double per_output_pj() const { return per_output_fj() * 1e-3; }
  double per_output_joules() const { return per_output_fj() * 1e-15; }
  double power_uw(double rate_hz) const;
};

// Dot product of counts and unit energies. Throws std::invalid_argument for
// a logged event the table does not price.
EnergyReport accumulate(const ActivityLog& log, const EnergyTable& table);

// Operations per joule, i.e. ops/s/W; the output rate cancels.
double efficiency(double ops_per_output, double energy_per_output_joules);

// Joules per quantization step per operation.
double fom(double energy_per_output_joules, double steps, double ops);

// 100 * (1 - candidate / baseline), on per-output energy.
double reduction_percent(const EnergyReport& baseline, const EnergyReport& candidate);

// ---- activity profiles --------------------------------------------------

enum class ProfileKind { Simulated, Naive, Calibrated };

std::string_view to_string(ProfileKind k);
ProfileKind parse_profile_kind(std::string_view name);

// One event per logical module action for a single output.
ActivityLog naive_profile(Architecture a);

// Per-output counts back-solved so that the default tables give 0.91 pJ per
// output and an 82.1% reduction. A calibration, not a measurement.
//   proposed:     31 cell accesses, 2 ASC conversions, 1 MAC evaluation
//   conventional:  9 cell accesses, 2 ADC, 2 BSC, 1 SBC, 4 SC-logic passes
ActivityLog calibrated_profile(Architecture a);

// ---- ASC sense-amplifier gating -------------------------------------------

// P(x >= t) for a normalised input x in [0, 1].
using TailProbability = std::function<double(double)>;

// Under chain gating SA 0 always fires and SA i fires iff x >= i / (m+1).
double expected_enabled_sas(std::size_t m, const TailProbability& tail);

// Closed form for x ~ U[0, 1]: m - m (m - 1) / (2 (m + 1)).
double expected_enabled_sas_uniform(std::size_t m);

// |N(0, sigma)| clamped to 1.
TailProbability half_normal_tail(double sigma);
TailProbability uniform_tail();

// Fraction of SA evaluations saved relative to an ungated bank of m.
double gating_saving(double expected_enabled, std::size_t m);

}  // namespace scmem
