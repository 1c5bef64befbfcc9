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

#include "scmem/mac_engine.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "scmem/errors.hpp"
#include "scmem/sc_ops.hpp"

namespace scmem {

void MacConfig::validate() const {
  if (m < 1) throw std::invalid_argument("MacConfig: m must be at least 1");
  if (n_inputs < 1) throw std::invalid_argument("MacConfig: N must be at least 1");
  if (!(vdd > 0.0) || !std::isfinite(vdd))
    throw std::invalid_argument("MacConfig: vdd must be positive");
}

void validate(const MacInputs& inputs, const MacConfig& cfg) {
  cfg.validate();
  if (inputs.in.size() != cfg.n_inputs || inputs.w.size() != cfg.n_inputs)
    throw SizeMismatchError("MacInputs: expected " + std::to_string(cfg.n_inputs) +
                            " IN/W pairs, got " + std::to_string(inputs.in.size()) + "/" +
                            std::to_string(inputs.w.size()));
  for (std::size_t i = 0; i < cfg.n_inputs; ++i) {
    if (inputs.in[i].length() != cfg.m || inputs.w[i].magnitude.length() != cfg.m)
      throw SizeMismatchError("MacInputs: pair " + std::to_string(i) + " is not " +
                              std::to_string(cfg.m) + " bits wide");
  }
}

SwitchState switches_for(MacPhase phase) {
  switch (phase) {
    case MacPhase::Idle:
      return {false, false, false};
    case MacPhase::Accumulate:
      return {true, true, false};
    case MacPhase::Share:
      return {true, false, true};
  }
  throw std::logic_error("switches_for: unknown phase");
}

std::vector<Bitstream> product_streams(const MacInputs& inputs) {
  if (inputs.in.size() != inputs.w.size())
    throw SizeMismatchError("product_streams: IN and W counts differ");
  std::vector<Bitstream> out;
  out.reserve(inputs.in.size());
  for (std::size_t i = 0; i < inputs.in.size(); ++i)
    out.push_back(sc_mul(inputs.in[i], inputs.w[i].magnitude));
  return out;
}

ProductCounts count_product_streams(const std::vector<Bitstream>& products,
                                    const std::vector<bool>& positive, const MacConfig& cfg) {
  if (products.size() != cfg.n_inputs || positive.size() != cfg.n_inputs)
    throw SizeMismatchError("count_product_streams: expected " + std::to_string(cfg.n_inputs) +
                            " products");
  ProductCounts c;
  for (std::size_t i = 0; i < products.size(); ++i) {
    if (products[i].length() != cfg.m)
      throw SizeMismatchError("count_product_streams: product stream is not m bits wide");
    (positive[i] ? c.n_p : c.n_n) += products[i].ones();
  }
  return c;
}

ProductCounts count_products(const MacInputs& inputs, const MacConfig& cfg) {
  validate(inputs, cfg);
  ProductCounts c;
  for (std::size_t i = 0; i < cfg.n_inputs; ++i) {
    std::uint64_t ones = 0;
    for (std::size_t j = 0; j < cfg.m; ++j) ones += inputs.in[i][j] && inputs.w[i].magnitude[j];
    (inputs.w[i].positive ? c.n_p : c.n_n) += ones;
  }
  return c;
}

PhaseVoltages phase1_voltages(const ProductCounts& c, const MacConfig& cfg) {
  cfg.validate();
  const std::uint64_t mn = cfg.products();
  if (c.n_p > mn || c.n_n > mn)
    throw std::out_of_range("phase1_voltages: product count exceeds m*N");
  const double caps = static_cast<double>(mn + 1);
  return {static_cast<double>(c.n_p) / caps * cfg.vdd,
          static_cast<double>(mn - c.n_n) / caps * cfg.vdd};
}

double charge_share(double vp, double vn, const MacConfig& cfg) {
  cfg.validate();
  // Both arrays hold m*N + 1 unit caps, so the shared node settles at the mean.
  return 0.5 * (vp + vn);
}

MacResult mac_evaluate(const ProductCounts& counts, const MacConfig& cfg) {
  MacResult r;
  r.counts = counts;
  r.phase1 = phase1_voltages(counts, cfg);
  r.voltage = charge_share(r.phase1.vp, r.phase1.vn, cfg);
  return r;
}

MacResult mac_evaluate(const MacInputs& inputs, const MacConfig& cfg) {
  return mac_evaluate(count_products(inputs, cfg), cfg);
}

std::int64_t decode_voltage(double v, const MacConfig& cfg) {
  cfg.validate();
  const double mn = static_cast<double>(cfg.products());
  const double top = mn / (mn + 1.0) * cfg.vdd;
  const double slack = 1e-9 * cfg.vdd;
  if (!(v >= -slack && v <= top + slack))
    throw std::out_of_range("decode_voltage: " + std::to_string(v) + " V outside [0, " +
                            std::to_string(top) + "] V");
  return static_cast<std::int64_t>(std::llround(2.0 * v / cfg.vdd * (mn + 1.0) - mn));
}

namespace {

struct NodeCharge {
  double charge = 0.0;
  double capacitance = 0.0;
  double voltage() const { return charge / capacitance; }
};

double cap_scale(const std::vector<double>& scales, std::size_t k) {
  return scales.empty() ? 1.0 : scales.at(k);
}

}  // namespace

ChargeOracleResult charge_oracle(const MacInputs& inputs, const MacConfig& cfg,
                                 const std::optional<CapacitorMismatch>& mismatch) {
  validate(inputs, cfg);
  const std::size_t caps = cfg.caps_per_side();
  const std::vector<double> none;
  const auto& pos_scale = mismatch ? mismatch->positive : none;
  const auto& neg_scale = mismatch ? mismatch->negative : none;
  if ((!pos_scale.empty() && pos_scale.size() != caps) ||
      (!neg_scale.empty() && neg_scale.size() != caps))
    throw SizeMismatchError("charge_oracle: mismatch vectors must cover m*N + 1 caps");

  // Bottom-plate drive voltages during accumulation.
  std::vector<double> pos_drive(caps, 0.0);
  std::vector<double> neg_drive(caps, cfg.vdd);
  for (std::size_t i = 0; i < cfg.n_inputs; ++i) {
    const bool positive = inputs.w[i].positive;
    for (std::size_t j = 0; j < cfg.m; ++j) {
      const bool product = inputs.in[i][j] && inputs.w[i].magnitude[j];
      const std::size_t k = i * cfg.m + j;
      if (positive && product) pos_drive[k] = cfg.vdd;
      if (!positive && product) neg_drive[k] = 0.0;
    }
  }
  pos_drive[caps - 1] = 0.0;
  neg_drive[caps - 1] = 0.0;

  NodeCharge pos;
  NodeCharge neg;
  for (std::size_t k = 0; k < caps; ++k) {
    const double cp = cap_scale(pos_scale, k);
    const double cn = cap_scale(neg_scale, k);
    pos.charge += cp * pos_drive[k];
    pos.capacitance += cp;
    neg.charge += cn * neg_drive[k];
    neg.capacitance += cn;
  }

  ChargeOracleResult r;
  r.vp = pos.voltage();
  r.vn = neg.voltage();
  r.charge_before_share = pos.charge + neg.charge;
  const NodeCharge shared{r.charge_before_share, pos.capacitance + neg.capacitance};
  r.voltage = shared.voltage();
  r.charge_after_share = shared.capacitance * r.voltage;
  return r;
}

}  // namespace scmem
