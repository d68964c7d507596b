// Copyright 2026 The imlp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Operation counters for an accelerator backend. Energy and latency are never
// accumulated directly; they are recomputed from the counters and the unit
// costs, so the accounting identity holds bit for bit.

#ifndef IMLP_TELEMETRY_HPP_
#define IMLP_TELEMETRY_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace imlp {

enum class Phase { kEncode = 0, kLanczos = 1, kPdhg = 2 };
inline constexpr int kNumPhases = 3;

std::string_view PhaseName(Phase phase);

// Per-operation costs in joules and seconds.
struct UnitCosts {
  double e_write = 0.0;  // per cell write pulse
  double e_read = 0.0;   // per cell read
  double t_write = 0.0;  // per write pulse, pulses are serial
  double t_read = 0.0;   // per MVM, tiles are read in parallel
};

struct Counters {
  std::uint64_t n_write_pulses = 0;
  std::uint64_t n_cell_reads = 0;
  std::uint64_t n_mvm_calls = 0;
  std::uint64_t n_encodes = 0;

  Counters& operator+=(const Counters& o);
  bool operator==(const Counters&) const = default;
};

double Energy(const Counters& c, const UnitCosts& u);
double Latency(const Counters& c, const UnitCosts& u);

class TelemetryLedger {
 public:
  TelemetryLedger() = default;
  explicit TelemetryLedger(UnitCosts costs) : costs_(costs) {}

  void set_phase(Phase phase) { phase_ = phase; }
  Phase phase() const { return phase_; }
  const UnitCosts& costs() const { return costs_; }

  void RecordWritePulses(std::uint64_t n) { current().n_write_pulses += n; }
  void RecordCellReads(std::uint64_t n) { current().n_cell_reads += n; }
  void RecordMvm() { ++current().n_mvm_calls; }
  void RecordEncode() { ++current().n_encodes; }

  Counters totals() const;
  const Counters& phase_counters(Phase p) const {
    return phases_[static_cast<int>(p)];
  }

  double energy_j() const { return Energy(totals(), costs_); }
  double latency_s() const { return Latency(totals(), costs_); }
  double energy_j(Phase p) const { return Energy(phase_counters(p), costs_); }
  double latency_s(Phase p) const { return Latency(phase_counters(p), costs_); }

  // JSON object with totals, unit costs and the per-phase breakdown.
  std::string ToJson() const;

 private:
  Counters& current() { return phases_[static_cast<int>(phase_)]; }

  UnitCosts costs_;
  Phase phase_ = Phase::kEncode;
  std::array<Counters, kNumPhases> phases_{};
};

}  // namespace imlp

#endif  // IMLP_TELEMETRY_HPP_
