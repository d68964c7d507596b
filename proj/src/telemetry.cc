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

#include "imlp/telemetry.hpp"

#include "json.hpp"

namespace imlp {

std::string_view PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kEncode:
      return "encode";
    case Phase::kLanczos:
      return "lanczos";
    case Phase::kPdhg:
      return "pdhg";
  }
  return "unknown";
}

Counters& Counters::operator+=(const Counters& o) {
  n_write_pulses += o.n_write_pulses;
  n_cell_reads += o.n_cell_reads;
  n_mvm_calls += o.n_mvm_calls;
  n_encodes += o.n_encodes;
  return *this;
}

double Energy(const Counters& c, const UnitCosts& u) {
  return static_cast<double>(c.n_write_pulses) * u.e_write +
         static_cast<double>(c.n_cell_reads) * u.e_read;
}

double Latency(const Counters& c, const UnitCosts& u) {
  return static_cast<double>(c.n_write_pulses) * u.t_write +
         static_cast<double>(c.n_mvm_calls) * u.t_read;
}

Counters TelemetryLedger::totals() const {
  Counters sum;
  for (const Counters& c : phases_) sum += c;
  return sum;
}

namespace {

nlohmann::json CountersJson(const Counters& c, const UnitCosts& u) {
  return {
      {"n_write_pulses", c.n_write_pulses}, {"n_cell_reads", c.n_cell_reads},
      {"n_mvm_calls", c.n_mvm_calls},       {"n_encodes", c.n_encodes},
      {"energy_j", Energy(c, u)},           {"latency_s", Latency(c, u)}};
}

}  // namespace

std::string TelemetryLedger::ToJson() const {
  nlohmann::json doc = CountersJson(totals(), costs_);
  doc["unit_costs"] = {{"e_write", costs_.e_write},
                       {"e_read", costs_.e_read},
                       {"t_write", costs_.t_write},
                       {"t_read", costs_.t_read}};
  nlohmann::json phases = nlohmann::json::object();
  for (int p = 0; p < kNumPhases; ++p) {
    const auto phase = static_cast<Phase>(p);
    phases[std::string(PhaseName(phase))] =
        CountersJson(phase_counters(phase), costs_);
  }
  doc["phases"] = phases;
  return doc.dump(2) + "\n";
}

}  // namespace imlp
