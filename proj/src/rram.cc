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

#include "imlp/rram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "imlp/error.hpp"
#include "imlp/problem_io.hpp"
#include "json.hpp"

namespace imlp {
namespace {

using nlohmann::json;

constexpr std::uint32_t kWriteSalt = 0x57;
constexpr std::uint32_t kReadSalt = 0x52;
constexpr double kReadNoiseTruncation = 4.0;

std::mt19937_64 TileStream(std::uint64_t seed, std::uint32_t salt,
                           std::size_t ti, std::size_t tj) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      salt, static_cast<std::uint32_t>(ti), static_cast<std::uint32_t>(tj)};
  return std::mt19937_64(seq);
}

// Standard normal truncated to [-4, 4] by rejection.
double TruncatedNormal(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  for (;;) {
    const double z = normal(rng);
    if (std::abs(z) <= kReadNoiseTruncation) return z;
  }
}

// Keep these in sync with profiles/*.json.
const char* const kEpiramJson = R"({
  "name": "epiram",
  "notes": "energy and latency figures are calibration placeholders",
  "crossbar_rows": 64, "crossbar_cols": 64,
  "grid_rows": 4, "grid_cols": 4,
  "g_min": 2e-6, "g_max": 5e-5,
  "levels": 256,
  "write_noise_sigma": 0.0015,
  "read_noise_sigma": 5e-4,
  "verify_tolerance": 1e-3,
  "max_write_pulses": 30,
  "e_write": 1e-12, "e_read": 5e-16,
  "t_write": 5e-8, "t_read": 5e-9,
  "count_padded_lanes": true
})";

const char* const kTaoxHfoxJson = R"({
  "name": "taox-hfox",
  "notes": "energy and latency figures are calibration placeholders",
  "crossbar_rows": 64, "crossbar_cols": 64,
  "grid_rows": 4, "grid_cols": 4,
  "g_min": 1e-6, "g_max": 1e-4,
  "levels": 256,
  "write_noise_sigma": 0.002,
  "read_noise_sigma": 1e-3,
  "verify_tolerance": 1e-3,
  "max_write_pulses": 30,
  "e_write": 2e-12, "e_read": 1e-15,
  "t_write": 1e-7, "t_read": 1e-8,
  "count_padded_lanes": true
})";

template <typename T>
T Required(const json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw ValidationError(std::string("profile is missing field '") + key +
                          "'");
  }
  try {
    return doc[key].get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("profile field '") + key +
                          "' has the wrong type");
  }
}

}  // namespace

void ValidateProfile(const DeviceProfile& p) {
  auto fail = [&](const std::string& what) {
    throw ValidationError("profile '" + p.name + "': " + what);
  };
  if (p.crossbar_rows == 0 || p.crossbar_cols == 0) {
    fail("crossbar dimensions must be positive");
  }
  if (p.grid_rows == 0 || p.grid_cols == 0) fail("grid must be non-empty");
  if (!(std::isfinite(p.g_min) && std::isfinite(p.g_max) && p.g_min >= 0.0)) {
    fail("g_min and g_max must be finite and g_min >= 0");
  }
  if (!(p.g_min < p.g_max)) fail("g_min must be < g_max");
  if (p.levels < 2) fail("levels must be >= 2");
  if (!(p.write_noise_sigma >= 0.0) || !(p.read_noise_sigma >= 0.0)) {
    fail("noise sigmas must be >= 0");
  }
  if (!(p.verify_tolerance > 0.0)) fail("verify_tolerance must be > 0");
  if (p.max_write_pulses < 1) fail("max_write_pulses must be >= 1");
  for (double c : {p.e_write, p.e_read, p.t_write, p.t_read}) {
    if (!(c >= 0.0) || !std::isfinite(c)) fail("unit costs must be >= 0");
  }
}

DeviceProfile ProfileFromJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), 0, 0);
  }
  if (!doc.is_object()) throw ValidationError("profile must be a JSON object");
  DeviceProfile p;
  p.name = Required<std::string>(doc, "name");
  p.crossbar_rows = Required<std::size_t>(doc, "crossbar_rows");
  p.crossbar_cols = Required<std::size_t>(doc, "crossbar_cols");
  p.grid_rows = Required<std::size_t>(doc, "grid_rows");
  p.grid_cols = Required<std::size_t>(doc, "grid_cols");
  p.g_min = Required<double>(doc, "g_min");
  p.g_max = Required<double>(doc, "g_max");
  p.levels = Required<int>(doc, "levels");
  p.write_noise_sigma = Required<double>(doc, "write_noise_sigma");
  p.read_noise_sigma = Required<double>(doc, "read_noise_sigma");
  p.verify_tolerance = Required<double>(doc, "verify_tolerance");
  p.max_write_pulses = Required<int>(doc, "max_write_pulses");
  p.e_write = Required<double>(doc, "e_write");
  p.e_read = Required<double>(doc, "e_read");
  p.t_write = Required<double>(doc, "t_write");
  p.t_read = Required<double>(doc, "t_read");
  if (doc.contains("count_padded_lanes")) {
    p.count_padded_lanes = Required<bool>(doc, "count_padded_lanes");
  }
  ValidateProfile(p);
  return p;
}

DeviceProfile ProfileFromFile(const std::filesystem::path& path) {
  return ProfileFromJson(ReadTextFile(path));
}

std::string ProfileToJson(const DeviceProfile& p) {
  json doc = {{"name", p.name},
              {"crossbar_rows", p.crossbar_rows},
              {"crossbar_cols", p.crossbar_cols},
              {"grid_rows", p.grid_rows},
              {"grid_cols", p.grid_cols},
              {"g_min", p.g_min},
              {"g_max", p.g_max},
              {"levels", p.levels},
              {"write_noise_sigma", p.write_noise_sigma},
              {"read_noise_sigma", p.read_noise_sigma},
              {"verify_tolerance", p.verify_tolerance},
              {"max_write_pulses", p.max_write_pulses},
              {"e_write", p.e_write},
              {"e_read", p.e_read},
              {"t_write", p.t_write},
              {"t_read", p.t_read},
              {"count_padded_lanes", p.count_padded_lanes}};
  return doc.dump(2) + "\n";
}

std::vector<std::string> BundledProfileNames() {
  return {"epiram", "taox-hfox"};
}

std::optional<DeviceProfile> BundledProfile(std::string_view name) {
  if (name == "epiram") return ProfileFromJson(kEpiramJson);
  if (name == "taox-hfox") return ProfileFromJson(kTaoxHfoxJson);
  return std::nullopt;
}

DeviceProfile ResolveProfile(std::string_view name_or_path,
                             const std::filesystem::path& profile_dir) {
  namespace fs = std::filesystem;
  const fs::path direct(name_or_path);
  if (direct.has_extension() && fs::is_regular_file(direct)) {
    return ProfileFromFile(direct);
  }
  fs::path dir = profile_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv(kProfileDirEnv)) dir = env;
  }
  if (!dir.empty()) {
    const fs::path candidate = dir / (std::string(name_or_path) + ".json");
    if (fs::is_regular_file(candidate)) return ProfileFromFile(candidate);
  }
  if (auto p = BundledProfile(name_or_path)) return *p;
  throw IoError("cannot resolve device profile '" + std::string(name_or_path) +
                "'");
}

// ---------------------------------------------------------------------------

CrossbarArray CrossbarArray::Encode(const DenseMatrix& matrix,
                                    const DeviceProfile& profile,
                                    std::uint64_t seed,
                                    TelemetryLedger& ledger) {
  ValidateProfile(profile);
  if (matrix.rows() != matrix.cols()) {
    throw DimensionError("crossbar encode expects a square matrix");
  }
  const std::size_t d = matrix.rows();
  if (d > profile.max_logical_rows() || d > profile.max_logical_cols()) {
    throw CapacityError(
        "matrix of dimension " + std::to_string(d) + " exceeds the " +
        std::to_string(profile.max_logical_rows()) + "x" +
        std::to_string(profile.max_logical_cols()) + " crossbar grid");
  }
  CrossbarArray a;
  a.profile_ = profile;
  a.dim_ = d;
  a.tile_rows_ = (d + profile.crossbar_rows - 1) / profile.crossbar_rows;
  a.tile_cols_ = (d + profile.crossbar_cols - 1) / profile.crossbar_cols;

  const double g_min = profile.g_min;
  const double range = profile.g_max - profile.g_min;
  const double max_abs = matrix.MaxAbs();
  a.col_scale_ = max_abs > 0.0 ? range / max_abs : 1.0;
  const double step = range / (profile.levels - 1);
  const double write_std = profile.write_noise_sigma * range;
  // |G - target| / col_scale <= tol * max|M|  <=>  |G - target| <= tol * range.
  const double verify_abs = profile.verify_tolerance * range;

  auto quantize = [&](double v) {
    const double level = std::round(std::abs(v) * a.col_scale_ / step);
    return std::min(profile.g_max, g_min + level * step);
  };

  std::uint64_t pulses = 0;
  for (std::size_t ti = 0; ti < a.tile_rows_; ++ti) {
    for (std::size_t tj = 0; tj < a.tile_cols_; ++tj) {
      Tile t;
      t.row0 = ti * profile.crossbar_rows;
      t.col0 = tj * profile.crossbar_cols;
      t.rows = std::min(profile.crossbar_rows, d - t.row0);
      t.cols = std::min(profile.crossbar_cols, d - t.col0);
      t.read_rng = TileStream(seed, kReadSalt, ti, tj);
      std::mt19937_64 write_rng = TileStream(seed, kWriteSalt, ti, tj);
      std::normal_distribution<double> normal;

      auto program = [&](double target) {
        // A full reset to g_min is exact.
        if (target == g_min || write_std == 0.0) {
          ++pulses;
          return target;
        }
        double g = target;
        for (int p = 0; p < profile.max_write_pulses; ++p) {
          ++pulses;
          g = std::clamp(target + write_std * normal(write_rng), g_min,
                         profile.g_max);
          if (std::abs(g - target) <= verify_abs) return g;
        }
        ++a.saturated_;
        return g;
      };

      const std::size_t cells = t.rows * t.cols;
      t.g_plus.resize(cells);
      t.g_minus.resize(cells);
      t.target_plus.resize(cells);
      t.target_minus.resize(cells);
      for (std::size_t r = 0; r < t.rows; ++r) {
        for (std::size_t c = 0; c < t.cols; ++c) {
          const double v = matrix(t.row0 + r, t.col0 + c);
          const double q = quantize(v);
          const std::size_t k = r * t.cols + c;
          t.target_plus[k] = v > 0.0 ? q : g_min;
          t.target_minus[k] = v < 0.0 ? q : g_min;
          t.g_plus[k] = program(t.target_plus[k]);
          t.g_minus[k] = program(t.target_minus[k]);
        }
      }
      a.tiles_.push_back(std::move(t));
    }
  }
  ledger.RecordWritePulses(pulses);
  return a;
}

Vector CrossbarArray::NoisyMvm(std::span<const double> v, LaneRange active,
                               TelemetryLedger& ledger) {
  if (v.size() != dim_) {
    throw DimensionError("NoisyMvm input has length " +
                         std::to_string(v.size()) + ", expected " +
                         std::to_string(dim_));
  }
  const double sigma = profile_.read_noise_sigma;
  Vector w(dim_, 0.0);
  Vector partial;
  std::uint64_t reads = 0;
  // Fixed reduction order: tile rows, then tile columns left to right.
  for (Tile& t : tiles_) {
    partial.assign(t.rows, 0.0);
    for (std::size_t r = 0; r < t.rows; ++r) {
      const double* gp = &t.g_plus[r * t.cols];
      const double* gm = &t.g_minus[r * t.cols];
      double s = 0.0;
      for (std::size_t c = 0; c < t.cols; ++c) {
        s += (gp[c] - gm[c]) * v[t.col0 + c];
      }
      partial[r] = s / col_scale_;
    }
    if (sigma > 0.0) {
      for (double& p : partial) p *= 1.0 + sigma * TruncatedNormal(t.read_rng);
    }
    for (std::size_t r = 0; r < t.rows; ++r) w[t.row0 + r] += partial[r];

    std::size_t lanes = t.cols;
    if (!profile_.count_padded_lanes) {
      const std::size_t lo = std::max(t.col0, active.begin);
      const std::size_t hi = std::min(t.col0 + t.cols, active.end);
      lanes = hi > lo ? hi - lo : 0;
    }
    reads += 2 * static_cast<std::uint64_t>(t.rows) * lanes;
  }
  ledger.RecordCellReads(reads);
  return w;
}

const CrossbarArray::Tile& CrossbarArray::TileAt(std::size_t i, std::size_t j,
                                                 std::size_t& k) const {
  if (i >= dim_ || j >= dim_) throw DimensionError("cell index out of range");
  const std::size_t ti = i / profile_.crossbar_rows;
  const std::size_t tj = j / profile_.crossbar_cols;
  const Tile& t = tiles_[ti * tile_cols_ + tj];
  k = (i - t.row0) * t.cols + (j - t.col0);
  return t;
}

double CrossbarArray::g_plus(std::size_t i, std::size_t j) const {
  std::size_t k;
  return TileAt(i, j, k).g_plus[k];
}

double CrossbarArray::g_minus(std::size_t i, std::size_t j) const {
  std::size_t k;
  return TileAt(i, j, k).g_minus[k];
}

DenseMatrix CrossbarArray::Decoded() const {
  DenseMatrix out(dim_, dim_);
  for (const Tile& t : tiles_) {
    for (std::size_t r = 0; r < t.rows; ++r) {
      for (std::size_t c = 0; c < t.cols; ++c) {
        const std::size_t k = r * t.cols + c;
        out(t.row0 + r, t.col0 + c) = (t.g_plus[k] - t.g_minus[k]) / col_scale_;
      }
    }
  }
  return out;
}

DenseMatrix CrossbarArray::QuantizedTargets() const {
  DenseMatrix out(dim_, dim_);
  for (const Tile& t : tiles_) {
    for (std::size_t r = 0; r < t.rows; ++r) {
      for (std::size_t c = 0; c < t.cols; ++c) {
        const std::size_t k = r * t.cols + c;
        out(t.row0 + r, t.col0 + c) =
            (t.target_plus[k] - t.target_minus[k]) / col_scale_;
      }
    }
  }
  return out;
}

bool CrossbarArray::operator==(const CrossbarArray& o) const {
  if (dim_ != o.dim_ || col_scale_ != o.col_scale_ ||
      saturated_ != o.saturated_ || tiles_.size() != o.tiles_.size()) {
    return false;
  }
  for (std::size_t k = 0; k < tiles_.size(); ++k) {
    if (tiles_[k].g_plus != o.tiles_[k].g_plus ||
        tiles_[k].g_minus != o.tiles_[k].g_minus) {
      return false;
    }
  }
  return true;
}

RramBackend::RramBackend(DeviceProfile profile, std::uint64_t seed)
    : Backend(profile.costs()), profile_(std::move(profile)), seed_(seed) {
  ValidateProfile(profile_);
}

void RramBackend::DoEncode(const SymBlock& block) {
  array_ = CrossbarArray::Encode(block.matrix, profile_, seed_, ledger());
}

Vector RramBackend::DoMvm(std::span<const double> v, LaneRange active) {
  return array_->NoisyMvm(v, active, ledger());
}

}  // namespace imlp
