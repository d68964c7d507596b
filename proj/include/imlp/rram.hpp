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

// Simulated RRAM crossbar accelerator.
//
// The logical matrix M is cut into crossbar_rows x crossbar_cols tiles laid out
// on a grid_rows x grid_cols grid. Every logical entry v is stored as a
// differential pair (G+, G-) with G+ - G- = v * col_scale, where col_scale is a
// single scalar per encode. Programming uses write-and-verify with Gaussian
// write noise; reads apply truncated-Gaussian multiplicative noise to every
// tile output.

#ifndef IMLP_RRAM_HPP_
#define IMLP_RRAM_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "imlp/accel.hpp"
#include "imlp/dense.hpp"
#include "imlp/telemetry.hpp"

namespace imlp {

struct DeviceProfile {
  std::string name;
  std::size_t crossbar_rows = 64;
  std::size_t crossbar_cols = 64;
  std::size_t grid_rows = 4;
  std::size_t grid_cols = 4;
  double g_min = 1e-6;  // siemens
  double g_max = 1e-4;
  int levels = 256;
  // Std-dev of one write pulse, as a fraction of (g_max - g_min).
  double write_noise_sigma = 0.0;
  // Std-dev of the multiplicative read noise on each tile output entry.
  double read_noise_sigma = 0.0;
  // Verify target, as a fraction of max |M_ij|.
  double verify_tolerance = 1e-3;
  int max_write_pulses = 32;
  double e_write = 0.0;
  double e_read = 0.0;
  double t_write = 0.0;
  double t_read = 0.0;
  // Charge reads for zero-padded input lanes (the array drives every row).
  bool count_padded_lanes = true;

  UnitCosts costs() const { return {e_write, e_read, t_write, t_read}; }
  std::size_t max_logical_rows() const { return grid_rows * crossbar_rows; }
  std::size_t max_logical_cols() const { return grid_cols * crossbar_cols; }
};

// Throws ValidationError naming the offending field.
void ValidateProfile(const DeviceProfile& profile);

// JSON profile. Every numeric field is required except count_padded_lanes.
DeviceProfile ProfileFromJson(std::string_view text);
DeviceProfile ProfileFromFile(const std::filesystem::path& path);
std::string ProfileToJson(const DeviceProfile& profile);

// Built-in copies of profiles/epiram.json and profiles/taox-hfox.json. Their
// energy and latency figures are calibration placeholders.
std::vector<std::string> BundledProfileNames();
std::optional<DeviceProfile> BundledProfile(std::string_view name);

// Environment variable naming the default profile directory.
inline constexpr const char* kProfileDirEnv = "IMLP_PROFILE_DIR";

// Resolution order: an existing file path, <dir>/<name>.json where dir is
// `profile_dir` or $IMLP_PROFILE_DIR, then the bundled profiles.
DeviceProfile ResolveProfile(std::string_view name_or_path,
                             const std::filesystem::path& profile_dir = {});

class CrossbarArray {
 public:
  // Programs `matrix` (square, logical dims m + n). Write pulses are recorded
  // in `ledger`. Throws CapacityError when the matrix does not fit the grid.
  static CrossbarArray Encode(const DenseMatrix& matrix,
                              const DeviceProfile& profile, std::uint64_t seed,
                              TelemetryLedger& ledger);

  // Noisy product; `active` is the range of lanes that may be nonzero.
  Vector NoisyMvm(std::span<const double> v, LaneRange active,
                  TelemetryLedger& ledger);

  // (G+ - G-) / col_scale for every logical cell.
  DenseMatrix Decoded() const;
  // Quantized targets as values, i.e. what a perfect write would decode to.
  DenseMatrix QuantizedTargets() const;

  double col_scale() const { return col_scale_; }
  std::size_t dim() const { return dim_; }
  std::size_t num_tiles() const { return tiles_.size(); }
  std::size_t tile_grid_rows() const { return tile_rows_; }
  std::size_t tile_grid_cols() const { return tile_cols_; }
  std::uint64_t saturated_cells() const { return saturated_; }
  double g_plus(std::size_t i, std::size_t j) const;
  double g_minus(std::size_t i, std::size_t j) const;
  const DeviceProfile& profile() const { return profile_; }

  bool operator==(const CrossbarArray& o) const;

 private:
  struct Tile {
    std::size_t row0 = 0;
    std::size_t col0 = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> g_plus;  // row-major rows x cols
    std::vector<double> g_minus;
    std::vector<double> target_plus;
    std::vector<double> target_minus;
    std::mt19937_64 read_rng;
  };

  const Tile& TileAt(std::size_t i, std::size_t j, std::size_t& k) const;

  DeviceProfile profile_;
  std::size_t dim_ = 0;
  std::size_t tile_rows_ = 0;
  std::size_t tile_cols_ = 0;
  double col_scale_ = 1.0;
  std::uint64_t saturated_ = 0;
  std::vector<Tile> tiles_;  // row-major over the tile grid
};

class RramBackend : public Backend {
 public:
  RramBackend(DeviceProfile profile, std::uint64_t seed);

  const CrossbarArray& array() const { return *array_; }
  const DeviceProfile& profile() const { return profile_; }

 protected:
  void DoEncode(const SymBlock& block) override;
  Vector DoMvm(std::span<const double> v, LaneRange active) override;

 private:
  DeviceProfile profile_;
  std::uint64_t seed_;
  std::optional<CrossbarArray> array_;
};

}  // namespace imlp

#endif  // IMLP_RRAM_HPP_
