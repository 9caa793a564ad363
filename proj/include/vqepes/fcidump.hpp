// Copyright 2026 The vqepes Authors
//
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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vqepes {

/// Two-electron integrals (pq|rs) in chemist notation, dense n^4 storage.
class ElectronRepulsion {
 public:
  ElectronRepulsion() = default;
  explicit ElectronRepulsion(int n_orb) : n_(n_orb), v_(std::size_t(n_orb) * n_orb * n_orb * n_orb, 0.0) {}

  int n_orb() const noexcept { return n_; }
  double operator()(int p, int q, int r, int s) const { return v_[index(p, q, r, s)]; }
  double& operator()(int p, int q, int r, int s) { return v_[index(p, q, r, s)]; }

  /// Writes v into all eight permutation-equivalent slots.
  void set_symmetric(int p, int q, int r, int s, double v);

 private:
  std::size_t index(int p, int q, int r, int s) const {
    return ((std::size_t(p) * n_ + q) * n_ + r) * n_ + s;
  }
  int n_ = 0;
  std::vector<double> v_;
};

/// Square symmetric matrix of one-electron integrals, row-major.
class OneBody {
 public:
  OneBody() = default;
  explicit OneBody(int n_orb) : n_(n_orb), v_(std::size_t(n_orb) * n_orb, 0.0) {}
  int n_orb() const noexcept { return n_; }
  double operator()(int p, int q) const { return v_[std::size_t(p) * n_ + q]; }
  double& operator()(int p, int q) { return v_[std::size_t(p) * n_ + q]; }

 private:
  int n_ = 0;
  std::vector<double> v_;
};

/// Contents of an FCIDUMP file. Indices are 0-based in memory.
struct FcidumpData {
  int n_orb = 0;
  int n_elec = 0;
  int ms2 = 0;
  std::vector<double> orbital_energies;  // empty when the file has none
  OneBody h1;
  ElectronRepulsion h2;
  double e_core = 0.0;
};

/// Parses FCIDUMP text. Header `&FCI NORB=..,NELEC=..,MS2=.. &END` (or `/`),
/// then `value p q r s` lines with 1-based indices:
///   p q r s  -> (pq|rs), 8-fold symmetric completion
///   p q 0 0  -> h1[p][q] = h1[q][p]
///   p 0 0 0  -> orbital energy of p
///   0 0 0 0  -> e_core
/// ORBSYM/ISYM are accepted and ignored. Errors carry the offending line.
FcidumpData parse_fcidump(std::string_view text);
FcidumpData read_fcidump(const std::filesystem::path& path);

/// Sidecar `<stem>.meta` next to each fixture FCIDUMP.
struct FixtureMetadata {
  std::string system;
  double distance_angstrom = 0.0;
  std::optional<double> hf_energy_ha;
  std::string active_space;  // "e,o"
  std::string ordering;      // "blocked"
};

FixtureMetadata parse_metadata(std::string_view text);
FixtureMetadata read_metadata(const std::filesystem::path& path);

/// `foo.fcidump` -> `foo.meta`.
std::filesystem::path metadata_path_for(const std::filesystem::path& fcidump);

}  // namespace vqepes
