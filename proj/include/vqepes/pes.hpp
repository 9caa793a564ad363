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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vqepes/adapt.hpp"
#include "vqepes/ansatz.hpp"
#include "vqepes/morse.hpp"
#include "vqepes/vqe.hpp"

namespace vqepes {

enum class ScanMethod { uccsd, ryrz, adapt, exact, sampled_adapt };

std::string to_string(ScanMethod m);
/// Throws UsageError for unknown names.
ScanMethod parse_scan_method(std::string_view name);

std::vector<double> default_distances();  // 0.3, 0.6, ..., 3.6

struct ScanConfig {
  std::string system;  // must match the metadata `system` key when non-empty
  std::vector<double> distances = default_distances();
  ScanMethod method = ScanMethod::adapt;
  std::filesystem::path fixture_dir;
  std::optional<std::string> active_space;  // "e,o"; metadata value otherwise

  std::uint64_t seed = 0;
  std::uint64_t shots = 1024;
  double noise_p01 = 0.0;
  double noise_p10 = 0.0;
  bool trex = false;

  unsigned reps = 3;
  Entangler entangler = Entangler::chain;
  VqeConfig vqe;
  AdaptConfig adapt;

  unsigned workers = 1;
  bool record_wall_time = false;  // results table holds "NA" unless set
  std::optional<double> fit_max_wall_ha;

  void validate() const;
};

/// YAML manifest whose keys are the ScanConfig field names. `fixture_dir` is
/// resolved relative to the manifest's directory.
ScanConfig parse_manifest(std::string_view text, const std::filesystem::path& base_dir = {});
ScanConfig read_manifest(const std::filesystem::path& path);

struct PointResult {
  double distance = 0.0;
  double energy = 0.0;
  double std_error = 0.0;
  ScanMethod method = ScanMethod::exact;
  std::size_t iterations = 0;   // optimizer iterations (summed for ADAPT)
  std::size_t evaluations = 0;  // objective evaluations
  double wall_time_s = 0.0;
  bool ok = true;
  std::string error;

  std::filesystem::path fixture;
  int n_qubits = 0;
  std::size_t n_params = 0;
  double hf_energy = 0.0;
  double e_core = 0.0;
  bool converged = true;
  std::size_t outer_iterations = 0;
  std::string stop_reason;
  std::vector<std::string> chosen_ops;
  std::uint64_t sample_seed = 0;
};

/// Everything needed to solve one geometry, loaded from a fixture.
struct LoadedFixture {
  std::filesystem::path path;
  FixtureMetadata meta;
  ActiveSpaceIntegrals integrals;
  MolecularProblem problem;
};

LoadedFixture load_fixture(const std::filesystem::path& fcidump, const std::optional<std::string>& active_space);

/// fixture path per requested distance; throws listing every missing one.
std::vector<std::filesystem::path> locate_fixtures(const ScanConfig& config);

/// Solves one problem with `method`. Sampled mode draws with `sample_seed`.
PointResult solve_point(const MolecularProblem& problem, const ScanConfig& config, std::uint64_t sample_seed);

/// Runs every distance on a bounded worker pool. Output is ordered by
/// distance; a failing point is flagged and the rest continue.
std::vector<PointResult> run_scan(const ScanConfig& config);

std::vector<PesPoint> to_pes_points(const std::vector<PointResult>& results);

/// CSV with header distance_angstrom,energy_ha,stderr_ha,method,iterations,
/// evaluations,wall_time_s,status.
std::string format_results(const std::vector<PointResult>& results, bool with_wall_time);

/// Reads a results table (comma- or whitespace-separated, columns located by
/// header name). Rows whose status is not "ok" or whose energy is not finite
/// are skipped.
std::vector<PesPoint> parse_results(std::string_view text);
std::vector<PesPoint> read_results(const std::filesystem::path& path);

/// INI-style report: settings, parameters, covariance, observables and
/// convergence diagnostics.
std::string format_fit_report(const MorseFit& fit, const std::string& source);

/// "r,energy" rows at 0.01 Angstrom over the fitted range.
std::string format_plot_data(const MorseFit& fit, double r_min, double r_max);

/// YAML run record: optimizer settings, seeds, noise, ADAPT details and timings.
std::string format_run_metadata(const ScanConfig& config, const std::vector<PointResult>& results);

/// Writes results.csv, scan_metadata.yaml and, with at least 4 good points,
/// fit_report.txt and morse_curve.csv into `out_dir`. Returns the fit.
std::optional<MorseFit> write_scan_outputs(const ScanConfig& config, const std::vector<PointResult>& results,
                                           const std::filesystem::path& out_dir);

}  // namespace vqepes
