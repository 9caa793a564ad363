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

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "vqepes/adapt.hpp"
#include "vqepes/ansatz.hpp"
#include "vqepes/benchmark.hpp"
#include "vqepes/error.hpp"
#include "vqepes/pes.hpp"
#include "vqepes/resources.hpp"
#include "vqepes/vqe.hpp"

namespace fs = std::filesystem;
using namespace vqepes;

namespace {

struct Options {
  std::string fcidump;
  std::string manifest;
  std::string out;
  std::string points;
  std::string method;
  std::optional<std::uint64_t> shots;
  std::optional<std::uint64_t> seed;
  std::optional<double> noise_p01;
  std::optional<double> noise_p10;
  bool trex = false;
  std::optional<std::string> active_space;
  unsigned reps = 3;
  std::optional<double> fit_max_wall;
};

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot write {}", path.string()));
  out << text;
}

/// Prints `text` and, with --out, also stores it as <out>/<name>.
void emit(const Options& o, const std::string& name, const std::string& text) {
  std::cout << text;
  if (!o.out.empty()) write_file(fs::path(o.out) / name, text);
}

LoadedFixture load(const Options& o) {
  if (o.fcidump.empty()) throw UsageError("--fcidump is required");
  if (!fs::exists(o.fcidump)) throw Error(fmt::format("{}: no such file", o.fcidump));
  return load_fixture(o.fcidump, o.active_space);
}

int cmd_inspect(const Options& o) {
  const FcidumpData data = read_fcidump(o.fcidump);
  const fs::path meta_path = metadata_path_for(o.fcidump);
  std::optional<FixtureMetadata> meta;
  if (fs::exists(meta_path)) meta = read_metadata(meta_path);
  std::string text = fmt::format("norb={} nelec={} qubits={}\n", data.n_orb, data.n_elec, 2 * data.n_orb);
  text += fmt::format("ms2={}\ne_core={:.12f}\n", data.ms2, data.e_core);
  if (meta) {
    text += fmt::format("system={}\ndistance_angstrom={:.4f}\nactive_space={}\n", meta->system,
                        meta->distance_angstrom, meta->active_space);
    if (meta->hf_energy_ha) text += fmt::format("hf_energy_metadata={:.12f}\n", *meta->hf_energy_ha);
  }
  emit(o, "inspect.txt", text);
  return 0;
}

int cmd_exact(const Options& o) {
  const LoadedFixture f = load(o);
  const auto sector = ground_state_in_sector(f.problem.hamiltonian, f.problem.n_elec);
  std::string text = fmt::format("method=exact\nqubits={}\nnelec={}\n", f.problem.n_qubits, f.problem.n_elec);
  text += fmt::format("energy_ha={:.12f}\nsolver={}\ndegenerate={}\n", sector.energy, to_string(sector.method),
                      sector.degenerate);
  text += fmt::format("hf_energy_ha={:.12f}\ne_core={:.12f}\n", f.problem.hf_energy, f.problem.e_core);
  emit(o, "exact.txt", text);
  return 0;
}


int cmd_vqe(const Options& o) {
  const std::string method = o.method.empty() ? "uccsd" : o.method;
  if (method != "uccsd" && method != "ryrz") {
    throw UsageError(fmt::format("vqe --method must be uccsd or ryrz, got '{}'", method));
  }
  const LoadedFixture f = load(o);
  const ParameterizedCircuit c =
      method == "uccsd"
          ? uccsd_circuit(uccsd_excitations(f.problem.n_elec, f.problem.n_qubits), f.problem.n_qubits)
          : ryrz_circuit(unsigned(f.problem.n_qubits), o.reps);
  VqeConfig config;
  if (method == "ryrz") config.initial_params = ryrz_initial_params(c.n_params(), o.seed.value_or(0));
  const VqeResult r = run_vqe(c, f.problem.hamiltonian, f.problem.reference, config);
  std::string text = fmt::format("method={}\noptimizer=bfgs\nqubits={}\nparams={}\n", method, f.problem.n_qubits,
                                 c.n_params());
  text += fmt::format("energy_ha={:.12f}\niterations={}\nevaluations={}\nconverged={}\nmessage={}\n", r.energy,
                      r.iterations, r.evaluations, r.converged, r.message);
  emit(o, "vqe.txt", text);
  return 0;
}

int cmd_adapt(const Options& o) {
  const LoadedFixture f = load(o);
  const OperatorPool pool =
      build_pool(uccsd_excitations(f.problem.n_elec, f.problem.n_qubits), f.problem.n_qubits);
  const AdaptResult a = run_adapt(f.problem.hamiltonian, pool, f.problem.reference);
  std::string text = fmt::format("method=adapt\noptimizer=bfgs\nqubits={}\npool_size={}\n", f.problem.n_qubits,
                                 pool.size());
  text += fmt::format("energy_ha={:.12f}\nouter_iterations={}\noptimizer_iterations={}\nevaluations={}\n",
                      a.energy(), a.outer_iterations, a.optimizer_iterations, a.evaluations);
  text += fmt::format("stop_reason={}\n", to_string(a.stop_reason));
  for (std::size_t k = 0; k < a.chosen_ops.size(); ++k) {
    text += fmt::format("op{}={} ({})\n", k, a.chosen_ops[k].to_sparse(), pool.provenance[a.chosen_indices[k]]);
  }
  if (o.shots) {
    SamplingOptions so;
    so.shots = *o.shots;
    so.calibration_shots = *o.shots;
    so.seed = o.seed.value_or(0);
    so.twirl = o.trex;
    const double p01 = o.noise_p01.value_or(0.0);
    const double p10 = o.noise_p10.value_or(0.0);
    if (p01 > 0.0 || p10 > 0.0) so.noise = ReadoutNoiseModel::uniform(unsigned(f.problem.n_qubits), p01, p10);
    const auto est = sample_expectation(prepare_state(a.final_circuit, a.params, f.problem.reference),
                                        f.problem.hamiltonian, so);
    text += fmt::format("sampled_energy_ha={:.12f}\nsampled_stderr_ha={:.12f}\nshots={}\nseed={}\ntrex={}\n",
                        est.estimate, est.std_error, so.shots, so.seed, so.twirl);
  }
  emit(o, "adapt.txt", text);
  emit(o, "adapt_circuit.txt", a.final_circuit.to_text());
  return 0;
}

int cmd_scan(const Options& o) {
  if (o.manifest.empty() || o.out.empty()) throw UsageError("scan needs --manifest and --out");
  ScanConfig c = read_manifest(o.manifest);
  if (!o.method.empty()) c.method = parse_scan_method(o.method);
  if (o.seed) c.seed = *o.seed;
  if (o.shots) c.shots = *o.shots;
  if (o.noise_p01) c.noise_p01 = *o.noise_p01;
  if (o.noise_p10) c.noise_p10 = *o.noise_p10;
  if (o.trex) c.trex = true;
  if (o.active_space) c.active_space = o.active_space;
  if (o.fit_max_wall) c.fit_max_wall_ha = o.fit_max_wall;
  c.reps = o.reps;
  c.validate();
  const auto results = run_scan(c);
  const auto fit = write_scan_outputs(c, results, o.out);
  std::size_t good = 0;
  for (const auto& r : results) {
    std::cout << fmt::format("{:.4f} {} {}\n", r.distance, r.ok ? fmt::format("{:.10f}", r.energy) : "failed",
                             r.ok ? "" : r.error);
    good += r.ok;
  }
  if (fit) {
    std::cout << fmt::format("r_e = {:.4f} +/- {:.4f} A, binding = {:.5f} +/- {:.5f} Ha\n", fit->params.re,
                             fit->sigma[2], -fit->params.de, fit->sigma[0]);
  }
  std::cout << fmt::format("wrote {}\n", (fs::path(o.out) / "results.csv").string());
  return good >= 2 ? 0 : 1;
}

int cmd_fit(const Options& o) {
  if (o.points.empty()) throw UsageError("fit needs --points");
  std::vector<PesPoint> points = read_results(o.points);
  if (o.fit_max_wall) points = window_points(points, *o.fit_max_wall);
  const MorseFit fit = fit_morse(points);
  emit(o, "fit_report.txt", format_fit_report(fit, o.points));
  if (!o.out.empty()) {
    double lo = points.front().distance;
    double hi = lo;
    for (const auto& p : points) {
      lo = std::min(lo, p.distance);
      hi = std::max(hi, p.distance);
    }
    write_file(fs::path(o.out) / "morse_curve.csv", format_plot_data(fit, lo, hi));
  }
  return 0;
}

int cmd_resources(const Options& o) {
  const LoadedFixture f = load(o);
  const auto& p = f.problem;
  const auto excitations = uccsd_excitations(p.n_elec, p.n_qubits);
  const ParameterizedCircuit uccsd = uccsd_circuit(excitations, p.n_qubits);
  const ParameterizedCircuit ryrz = ryrz_circuit(unsigned(p.n_qubits), o.reps);
  const AdaptResult a = run_adapt(p.hamiltonian, build_pool(excitations, p.n_qubits), p.reference);
  // Counts depend only on which angles are nonzero; any nonzero binding works.
  const std::vector<double> u_params(uccsd.n_params(), 0.5);
  const std::vector<double> r_params(ryrz.n_params(), 0.5);
  const std::string table = resource_table({{"UCCSD", decompose(uccsd, u_params)},
                                            {"RyRz", decompose(ryrz, r_params)},
                                            {"ADAPT", decompose(a.final_circuit, a.params)}});
  emit(o, "resources.txt", table);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational quantum eigensolver PES toolkit"};
  app.require_subcommand(1);
  Options o;

  auto fixture_flags = [&](CLI::App* s) {
    s->add_option("--fcidump", o.fcidump, "FCIDUMP file")->required();
    s->add_option("--active-space", o.active_space, "active space as e,o");
    s->add_option("--out", o.out, "output directory");
  };
  auto* inspect = app.add_subcommand("inspect", "summarize an FCIDUMP fixture");
  inspect->add_option("--fcidump", o.fcidump, "FCIDUMP file")->required();
  inspect->add_option("--out", o.out, "output directory");
  auto* exact = app.add_subcommand("exact", "exact ground state in the particle-number sector");
  fixture_flags(exact);
  auto* vqe = app.add_subcommand("vqe", "UCCSD or RyRz VQE");
  fixture_flags(vqe);
  vqe->add_option("--method", o.method, "uccsd or ryrz");
  vqe->add_option("--reps", o.reps, "RyRz entangling layers");
  vqe->add_option("--seed", o.seed, "RyRz starting-point seed");
  auto* adapt = app.add_subcommand("adapt", "qubit-ADAPT-VQE");
  fixture_flags(adapt);
  adapt->add_option("--shots", o.shots, "sample the final energy with this many shots per term");
  adapt->add_option("--seed", o.seed, "sampling seed");
  adapt->add_option("--noise-p01", o.noise_p01, "readout flip probability 0->1");
  adapt->add_option("--noise-p10", o.noise_p10, "readout flip probability 1->0");
  adapt->add_flag("--trex", o.trex, "twirled readout error extinction");
  auto* scan = app.add_subcommand("scan", "PES scan from a manifest");
  scan->add_option("--manifest", o.manifest, "scan manifest (YAML)")->required();
  scan->add_option("--out", o.out, "output directory")->required();
  scan->add_option("--method", o.method, "override the manifest method");
  scan->add_option("--shots", o.shots, "shots per Pauli term (sampled-adapt)");
  scan->add_option("--seed", o.seed, "seed");
  scan->add_option("--noise-p01", o.noise_p01, "readout flip probability 0->1");
  scan->add_option("--noise-p10", o.noise_p10, "readout flip probability 1->0");
  scan->add_flag("--trex", o.trex, "twirled readout error extinction");
  scan->add_option("--active-space", o.active_space, "active space as e,o");
  scan->add_option("--reps", o.reps, "RyRz entangling layers");
  scan->add_option("--fit-max-wall", o.fit_max_wall, "fit only points at most this many Ha above the far end");
  auto* fit = app.add_subcommand("fit", "Morse fit of a results table");
  fit->add_option("--points", o.points, "results table")->required();
  fit->add_option("--out", o.out, "output directory");
  fit->add_option("--fit-max-wall", o.fit_max_wall, "fit only points at most this many Ha above the far end");
  auto* resources = app.add_subcommand("resources", "gate counts for UCCSD, RyRz and ADAPT circuits");
  fixture_flags(resources);
  resources->add_option("--reps", o.reps, "RyRz entangling layers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*inspect) return cmd_inspect(o);
    if (*exact) return cmd_exact(o);
    if (*vqe) return cmd_vqe(o);
    if (*adapt) return cmd_adapt(o);
    if (*scan) return cmd_scan(o);
    if (*fit) return cmd_fit(o);
    if (*resources) return cmd_resources(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
