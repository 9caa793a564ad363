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

#include "vqepes/pes.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <yaml-cpp/yaml.h>

#include "vqepes/benchmark.hpp"
#include "vqepes/error.hpp"
#include "vqepes/simulator.hpp"

namespace vqepes {

namespace fs = std::filesystem;

namespace {

constexpr double kDistanceMatch = 1e-6;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot write {}", path.string()));
  out << text;
  if (!out) throw Error(fmt::format("failed writing {}", path.string()));
}

template <class T>
T scalar(const YAML::Node& n, const std::string& key) {
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    throw UsageError(fmt::format("manifest key '{}' has an invalid value", key));
  }
}

GradientMethod parse_gradient(const std::string& s) {
  if (s == "adjoint") return GradientMethod::adjoint;
  if (s == "parameter-shift") return GradientMethod::parameter_shift;
  if (s == "finite-difference") return GradientMethod::finite_difference;
  throw UsageError(fmt::format("unknown gradient method '{}'", s));
}

void check_keys(const YAML::Node& n, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& kv : n) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw UsageError(fmt::format("unknown {} key '{}'", where, key));
  }
}

std::string fmt_energy(double e) { return std::isfinite(e) ? fmt::format("{:.12f}", e) : "nan"; }

}  // namespace

std::string to_string(ScanMethod m) {
  switch (m) {
    case ScanMethod::uccsd: return "uccsd";
    case ScanMethod::ryrz: return "ryrz";
    case ScanMethod::adapt: return "adapt";
    case ScanMethod::exact: return "exact";
    case ScanMethod::sampled_adapt: return "sampled-adapt";
  }
  return "?";
}

ScanMethod parse_scan_method(std::string_view name) {
  for (auto m : {ScanMethod::uccsd, ScanMethod::ryrz, ScanMethod::adapt, ScanMethod::exact, ScanMethod::sampled_adapt}) {
    if (to_string(m) == name) return m;
  }
  throw UsageError(fmt::format("unknown method '{}' (expected uccsd, ryrz, adapt, exact or sampled-adapt)", name));
}

std::vector<double> default_distances() {
  std::vector<double> d;
  for (int k = 1; k <= 12; ++k) d.push_back(0.3 * k);
  return d;
}

void ScanConfig::validate() const {
  if (distances.size() < 2) throw UsageError("a scan needs at least 2 distances");
  for (std::size_t i = 0; i < distances.size(); ++i) {
    if (!std::isfinite(distances[i]) || distances[i] <= 0.0) throw UsageError("distances must be positive");
    if (i > 0 && distances[i] <= distances[i - 1]) throw UsageError("distances must be strictly increasing");
  }
  if (method == ScanMethod::sampled_adapt && shots == 0) throw UsageError("sampled mode needs shots > 0");
  for (double p : {noise_p01, noise_p10}) {
    if (!(p >= 0.0 && p <= 0.5)) throw UsageError("readout flip probabilities must lie in [0, 0.5]");
  }
  if (workers == 0) throw UsageError("workers must be at least 1");
  if (fit_max_wall_ha && !(*fit_max_wall_ha > 0.0)) throw UsageError("fit_max_wall_ha must be positive");
  try {
    vqe.validate();
    adapt.validate();
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

ScanConfig parse_manifest(std::string_view text, const fs::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, std::size_t(e.mark.line + 1));
  }
  if (!root.IsMap()) throw UsageError("manifest must be a mapping");
  check_keys(root,
             {"system", "distances", "method", "fixture_dir", "active_space", "seed", "shots", "noise_p01", "noise_p10",
              "trex", "reps", "entangler", "workers", "record_wall_time", "fit_max_wall_ha", "vqe", "adapt"},
             "manifest");
  ScanConfig c;
  if (auto n = root["system"]) c.system = scalar<std::string>(n, "system");
  if (auto n = root["method"]) c.method = parse_scan_method(scalar<std::string>(n, "method"));
  if (auto n = root["distances"]) {
    if (!n.IsSequence()) throw UsageError("manifest key 'distances' must be a list");
    c.distances.clear();
    for (const auto& d : n) c.distances.push_back(scalar<double>(d, "distances"));
  }
  if (auto n = root["fixture_dir"]) {
    fs::path p = scalar<std::string>(n, "fixture_dir");
    c.fixture_dir = p.is_absolute() ? p : base_dir / p;
  } else {
    throw UsageError("manifest is missing 'fixture_dir'");
  }
  if (auto n = root["active_space"]) c.active_space = scalar<std::string>(n, "active_space");
  if (auto n = root["seed"]) c.seed = scalar<std::uint64_t>(n, "seed");
  if (auto n = root["shots"]) c.shots = scalar<std::uint64_t>(n, "shots");
  if (auto n = root["noise_p01"]) c.noise_p01 = scalar<double>(n, "noise_p01");
  if (auto n = root["noise_p10"]) c.noise_p10 = scalar<double>(n, "noise_p10");
  if (auto n = root["trex"]) c.trex = scalar<bool>(n, "trex");
  if (auto n = root["reps"]) c.reps = scalar<unsigned>(n, "reps");
  if (auto n = root["entangler"]) {
    const auto e = scalar<std::string>(n, "entangler");
    if (e == "chain") {
      c.entangler = Entangler::chain;
    } else if (e == "full") {
      c.entangler = Entangler::full;
    } else {
      throw UsageError(fmt::format("unknown entangler '{}'", e));
    }
  }
  if (auto n = root["workers"]) c.workers = scalar<unsigned>(n, "workers");
  if (auto n = root["record_wall_time"]) c.record_wall_time = scalar<bool>(n, "record_wall_time");
  if (auto n = root["fit_max_wall_ha"]) c.fit_max_wall_ha = scalar<double>(n, "fit_max_wall_ha");
  if (auto v = root["vqe"]) {
    check_keys(v, {"gradient", "max_iterations", "f_tol", "g_tol"}, "vqe");
    if (auto n = v["gradient"]) c.vqe.gradient = parse_gradient(scalar<std::string>(n, "gradient"));
    if (auto n = v["max_iterations"]) c.vqe.max_iterations = scalar<std::size_t>(n, "max_iterations");
    if (auto n = v["f_tol"]) c.vqe.f_tol = scalar<double>(n, "f_tol");
    if (auto n = v["g_tol"]) c.vqe.g_tol = scalar<double>(n, "g_tol");
  }
  if (auto a = root["adapt"]) {
    check_keys(a, {"max_outer_iterations", "grad_threshold", "energy_threshold"}, "adapt");
    if (auto n = a["max_outer_iterations"]) c.adapt.max_outer_iterations = scalar<std::size_t>(n, "max_outer_iterations");
    if (auto n = a["grad_threshold"]) c.adapt.grad_threshold = scalar<double>(n, "grad_threshold");
    if (auto n = a["energy_threshold"]) c.adapt.energy_threshold = scalar<double>(n, "energy_threshold");
  }
  c.adapt.inner = c.vqe;
  c.validate();
  return c;
}

ScanConfig read_manifest(const fs::path& path) {
  const std::string text = read_text(path);
  try {
    return parse_manifest(text, path.parent_path());
  } catch (const ParseError& e) {
    throw ParseError(e.detail(), e.line(), path.string());
  }
}

LoadedFixture load_fixture(const fs::path& fcidump, const std::optional<std::string>& active_space) {
  LoadedFixture f;
  f.path = fcidump;
  const FcidumpData data = read_fcidump(fcidump);
  const fs::path meta = metadata_path_for(fcidump);
  if (fs::exists(meta)) f.meta = read_metadata(meta);
  std::string spec = active_space.value_or(f.meta.active_space);
  f.integrals = spec.empty() ? full_space(data) : fold_active_space(data, ActiveSpaceSpec::parse(spec));
  f.problem = make_problem(f.integrals);
  return f;
}

std::vector<fs::path> locate_fixtures(const ScanConfig& config) {
  if (!fs::is_directory(config.fixture_dir)) {
    throw Error(fmt::format("fixture directory {} does not exist", config.fixture_dir.string()));
  }
  std::vector<fs::path> candidates;
  for (const auto& entry : fs::directory_iterator(config.fixture_dir)) {
    if (entry.path().extension() == ".fcidump") candidates.push_back(entry.path());
  }
  std::sort(candidates.begin(), candidates.end());
  std::vector<std::pair<double, fs::path>> indexed;
  for (const auto& p : candidates) {
    const fs::path meta = metadata_path_for(p);
    if (!fs::exists(meta)) continue;
    const FixtureMetadata m = read_metadata(meta);
    if (!config.system.empty() && m.system != config.system) continue;
    indexed.emplace_back(m.distance_angstrom, p);
  }
  std::vector<fs::path> out;
  std::vector<std::string> missing;
  for (double d : config.distances) {
    auto it = std::find_if(indexed.begin(), indexed.end(),
                           [&](const auto& e) { return std::abs(e.first - d) < kDistanceMatch; });
    if (it == indexed.end()) {
      missing.push_back(fmt::format("{:.4f}", d));
    } else {
      out.push_back(it->second);
    }
  }
  if (!missing.empty()) {
    throw Error(fmt::format("no fixture in {} for distance(s) {}", config.fixture_dir.string(),
                            fmt::join(missing, ", ")));
  }
  return out;
}

PointResult solve_point(const MolecularProblem& problem, const ScanConfig& config, std::uint64_t sample_seed) {
  PointResult r;
  r.method = config.method;
  r.n_qubits = problem.n_qubits;
  r.hf_energy = problem.hf_energy;
  r.e_core = problem.e_core;
  const auto& h = problem.hamiltonian;
  switch (config.method) {
    case ScanMethod::exact: {
      r.energy = ground_state_in_sector(h, problem.n_elec).energy;
      break;
    }
    case ScanMethod::uccsd:
    case ScanMethod::ryrz: {
      const ParameterizedCircuit c =
          config.method == ScanMethod::uccsd
              ? uccsd_circuit(uccsd_excitations(problem.n_elec, problem.n_qubits), problem.n_qubits)
              : ryrz_circuit(unsigned(problem.n_qubits), config.reps, config.entangler);
      VqeConfig vc = config.vqe;
      if (config.method == ScanMethod::ryrz) {
        vc.initial_params = ryrz_initial_params(c.n_params(), sample_seed);
        r.sample_seed = sample_seed;
      }
      const VqeResult v = run_vqe(c, h, problem.reference, vc);
      r.energy = v.energy;
      r.iterations = v.iterations;
      r.evaluations = v.evaluations;
      r.n_params = c.n_params();
      r.converged = v.converged;
      break;
    }
    case ScanMethod::adapt:
    case ScanMethod::sampled_adapt: {
      const OperatorPool pool = build_pool(uccsd_excitations(problem.n_elec, problem.n_qubits), problem.n_qubits);
      const AdaptResult a = run_adapt(h, pool, problem.reference, config.adapt);
      r.energy = a.energy();
      r.iterations = a.optimizer_iterations;
      r.evaluations = a.evaluations;
      r.n_params = a.final_circuit.n_params();
      r.converged = a.inner_converged;
      r.outer_iterations = a.outer_iterations;
      r.stop_reason = to_string(a.stop_reason);
      for (const auto& p : a.chosen_ops) r.chosen_ops.push_back(p.to_sparse());
      if (config.method == ScanMethod::sampled_adapt) {
        SamplingOptions so;
        so.shots = config.shots;
        so.calibration_shots = config.shots;
        so.seed = sample_seed;
        so.twirl = config.trex;
        if (config.noise_p01 > 0.0 || config.noise_p10 > 0.0) {
          so.noise = ReadoutNoiseModel::uniform(unsigned(problem.n_qubits), config.noise_p01, config.noise_p10);
        }
        const StateVector psi = prepare_state(a.final_circuit, a.params, problem.reference);
        const SampledEstimate est = sample_expectation(psi, h, so);
        r.energy = est.estimate;
        r.std_error = est.std_error;
        r.sample_seed = sample_seed;
      }
      break;
    }
  }
  return r;
}

std::vector<PointResult> run_scan(const ScanConfig& config) {
  config.validate();
  const std::vector<fs::path> fixtures = locate_fixtures(config);
  std::vector<PointResult> results(fixtures.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < fixtures.size(); i = next++) {
      const auto t0 = std::chrono::steady_clock::now();
      PointResult r;
      const std::uint64_t seed = CounterRng(config.seed, i).next_u64();
      try {
        const LoadedFixture f = load_fixture(fixtures[i], config.active_space);
        r = solve_point(f.problem, config, seed);
      } catch (const std::exception& e) {
        r.ok = false;
        r.error = e.what();
        r.energy = std::nan("");
        r.method = config.method;
      }
      r.distance = config.distances[i];
      r.fixture = fixtures[i];
      r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      results[i] = std::move(r);
    }
  };
  const unsigned n_threads = std::min<unsigned>(config.workers, unsigned(fixtures.size()));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return results;
}

std::vector<PesPoint> to_pes_points(const std::vector<PointResult>& results) {
  std::vector<PesPoint> out;
  for (const auto& r : results) {
    if (r.ok && std::isfinite(r.energy)) out.push_back({r.distance, r.energy, r.std_error});
  }
  return out;
}

std::string format_results(const std::vector<PointResult>& results, bool with_wall_time) {
  std::string out = "distance_angstrom,energy_ha,stderr_ha,method,iterations,evaluations,wall_time_s,status\n";
  for (const auto& r : results) {
    out += fmt::format("{:.4f},{},{},{},{},{},{},{}\n", r.distance, fmt_energy(r.energy), fmt_energy(r.std_error),
                       to_string(r.method), r.iterations, r.evaluations,
                       with_wall_time ? fmt::format("{:.3f}", r.wall_time_s) : std::string("NA"),
                       r.ok ? "ok" : "failed");
  }
  return out;
}

std::vector<PesPoint> parse_results(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
      if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\r') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
  };
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    header = split(line);
  }
  auto column = [&](const std::string& name) -> std::optional<std::size_t> {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return std::size_t(it - header.begin());
  };
  const auto c_dist = column("distance_angstrom");
  const auto c_energy = column("energy_ha");
  const auto c_err = column("stderr_ha");
  const auto c_status = column("status");
  if (!c_dist || !c_energy) throw ParseError("header must name distance_angstrom and energy_ha", line_no);
  std::vector<PesPoint> points;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto f = split(line);
    if (f.empty()) continue;
    if (f.size() != header.size()) {
      throw ParseError(fmt::format("expected {} fields, found {}", header.size(), f.size()), line_no);
    }
    if (c_status && f[*c_status] != "ok") continue;
    auto num = [&](std::size_t col) {
      const std::string& s = f[col];
      if (s == "nan" || s == "NA") return std::nan("");
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(s, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != s.size()) throw ParseError(fmt::format("'{}' is not a number", s), line_no);
      return v;
    };
    PesPoint p{num(*c_dist), num(*c_energy), c_err ? num(*c_err) : 0.0};
    if (!std::isfinite(p.energy) || !std::isfinite(p.distance)) continue;
    if (!std::isfinite(p.std_error)) p.std_error = 0.0;
    points.push_back(p);
  }
  return points;
}

std::vector<PesPoint> read_results(const fs::path& path) {
  const std::string text = read_text(path);
  try {
    return parse_results(text);
  } catch (const ParseError& e) {
    throw ParseError(e.detail(), e.line(), path.string());
  }
}

std::string format_fit_report(const MorseFit& fit, const std::string& source) {
  const auto& p = fit.params;
  const auto [re, sre] = fit.equilibrium_distance();
  const auto [be, sbe] = fit.binding_energy();
  std::string out;
  out += "[fit]\n";
  out += fmt::format("source = {}\n", source);
  out += "model = D_e*(1-exp(-a*(r-r_e)))^2 - D_e + E_offset\n";
  out += "solver = levenberg-marquardt\n";
  out += fmt::format("weighting = {}\n", fit.weighted ? "inverse-variance (1/stderr^2)" : "uniform");
  out += fmt::format("uncertainty = 1-sigma from covariance{}\n", fit.weighted ? "" : " scaled by reduced chi-square");
  out += fmt::format("n_points = {}\n\n", fit.n_points);
  out += "[parameters]\n";
  out += fmt::format("D_e = {:.10f}\n", p.de);
  out += fmt::format("a = {:.10f}\n", p.a);
  out += fmt::format("r_e = {:.6f}\n", p.re);
  out += fmt::format("E_offset = {:.10f}\n\n", p.offset);
  out += "[sigma]\n";
  out += fmt::format("D_e = {:.10f}\na = {:.10f}\nr_e = {:.6f}\nE_offset = {:.10f}\n\n", fit.sigma[0], fit.sigma[1],
                     fit.sigma[2], fit.sigma[3]);
  out += "[covariance]\n";
  out += "# order: D_e a r_e E_offset\n";
  for (int i = 0; i < 4; ++i) {
    out += fmt::format("row{} = {:.6e} {:.6e} {:.6e} {:.6e}\n", i, fit.covariance(i, 0), fit.covariance(i, 1),
                       fit.covariance(i, 2), fit.covariance(i, 3));
  }
  out += "\n[observables]\n";
  out += fmt::format("equilibrium_distance_angstrom = {:.6f} +/- {:.6f}\n", re, sre);
  out += fmt::format("binding_energy_ha = {:.6f} +/- {:.6f}\n", be, sbe);
  out += fmt::format("binding_energy_kj_mol = {:.3f} +/- {:.3f}\n\n", be * kKjPerMolPerHartree,
                     sbe * kKjPerMolPerHartree);
  out += "[diagnostics]\n";
  out += fmt::format("converged = {}\n", fit.converged);
  out += fmt::format("iterations = {}\n", fit.iterations);
  out += fmt::format("message = {}\n", fit.message);
  out += fmt::format("chi2 = {:.6e}\n", fit.chi2);
  out += fmt::format("rms_residual_ha = {:.6e}\n", fit.rms_residual);
  out += fmt::format("final_damping = {:.3e}\n", fit.final_damping);
  out += fmt::format("singular = {}\n", fit.singular);
  out += fmt::format("low_confidence = {}\n", fit.low_confidence);
  return out;
}

std::string format_plot_data(const MorseFit& fit, double r_min, double r_max) {
  std::string out = "distance_angstrom,energy_ha,energy_rel_ha\n";
  for (const auto& [r, e] : sample_curve(fit.params, r_min, r_max, 0.01)) {
    out += fmt::format("{:.4f},{:.12f},{:.12f}\n", r, e, e - fit.params.offset);
  }
  return out;
}

std::string format_run_metadata(const ScanConfig& config, const std::vector<PointResult>& results) {
  YAML::Emitter y;
  y << YAML::BeginMap;
  y << YAML::Key << "system" << YAML::Value << config.system;
  y << YAML::Key << "method" << YAML::Value << to_string(config.method);
  y << YAML::Key << "fixture_dir" << YAML::Value << config.fixture_dir.string();
  y << YAML::Key << "active_space" << YAML::Value << config.active_space.value_or("from metadata");
  y << YAML::Key << "optimizer" << YAML::Value << "bfgs";
  y << YAML::Key << "gradient" << YAML::Value << to_string(config.vqe.gradient);
  y << YAML::Key << "max_iterations" << YAML::Value << config.vqe.max_iterations;
  y << YAML::Key << "f_tol" << YAML::Value << config.vqe.f_tol;
  y << YAML::Key << "g_tol" << YAML::Value << config.vqe.g_tol;
  y << YAML::Key << "initial_params" << YAML::Value
    << (config.method == ScanMethod::ryrz
            ? fmt::format("uniform in [-{}, {}] from the point seed", kRyRzInitialSpread, kRyRzInitialSpread)
            : std::string("zeros"));
  if (config.method == ScanMethod::adapt || config.method == ScanMethod::sampled_adapt) {
    y << YAML::Key << "adapt" << YAML::Value << YAML::BeginMap;
    y << YAML::Key << "max_outer_iterations" << YAML::Value << config.adapt.max_outer_iterations;
    y << YAML::Key << "grad_threshold" << YAML::Value << config.adapt.grad_threshold;
    y << YAML::Key << "energy_threshold" << YAML::Value << config.adapt.energy_threshold;
    y << YAML::EndMap;
  }
  if (config.method == ScanMethod::ryrz) {
    y << YAML::Key << "reps" << YAML::Value << config.reps;
    y << YAML::Key << "entangler" << YAML::Value << (config.entangler == Entangler::chain ? "chain" : "full");
  }
  y << YAML::Key << "seed" << YAML::Value << config.seed;
  if (config.method == ScanMethod::sampled_adapt) {
    y << YAML::Key << "shots" << YAML::Value << config.shots;
    y << YAML::Key << "calibration_shots" << YAML::Value << config.shots;
    y << YAML::Key << "noise_p01" << YAML::Value << config.noise_p01;
    y << YAML::Key << "noise_p10" << YAML::Value << config.noise_p10;
    y << YAML::Key << "trex" << YAML::Value << config.trex;
  }
  y << YAML::Key << "points" << YAML::Value << YAML::BeginSeq;
  for (const auto& r : results) {
    y << YAML::BeginMap;
    y << YAML::Key << "distance_angstrom" << YAML::Value << r.distance;
    y << YAML::Key << "fixture" << YAML::Value << r.fixture.filename().string();
    y << YAML::Key << "status" << YAML::Value << (r.ok ? "ok" : "failed");
    if (!r.ok) y << YAML::Key << "error" << YAML::Value << r.error;
    y << YAML::Key << "energy_ha" << YAML::Value << fmt_energy(r.energy);
    y << YAML::Key << "hf_energy_ha" << YAML::Value << fmt_energy(r.hf_energy);
    y << YAML::Key << "e_core_ha" << YAML::Value << fmt_energy(r.e_core);
    y << YAML::Key << "n_qubits" << YAML::Value << r.n_qubits;
    y << YAML::Key << "n_params" << YAML::Value << r.n_params;
    y << YAML::Key << "iterations" << YAML::Value << r.iterations;
    y << YAML::Key << "evaluations" << YAML::Value << r.evaluations;
    y << YAML::Key << "converged" << YAML::Value << r.converged;
    if (!r.stop_reason.empty()) {
      y << YAML::Key << "outer_iterations" << YAML::Value << r.outer_iterations;
      y << YAML::Key << "stop_reason" << YAML::Value << r.stop_reason;
      y << YAML::Key << "chosen_ops" << YAML::Value << YAML::Flow << r.chosen_ops;
    }
    if (config.method == ScanMethod::ryrz) y << YAML::Key << "init_seed" << YAML::Value << r.sample_seed;
    if (config.method == ScanMethod::sampled_adapt) {
      y << YAML::Key << "sample_seed" << YAML::Value << r.sample_seed;
      y << YAML::Key << "stderr_ha" << YAML::Value << fmt_energy(r.std_error);
    }
    y << YAML::Key << "wall_time_s" << YAML::Value << fmt::format("{:.3f}", r.wall_time_s);
    y << YAML::EndMap;
  }
  y << YAML::EndSeq;
  y << YAML::EndMap;
  return std::string(y.c_str()) + "\n";
}

std::optional<MorseFit> write_scan_outputs(const ScanConfig& config, const std::vector<PointResult>& results,
                                           const fs::path& out_dir) {
  fs::create_directories(out_dir);
  write_text(out_dir / "results.csv", format_results(results, config.record_wall_time));
  write_text(out_dir / "scan_metadata.yaml", format_run_metadata(config, results));
  std::vector<PesPoint> points = to_pes_points(results);
  if (config.fit_max_wall_ha) points = window_points(points, *config.fit_max_wall_ha);
  if (points.size() < 4) return std::nullopt;
  const MorseFit fit = fit_morse(points);
  write_text(out_dir / "fit_report.txt", format_fit_report(fit, (out_dir / "results.csv").string()));
  write_text(out_dir / "morse_curve.csv",
             format_plot_data(fit, points.front().distance, points.back().distance));
  return fit;
}

}  // namespace vqepes
