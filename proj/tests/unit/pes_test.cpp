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

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "test_util.hpp"
#include "vqepes/error.hpp"

namespace vqepes {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("vqepes_pes_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

struct CliRun {
  int code = -1;
  std::string output;
};

CliRun run_cli(const std::string& args, const fs::path& dir) {
  const fs::path log = dir / "cli_output.txt";
  const std::string cmd = fmt::format("\"{}\" {} > \"{}\" 2>&1", VQEPES_CLI, args, log.string());
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(log)};
}

ScanConfig h2_config(ScanMethod m) {
  ScanConfig c;
  c.system = "h2";
  c.method = m;
  c.fixture_dir = testing::fixture("h2");
  return c;
}

std::string morse_csv(const MorseParams& p, int n = 12) {
  std::string out = "distance_angstrom,energy_ha,stderr_ha,method,iterations,evaluations,wall_time_s,status\n";
  for (int k = 1; k <= n; ++k) {
    const double r = 0.3 * k;
    out += fmt::format("{:.3f},{:.14f},0,exact,0,0,NA,ok\n", r, morse_energy(p, r));
  }
  return out;
}

TEST(ScanMethod, Names) {
  for (auto m : {ScanMethod::uccsd, ScanMethod::ryrz, ScanMethod::adapt, ScanMethod::exact,
                 ScanMethod::sampled_adapt}) {
    EXPECT_EQ(parse_scan_method(to_string(m)), m);
  }
  EXPECT_EQ(to_string(ScanMethod::sampled_adapt), "sampled-adapt");
  EXPECT_THROW(parse_scan_method("slsqp"), UsageError);
}

TEST(DefaultDistances, TwelvePoints) {
  const auto d = default_distances();
  ASSERT_EQ(d.size(), 12u);
  EXPECT_DOUBLE_EQ(d.front(), 0.3);
  EXPECT_NEAR(d.back(), 3.6, 1e-12);
}

TEST(Manifest, ParsesEveryField) {
  const ScanConfig c = parse_manifest(R"(system: mg_h2o
method: sampled-adapt
distances: [1.5, 1.8, 2.1]
fixture_dir: fixtures/mg
active_space: "6,7"
seed: 42
shots: 2048
noise_p01: 0.02
noise_p10: 0.03
trex: true
reps: 2
entangler: full
workers: 2
record_wall_time: true
fit_max_wall_ha: 0.5
vqe:
  gradient: parameter-shift
  max_iterations: 50
  f_tol: 1.0e-9
  g_tol: 1.0e-7
adapt:
  max_outer_iterations: 6
  grad_threshold: 1.0e-5
  energy_threshold: 1.0e-4
)",
                                      "/base");
  EXPECT_EQ(c.system, "mg_h2o");
  EXPECT_EQ(c.method, ScanMethod::sampled_adapt);
  EXPECT_EQ(c.distances, (std::vector<double>{1.5, 1.8, 2.1}));
  EXPECT_EQ(c.fixture_dir, fs::path("/base/fixtures/mg"));
  EXPECT_EQ(c.active_space, "6,7");
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.shots, 2048u);
  EXPECT_DOUBLE_EQ(c.noise_p01, 0.02);
  EXPECT_DOUBLE_EQ(c.noise_p10, 0.03);
  EXPECT_TRUE(c.trex);
  EXPECT_EQ(c.reps, 2u);
  EXPECT_EQ(c.entangler, Entangler::full);
  EXPECT_EQ(c.workers, 2u);
  EXPECT_TRUE(c.record_wall_time);
  EXPECT_EQ(c.fit_max_wall_ha, 0.5);
  EXPECT_EQ(c.vqe.gradient, GradientMethod::parameter_shift);
  EXPECT_EQ(c.vqe.max_iterations, 50u);
  EXPECT_DOUBLE_EQ(c.vqe.f_tol, 1e-9);
  EXPECT_DOUBLE_EQ(c.vqe.g_tol, 1e-7);
  EXPECT_EQ(c.adapt.max_outer_iterations, 6u);
  EXPECT_DOUBLE_EQ(c.adapt.grad_threshold, 1e-5);
  EXPECT_DOUBLE_EQ(c.adapt.energy_threshold, 1e-4);
  EXPECT_DOUBLE_EQ(c.adapt.inner.f_tol, 1e-9);
}

TEST(Manifest, Defaults) {
  const ScanConfig c = parse_manifest("fixture_dir: /data\n");
  EXPECT_EQ(c.distances, default_distances());
  EXPECT_EQ(c.method, ScanMethod::adapt);
  EXPECT_EQ(c.adapt.max_outer_iterations, 4u);
  EXPECT_EQ(c.fixture_dir, fs::path("/data"));
}

TEST(Manifest, Errors) {
  EXPECT_THROW(parse_manifest("fixture_dir: x\ndistances: [1.0]\n"), UsageError);
  EXPECT_THROW(parse_manifest("fixture_dir: x\ndistances: [1.0, 0.5]\n"), UsageError);
  EXPECT_THROW(parse_manifest("fixture_dir: x\nmethod: slsqp\n"), UsageError);
  EXPECT_THROW(parse_manifest("fixture_dir: x\nshots_per_term: 3\n"), UsageError);
  EXPECT_THROW(parse_manifest("method: exact\n"), UsageError);
  EXPECT_THROW(parse_manifest("fixture_dir: x\nnoise_p01: 0.7\n"), UsageError);
  EXPECT_THROW(parse_manifest("fixture_dir: x\nvqe: {f_tol: 0}\n"), UsageError);
  EXPECT_THROW(parse_manifest("fixture_dir: x\nadapt: {depth: 2}\n"), UsageError);
  EXPECT_THROW(parse_manifest("fixture_dir: [unclosed\n"), ParseError);
}

TEST(LocateFixtures, FindsEveryH2Distance) {
  const auto paths = locate_fixtures(h2_config(ScanMethod::exact));
  ASSERT_EQ(paths.size(), 12u);
  EXPECT_EQ(paths[2].filename(), "h2_0.900.fcidump");
}

TEST(LocateFixtures, ListsEveryMissingDistance) {
  ScanConfig c = h2_config(ScanMethod::exact);
  c.distances = {0.3, 0.45, 5.0};
  try {
    locate_fixtures(c);
    FAIL();
  } catch (const Error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("0.45"), std::string::npos) << msg;
    EXPECT_NE(msg.find("5"), std::string::npos) << msg;
  }
  c = h2_config(ScanMethod::exact);
  c.system = "mg_h2o";
  EXPECT_THROW(locate_fixtures(c), Error);
}

TEST(LoadFixture, UsesMetadataActiveSpace) {
  const LoadedFixture f = load_fixture(testing::fixture("mg_h2o/mg_h2o_1.900.fcidump"), std::nullopt);
  EXPECT_EQ(f.problem.n_qubits, 14);
  EXPECT_EQ(f.problem.n_elec, 6);
  EXPECT_NEAR(f.problem.hf_energy, *f.meta.hf_energy_ha, 1e-8);
}

TEST(RunScan, ExactOnH2MatchesFci) {
  const auto results = run_scan(h2_config(ScanMethod::exact));
  ASSERT_EQ(results.size(), 12u);
  for (const auto& r : results) {
    ASSERT_TRUE(r.ok) << r.error;
    EXPECT_EQ(r.std_error, 0.0);
    EXPECT_NEAR(r.energy, *testing::generation_log_value("h2", r.distance, "fci"), 1e-8) << r.distance;
  }
}

TEST(RunScan, AdaptMatchesExactPointwise) {
  const auto exact = run_scan(h2_config(ScanMethod::exact));
  const auto adapt = run_scan(h2_config(ScanMethod::adapt));
  ASSERT_EQ(adapt.size(), exact.size());
  for (std::size_t k = 0; k < exact.size(); ++k) {
    EXPECT_NEAR(adapt[k].energy, exact[k].energy, 1e-3) << exact[k].distance;
    EXPECT_GE(adapt[k].energy, exact[k].energy - 1e-9);
    EXPECT_FALSE(adapt[k].chosen_ops.empty());
    EXPECT_FALSE(adapt[k].stop_reason.empty());
  }
}

TEST(RunScan, WorkerCountDoesNotChangeResults) {
  ScanConfig one = h2_config(ScanMethod::sampled_adapt);
  one.seed = 9;
  one.shots = 512;
  ScanConfig three = one;
  three.workers = 3;
  const auto a = run_scan(one);
  const auto b = run_scan(three);
  EXPECT_EQ(format_results(a, false), format_results(b, false));
  for (const auto& r : a) EXPECT_GT(r.std_error, 0.0);
}

TEST(RunScan, FailingPointsAreFlagged) {
  ScanConfig c = h2_config(ScanMethod::exact);
  c.active_space = "4,2";
  const auto results = run_scan(c);
  ASSERT_EQ(results.size(), 12u);
  for (const auto& r : results) {
    EXPECT_FALSE(r.ok);
    EXPECT_FALSE(r.error.empty());
  }
  EXPECT_NE(format_results(results, false).find(",failed"), std::string::npos);
  EXPECT_TRUE(to_pes_points(results).empty());
}

TEST(RunScan, SampledModeIsDeterministicUnderSeed) {
  ScanConfig c = h2_config(ScanMethod::sampled_adapt);
  c.distances = {0.6, 0.9, 1.2};
  c.seed = 3;
  c.noise_p01 = c.noise_p10 = 0.02;
  c.trex = true;
  EXPECT_EQ(format_results(run_scan(c), false), format_results(run_scan(c), false));
  ScanConfig other = c;
  other.seed = 4;
  EXPECT_NE(format_results(run_scan(c), false), format_results(run_scan(other), false));
}

TEST(Results, RoundTrip) {
  std::vector<PointResult> rs(3);
  for (int k = 0; k < 3; ++k) {
    rs[k].distance = 0.3 * (k + 1);
    rs[k].energy = -1.0 - 0.01 * k;
    rs[k].std_error = 0.001 * k;
    rs[k].method = ScanMethod::adapt;
    rs[k].iterations = 5;
    rs[k].evaluations = 7;
  }
  rs[1].ok = false;
  const std::string text = format_results(rs, false);
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "distance_angstrom,energy_ha,stderr_ha,method,iterations,evaluations,wall_time_s,status");
  EXPECT_NE(text.find(",NA,"), std::string::npos);
  const auto pts = parse_results(text);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_DOUBLE_EQ(pts[1].distance, 0.9);
  EXPECT_NEAR(pts[1].energy, -1.02, 1e-12);
  EXPECT_NEAR(pts[1].std_error, 0.002, 1e-12);
}

TEST(Results, WhitespaceAndColumnOrder) {
  const auto pts = parse_results("energy_ha distance_angstrom\n-1.0 0.5\n-1.1 0.7\n");
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_DOUBLE_EQ(pts[1].distance, 0.7);
  EXPECT_DOUBLE_EQ(pts[1].std_error, 0.0);
  EXPECT_THROW(parse_results("r,e\n1,2\n"), ParseError);
  EXPECT_THROW(parse_results("distance_angstrom,energy_ha\n1.0\n"), ParseError);
}

TEST(WriteScanOutputs, WritesEveryFile) {
  const fs::path out = scratch_dir("outputs");
  const auto results = run_scan(h2_config(ScanMethod::exact));
  const auto fit = write_scan_outputs(h2_config(ScanMethod::exact), results, out);
  ASSERT_TRUE(fit.has_value());
  for (const char* f : {"results.csv", "scan_metadata.yaml", "fit_report.txt", "morse_curve.csv"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  EXPECT_EQ(read_results(out / "results.csv").size(), 12u);
  const std::string meta = slurp(out / "scan_metadata.yaml");
  EXPECT_NE(meta.find("optimizer: bfgs"), std::string::npos);
  EXPECT_NE(slurp(out / "fit_report.txt").find("[covariance]"), std::string::npos);
}

TEST(FitReport, ContainsObservables) {
  const MorseFit fit = fit_morse(parse_results(morse_csv({0.1, 1.5, 1.87, 0.0})));
  const std::string report = format_fit_report(fit, "synthetic");
  EXPECT_NE(report.find("r_e = 1.87"), std::string::npos);
  EXPECT_NE(report.find("binding_energy_ha = -0.100000"), std::string::npos);
  EXPECT_NE(report.find("weighting = uniform"), std::string::npos);
  const std::string plot = format_plot_data(fit, 0.3, 3.6);
  EXPECT_EQ(std::count(plot.begin(), plot.end(), '\n'), 332);
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = scratch_dir(::testing::UnitTest::GetInstance()->current_test_info()->name());
  }
  fs::path dir_;
};

TEST_F(Cli, InspectH2) {
  const CliRun r = run_cli(fmt::format("inspect --fcidump \"{}\"", testing::h2_fixture(0.735).string()), dir_);
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("norb=2 nelec=2 qubits=4"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("hf_energy_metadata=-1.116998996754"), std::string::npos) << r.output;
}

TEST_F(Cli, InspectMissingFile) {
  const std::string path = (dir_ / "nope.fcidump").string();
  const CliRun r = run_cli(fmt::format("inspect --fcidump \"{}\"", path), dir_);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("nope.fcidump"), std::string::npos) << r.output;
}

TEST_F(Cli, InspectCorruptHeader) {
  const fs::path bad = dir_ / "bad.fcidump";
  write(bad, " &FCI NORB=2,NELEC=2,\n  ORBSYM=1,1,\n  ISYM=1,\n &END\n  0.5 1 1 1 1\n 0.5 x 1 0 0\n");
  const CliRun r = run_cli(fmt::format("inspect --fcidump \"{}\"", bad.string()), dir_);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find(":6"), std::string::npos) << r.output;
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run_cli("", dir_).code, 2);
  EXPECT_EQ(run_cli("frobnicate", dir_).code, 2);
  EXPECT_EQ(run_cli("inspect", dir_).code, 2);
  EXPECT_EQ(run_cli("vqe --fcidump x --method slsqp", dir_).code, 2);
}

TEST_F(Cli, ExactAndVqeOnH2) {
  const std::string fixture = testing::h2_fixture(0.735).string();
  const CliRun exact = run_cli(fmt::format("exact --fcidump \"{}\"", fixture), dir_);
  EXPECT_EQ(exact.code, 0) << exact.output;
  EXPECT_NE(exact.output.find("energy_ha=-1.13730603"), std::string::npos) << exact.output;
  const CliRun vqe = run_cli(fmt::format("vqe --fcidump \"{}\" --method uccsd --out \"{}\"", fixture, dir_.string()),
                             dir_);
  EXPECT_EQ(vqe.code, 0) << vqe.output;
  EXPECT_NE(vqe.output.find("-1.13730603"), std::string::npos) << vqe.output;
  const CliRun adapt = run_cli(fmt::format("adapt --fcidump \"{}\"", fixture), dir_);
  EXPECT_EQ(adapt.code, 0) << adapt.output;
  EXPECT_NE(adapt.output.find("stop_reason"), std::string::npos) << adapt.output;
  const CliRun res = run_cli(fmt::format("resources --fcidump \"{}\"", fixture), dir_);
  EXPECT_EQ(res.code, 0) << res.output;
  EXPECT_NE(res.output.find("Depth"), std::string::npos) << res.output;
}

TEST_F(Cli, ScanAdaptOverH2) {
  const fs::path manifest = dir_ / "scan.yaml";
  write(manifest, fmt::format("system: h2\nmethod: adapt\nfixture_dir: \"{}\"\nseed: 5\n",
                              testing::fixture("h2").string()));
  const fs::path out = dir_ / "out";
  const CliRun r = run_cli(fmt::format("scan --manifest \"{}\" --out \"{}\"", manifest.string(), out.string()), dir_);
  ASSERT_EQ(r.code, 0) << r.output;
  const std::string table = slurp(out / "results.csv");
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 13);
  EXPECT_TRUE(fs::exists(out / "fit_report.txt"));
  EXPECT_TRUE(fs::exists(out / "morse_curve.csv"));

  const fs::path again = dir_ / "again";
  ASSERT_EQ(run_cli(fmt::format("scan --manifest \"{}\" --out \"{}\"", manifest.string(), again.string()), dir_).code,
            0);
  EXPECT_EQ(slurp(again / "results.csv"), table);
}

TEST_F(Cli, ScanSampledRerunIsByteIdentical) {
  const fs::path manifest = dir_ / "scan.yaml";
  write(manifest, fmt::format("system: h2\nmethod: sampled-adapt\ndistances: [0.6, 0.9, 1.2, 1.5]\n"
                              "fixture_dir: \"{}\"\nseed: 11\nshots: 256\nnoise_p01: 0.02\nnoise_p10: 0.02\n",
                              testing::fixture("h2").string()));
  const CliRun a = run_cli(fmt::format("scan --manifest \"{}\" --out \"{}\"", manifest.string(), (dir_ / "a").string()),
                           dir_);
  const CliRun b = run_cli(fmt::format("scan --manifest \"{}\" --out \"{}\" --trex", manifest.string(),
                                       (dir_ / "b").string()),
                           dir_);
  const CliRun c = run_cli(fmt::format("scan --manifest \"{}\" --out \"{}\"", manifest.string(), (dir_ / "c").string()),
                           dir_);
  ASSERT_EQ(a.code, 0) << a.output;
  ASSERT_EQ(b.code, 0) << b.output;
  EXPECT_EQ(slurp(dir_ / "a" / "results.csv"), slurp(dir_ / "c" / "results.csv"));
  EXPECT_NE(slurp(dir_ / "a" / "results.csv"), slurp(dir_ / "b" / "results.csv"));
}

TEST_F(Cli, ScanUnknownMethodIsUsageError) {
  const fs::path manifest = dir_ / "scan.yaml";
  write(manifest, fmt::format("method: slsqp\nfixture_dir: \"{}\"\n", testing::fixture("h2").string()));
  EXPECT_EQ(run_cli(fmt::format("scan --manifest \"{}\" --out \"{}\"", manifest.string(), dir_.string()), dir_).code,
            2);
}

TEST_F(Cli, ScanWithTooFewGoodPointsFails) {
  const fs::path manifest = dir_ / "scan.yaml";
  write(manifest, fmt::format("method: exact\nactive_space: \"4,2\"\nfixture_dir: \"{}\"\n",
                              testing::fixture("h2").string()));
  const CliRun r = run_cli(fmt::format("scan --manifest \"{}\" --out \"{}\"", manifest.string(), (dir_ / "o").string()),
                           dir_);
  EXPECT_EQ(r.code, 1) << r.output;
  EXPECT_TRUE(fs::exists(dir_ / "o" / "results.csv"));
}

TEST_F(Cli, FitSyntheticMorse) {
  const fs::path points = dir_ / "points.csv";
  write(points, morse_csv({0.1, 1.5, 1.87, -2.0}));
  const CliRun r = run_cli(fmt::format("fit --points \"{}\"", points.string()), dir_);
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("r_e = 1.87"), std::string::npos) << r.output;
  const auto pos = r.output.find("rms_residual_ha = ");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_LT(std::stod(r.output.substr(pos + 18)), 1e-8);
}

TEST_F(Cli, FitTooFewPoints) {
  const fs::path points = dir_ / "points.csv";
  write(points, morse_csv({0.1, 1.5, 1.87, 0.0}, 3));
  EXPECT_EQ(run_cli(fmt::format("fit --points \"{}\"", points.string()), dir_).code, 1);
}

}  // namespace
}  // namespace vqepes
