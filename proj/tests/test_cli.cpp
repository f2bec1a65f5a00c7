// End-to-end tests that drive the sclab binary and compare against golden files.
// SCLAB_BIN and GOLDEN_DIR are injected by ctest; bytes must match exactly, so any
// formatting or numeric drift in the CLI surfaces here.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

std::string sclab_bin() {
  const char* p = std::getenv("SCLAB_BIN");
  return p ? p : "./sclab";
}

fs::path golden_dir() {
  const char* p = std::getenv("GOLDEN_DIR");
  return p ? fs::path(p) : fs::path("../tests/golden");
}

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Runs the binary with stderr folded into stdout unless asked otherwise.
RunResult run_sclab(const std::string& args, bool merge_stderr = true) {
  const std::string cmd = "\"" + sclab_bin() + "\" " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: " << path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string golden(const std::string& name) { return read_file(golden_dir() / name); }

// Fresh per-test scratch directory under the ctest working directory.
fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path("cli_scratch") / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("scales table matches the golden bytes") {
  const RunResult r = run_sclab("scales --d 1152 --alpha 0.99");
  CHECK(r.exit_code == 0);
  CHECK(r.output == golden("scales_d1152_alpha099.txt"));
}

TEST_CASE("scales json output matches the golden bytes") {
  const RunResult r = run_sclab("scales --d 100 --alpha 0.5 --gamma 0.5 --json");
  CHECK(r.exit_code == 0);
  CHECK(r.output == golden("scales_json_d100.txt"));
}

TEST_CASE("scales rejects alpha outside (0,1) on stderr with exit 1") {
  const RunResult merged = run_sclab("scales --d 100 --alpha 1.5");
  CHECK(merged.exit_code == 1);
  CHECK(merged.output.find("alpha must lie in (0,1)") != std::string::npos);
  const RunResult stdout_only = run_sclab("scales --d 100 --alpha 1.5", false);
  CHECK(stdout_only.output.empty());
}

TEST_CASE("welch-check reports exact floor attainment for a tight frame") {
  const RunResult r = run_sclab("welch-check --tight-frame --d 4 --F 8");
  CHECK(r.exit_code == 0);
  CHECK(r.output == golden("welch_tight_d4_F8.txt"));
  CHECK(r.output.find("slack_sum: 0\n") != std::string::npos);
}

TEST_CASE("welch-check on an identity code is an all-zero report") {
  const RunResult r = run_sclab("welch-check --identity --d 5");
  CHECK(r.exit_code == 0);
  CHECK(r.output == golden("welch_identity_d5.txt"));
}

TEST_CASE("gen-code then certify and welch-check round-trip through a file") {
  const fs::path dir = scratch("roundtrip");
  const std::string code_path = (dir / "tf.sclb").string();
  const RunResult gen = run_sclab(
      "gen-code --kind tight-frame --d 6 --F 12 --seed 7 --out " + code_path);
  CHECK(gen.exit_code == 0);
  CHECK(gen.output.find("d=6 F=12 kind=tight-frame") != std::string::npos);

  const RunResult cert = run_sclab("certify --code " + code_path);
  CHECK(cert.exit_code == 0);
  CHECK(cert.output == golden("certify_tight_d6_F12.txt"));

  const RunResult welch =
      run_sclab("welch-check --code " + code_path + " --readout least-squares");
  CHECK(welch.exit_code == 0);
  CHECK(welch.output == golden("welch_ls_tight_d6_F12.txt"));
}

TEST_CASE("a truncated code file fails with the byte offset named") {
  const fs::path dir = scratch("truncated");
  const std::string code_path = (dir / "tf.sclb").string();
  REQUIRE(run_sclab("gen-code --kind tight-frame --d 6 --F 12 --seed 7 --out " +
                    code_path)
              .exit_code == 0);
  const std::string whole = read_file(code_path);
  const fs::path cut_path = dir / "cut.sclb";
  std::ofstream(cut_path, std::ios::binary) << whole.substr(0, 20);

  const RunResult r = run_sclab("certify --code " + cut_path.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("byte offset") != std::string::npos);
}

TEST_CASE("experiment run matches the frozen CSV and reruns byte-identically") {
  const fs::path dir = scratch("phase");
  const std::string config = (golden_dir() / "phase_32_64.ini").string();
  const std::string out_a = (dir / "a").string();
  const std::string out_b = (dir / "b").string();

  const RunResult run_a = run_sclab("experiment --config " + config + " --out " + out_a);
  CHECK(run_a.exit_code == 0);
  const RunResult run_b = run_sclab("experiment --config " + config + " --out " + out_b);
  CHECK(run_b.exit_code == 0);

  const std::string csv_a = read_file(fs::path(out_a) / "results.csv");
  CHECK(csv_a == golden("phase_32_64.csv"));
  CHECK(csv_a == read_file(fs::path(out_b) / "results.csv"));
  CHECK(read_file(fs::path(out_a) / "results.json") ==
        read_file(fs::path(out_b) / "results.json"));
  CHECK(read_file(fs::path(out_a) / "phase_noise0_F0.svg") ==
        read_file(fs::path(out_b) / "phase_noise0_F0.svg"));

  // The manifests agree on every digest; only wall time may differ.
  const auto manifest_a =
      nlohmann::json::parse(read_file(fs::path(out_a) / "manifest.json"));
  const auto manifest_b =
      nlohmann::json::parse(read_file(fs::path(out_b) / "manifest.json"));
  CHECK(manifest_a.at("files") == manifest_b.at("files"));
  CHECK(manifest_a.at("config") == manifest_b.at("config"));
  CHECK(manifest_a.contains("wall_time_seconds"));
}

TEST_CASE("experiment rejects an invalid config with exit 1 naming the field") {
  const fs::path dir = scratch("badconfig");
  const fs::path config = dir / "bad.ini";
  std::ofstream(config) << "[run]\nexperiment = energy-floor\ntrials = 0\n"
                        << "[grid]\nd = 16\nF = 256\ns = 2\n";
  const RunResult r = run_sclab("experiment --config " + config.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("trials must be >= 1") != std::string::npos);

  const RunResult missing = run_sclab("experiment --config " +
                                      (dir / "nope.ini").string());
  CHECK(missing.exit_code == 1);
  CHECK(missing.output.find("cannot open config file") != std::string::npos);
}
