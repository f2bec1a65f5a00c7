#include "scl/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "scl/errors.hpp"

namespace scl {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::size_t end = comma == std::string::npos ? s.size() : comma;
    const std::string item = trim(s.substr(start, end - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ContractError("config line " + std::to_string(line) + ": " + what);
}

long long parse_int(const std::string& s, int line, const char* field) {
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0')
    fail(line, std::string(field) + ": '" + s + "' is not an integer");
  return v;
}

Scalar parse_real(const std::string& s, int line, const char* field) {
  char* end = nullptr;
  const Scalar v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    fail(line, std::string(field) + ": '" + s + "' is not a number");
  return v;
}

bool parse_bool(const std::string& s, int line, const char* field) {
  if (s == "true") return true;
  if (s == "false") return false;
  fail(line, std::string(field) + ": '" + s + "' is not true/false");
}

FSpec parse_fspec(const std::string& s, int line) {
  if (s == "d^2") return FSpec::square_of_d();
  if (!s.empty() && s.back() == 'd') {
    const std::string head = s.substr(0, s.size() - 1);
    if (head.empty()) return FSpec::multiple_of_d(1);
    return FSpec::multiple_of_d(
        static_cast<Index>(parse_int(head, line, "F multiplier")));
  }
  return FSpec::explicit_value(static_cast<Index>(parse_int(s, line, "F")));
}

ExperimentKind parse_kind(const std::string& s, int line) {
  if (s == "coherence-tail") return ExperimentKind::CoherenceTail;
  if (s == "interference-tail") return ExperimentKind::InterferenceTail;
  if (s == "recovery-phase") return ExperimentKind::RecoveryPhase;
  if (s == "energy-floor") return ExperimentKind::EnergyFloor;
  if (s == "quadratic-separation") return ExperimentKind::QuadraticSeparation;
  fail(line, "experiment: unknown kind '" + s + "'");
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  bool saw_experiment = false;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "run" && section != "grid")
        fail(line_no, "unknown section [" + section + "]");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) fail(line_no, "key '" + key + "' outside any section");
    if (value.empty()) fail(line_no, "key '" + key + "' has no value");

    if (section == "run") {
      if (key == "experiment") {
        cfg.experiment = parse_kind(value, line_no);
        saw_experiment = true;
      } else if (key == "trials") {
        cfg.trials = static_cast<Index>(parse_int(value, line_no, "trials"));
      } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_int(value, line_no, "seed"));
      } else if (key == "parallel") {
        cfg.plan.parallel_tiles = parse_bool(value, line_no, "parallel");
      } else if (key == "tile_cols") {
        cfg.plan.tile_cols = static_cast<Index>(parse_int(value, line_no, "tile_cols"));
        if (cfg.plan.tile_cols < 1) fail(line_no, "tile_cols must be >= 1");
      } else if (key == "noise_kind") {
        if (value == "none")
          cfg.noise_kind = NoiseSpec::Kind::None;
        else if (value == "gaussian")
          cfg.noise_kind = NoiseSpec::Kind::GaussianAmbient;
        else if (value == "score")
          cfg.noise_kind = NoiseSpec::Kind::ScoreBounded;
        else
          fail(line_no, "noise_kind: unknown value '" + value + "'");
      } else if (key == "readout") {
        if (value == "transpose")
          cfg.readout = ReadoutKind::Transpose;
        else if (value == "least-squares")
          cfg.readout = ReadoutKind::LeastSquares;
        else
          fail(line_no, "readout: unknown value '" + value + "'");
      } else if (key == "fixed_code") {
        cfg.fixed_code = parse_bool(value, line_no, "fixed_code");
      } else if (key == "check_certificate") {
        cfg.check_certificate = parse_bool(value, line_no, "check_certificate");
      } else if (key == "calibrated_c") {
        cfg.calibrated_c = parse_real(value, line_no, "calibrated_c");
      } else {
        fail(line_no, "unknown key '" + key + "' in [run]");
      }
    } else {  // [grid]
      if (key == "d") {
        for (const std::string& item : split_list(value))
          cfg.d_values.push_back(static_cast<Index>(parse_int(item, line_no, "d")));
      } else if (key == "F") {
        for (const std::string& item : split_list(value))
          cfg.F_values.push_back(parse_fspec(item, line_no));
      } else if (key == "s") {
        for (const std::string& item : split_list(value))
          cfg.s_values.push_back(static_cast<Index>(parse_int(item, line_no, "s")));
      } else if (key == "noise") {
        for (const std::string& item : split_list(value))
          cfg.noise_values.push_back(parse_real(item, line_no, "noise"));
      } else if (key == "delta") {
        for (const std::string& item : split_list(value))
          cfg.delta_values.push_back(parse_real(item, line_no, "delta"));
      } else {
        fail(line_no, "unknown key '" + key + "' in [grid]");
      }
    }
  }
  if (!saw_experiment) throw ContractError("config: missing experiment key in [run]");
  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileFormatError("cannot open config file: " + path, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace scl
