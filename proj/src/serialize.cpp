#include "scl/serialize.hpp"

#include <charconv>
#include <json.hpp>

namespace scl {

std::string format_scalar(Scalar v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

const char* to_string(FSpec::Rule rule) {
  switch (rule) {
    case FSpec::Rule::Explicit: return "explicit";
    case FSpec::Rule::MultipleOfD: return "multiple-of-d";
    case FSpec::Rule::SquareOfD: return "square-of-d";
  }
  return "unknown";
}

std::string to_string(const FSpec& f) {
  switch (f.rule) {
    case FSpec::Rule::Explicit: return std::to_string(f.value);
    case FSpec::Rule::MultipleOfD: return std::to_string(f.value) + "d";
    case FSpec::Rule::SquareOfD: return "d^2";
  }
  return "?";
}

std::string to_csv(const ExperimentResult& result) {
  std::string out =
      "experiment,d,F,s,noise,statistic,value,stderr,bound,bound_name,satisfied,"
      "trials,seed\n";
  for (const ResultRow& r : result.rows) {
    out += r.experiment;
    out += ',';
    out += std::to_string(r.d);
    out += ',';
    out += std::to_string(r.F);
    out += ',';
    out += std::to_string(r.s);
    out += ',';
    out += format_scalar(r.noise);
    out += ',';
    out += r.statistic;
    out += ',';
    out += format_scalar(r.value);
    out += ',';
    out += format_scalar(r.std_error);
    out += ',';
    if (r.has_bound) {
      out += format_scalar(r.bound);
      out += ',';
      out += r.bound_name;
      out += ',';
      out += r.satisfied ? "true" : "false";
    } else {
      out += ",,";
    }
    out += ',';
    out += std::to_string(r.trials);
    out += ',';
    out += std::to_string(r.seed);
    out += '\n';
  }
  return out;
}

std::string to_json(const ExperimentResult& result) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ResultRow& r : result.rows) {
    nlohmann::ordered_json jr;
    jr["experiment"] = r.experiment;
    jr["d"] = r.d;
    jr["F"] = r.F;
    jr["s"] = r.s;
    jr["noise"] = r.noise;
    jr["statistic"] = r.statistic;
    jr["value"] = r.value;
    jr["stderr"] = r.std_error;
    if (r.has_bound) {
      jr["bound"] = r.bound;
      jr["bound_name"] = r.bound_name;
      jr["satisfied"] = r.satisfied;
    }
    jr["trials"] = r.trials;
    jr["seed"] = r.seed;
    rows.push_back(jr);
  }
  j["rows"] = rows;
  j["metadata"] = {{"seed", result.seed},
                   {"version", result.version},
                   {"log_convention", "natural_log"},
                   {"notes", result.notes}};
  return j.dump(2);
}

std::string config_to_json_text(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["experiment"] = to_string(cfg.experiment);
  j["d"] = cfg.d_values;
  nlohmann::ordered_json fs = nlohmann::ordered_json::array();
  for (const FSpec& f : cfg.F_values) fs.push_back(to_string(f));
  j["F"] = fs;
  j["s"] = cfg.s_values;
  j["noise"] = cfg.noise_values;
  switch (cfg.noise_kind) {
    case NoiseSpec::Kind::None: j["noise_kind"] = "none"; break;
    case NoiseSpec::Kind::GaussianAmbient: j["noise_kind"] = "gaussian"; break;
    case NoiseSpec::Kind::ScoreBounded: j["noise_kind"] = "score"; break;
  }
  j["delta"] = cfg.delta_values;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["tile_cols"] = cfg.plan.tile_cols;
  j["parallel"] = cfg.plan.parallel_tiles;
  j["fixed_code"] = cfg.fixed_code;
  j["check_certificate"] = cfg.check_certificate;
  j["readout"] = cfg.readout == ReadoutKind::LeastSquares ? "least-squares"
                                                          : "transpose";
  j["calibrated_c"] = cfg.calibrated_c;
  return j.dump(2);
}

}  // namespace scl
