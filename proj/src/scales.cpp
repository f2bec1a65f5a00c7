#include "scl/scales.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>

#include "scl/errors.hpp"

namespace scl {

namespace {

std::string fmt(Scalar v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// d/ln^2 d, the lower-side near-quadratic scale per unit width.
Scalar as_lower_per_width(Scalar d) {
  const Scalar l = std::log(d);
  return d / (l * l);
}

}  // namespace

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::ProvedImported: return "PROVED-IMPORTED";
    case Provenance::ProvedHere: return "PROVED-HERE";
    case Provenance::Conditional: return "CONDITIONAL";
    case Provenance::ReferenceOnly: return "REFERENCE-ONLY";
  }
  return "UNKNOWN";
}

Scalar g_of_alpha(Scalar alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw DomainError("g_of_alpha: alpha must lie in (0,1)");
  const Scalar log_term = -std::log1p(-alpha);  // ln(1/(1-alpha))
  return 1.0 / ((1.0 - alpha) * log_term);
}

Scalar template_compatibility_F(Scalar d, Scalar s, Scalar C1, Scalar C2) {
  if (!(d >= 1.0)) throw ContractError("template_compatibility_F: d must be >= 1");
  if (!(s >= 1.0)) throw ContractError("template_compatibility_F: s must be >= 1");
  if (!(C1 > 0.0) || !(C2 > 0.0))
    throw ContractError("template_compatibility_F: constants must be positive");
  const Scalar ratio = C2 / C1;
  return ratio * ratio * std::pow(d, 1.5) * std::pow(s, -2.5);
}

Bracket as_bracket(Scalar n) {
  if (!(n >= 3.0)) throw DomainError("as_bracket: n must be >= 3 so ln n > 1");
  const Scalar l = std::log(n);
  return {n * n / (l * l), n * n / l};
}

CrossoverWidths crossover_widths(Scalar alpha) {
  const Scalar g = g_of_alpha(alpha);
  CrossoverWidths w;
  w.d_cross_H = g * g;

  // d/ln^2 d falls from d=3 to its minimum e^2/4 at d=e^2, then rises; g >= e always
  // exceeds the falling branch, so the largest root lies on [e^2, 1e12] if anywhere.
  const Scalar lo0 = std::exp(2.0), hi0 = 1e12;
  if (g > as_lower_per_width(hi0))
    throw DomainError("crossover_widths: d/ln^2 d = g(alpha) has no root below 1e12");
  Scalar lo = lo0, hi = hi0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * lo; ++it) {
    const Scalar mid = 0.5 * (lo + hi);
    (as_lower_per_width(mid) < g ? lo : hi) = mid;
  }
  w.d_cross_AS = 0.5 * (lo + hi);
  w.residual = std::abs(as_lower_per_width(w.d_cross_AS) - g);
  return w;
}

Scalar interpolation_F(Scalar d, Scalar s, Scalar gamma, Scalar K_gamma,
                       Scalar c_gamma) {
  if (!(gamma >= 0.0) || !(gamma <= 0.5))
    throw DomainError("interpolation_F: gamma must lie in [0, 1/2]");
  if (!(d >= 1.0)) throw ContractError("interpolation_F: d must be >= 1");
  if (!(s >= 1.0)) throw ContractError("interpolation_F: s must be >= 1");
  if (!(K_gamma > 0.0) || !(c_gamma > 0.0))
    throw ContractError("interpolation_F: constants must be positive");
  return c_gamma * K_gamma * K_gamma * std::pow(d, 1.5 + gamma) / std::sqrt(s);
}

ScaleReport hierarchy_report(Index d, Scalar alpha, Scalar s, Scalar eps,
                             const ScaleConstants& constants) {
  if (d < 3) throw ContractError("hierarchy_report: d must be >= 3");
  if (!(eps >= 0.0)) throw ContractError("hierarchy_report: eps must be >= 0");
  ScaleReport r;
  r.d = d;
  r.alpha = alpha;
  r.s = s;
  r.eps = eps;
  r.constants = constants;

  const Scalar df = static_cast<Scalar>(d);
  r.g_alpha = g_of_alpha(alpha);
  r.F_CS = df * r.g_alpha;
  r.F_H_template = template_compatibility_F(df, s, constants.C1, constants.C2);
  Bracket b = as_bracket(df);
  r.F_AS_lower = b.lower;
  r.F_AS_upper = b.upper;
  r.N_JL_exponent = df * eps * eps;
  CrossoverWidths w = crossover_widths(alpha);
  r.d_cross_H = w.d_cross_H;
  r.d_cross_AS = w.d_cross_AS;
  r.d_cross_AS_residual = w.residual;
  r.F_interp = interpolation_F(df, s, constants.gamma, constants.K_gamma,
                               constants.c_gamma);

  if (!(r.F_CS < r.F_H_template))
    r.unseparated_pairs.push_back("F_CS vs F_H_template");
  if (!(r.F_H_template < r.F_AS_lower))
    r.unseparated_pairs.push_back("F_H_template vs F_AS_lower");
  if (!(r.F_AS_lower <= r.F_AS_upper))
    r.unseparated_pairs.push_back("F_AS_lower vs F_AS_upper");
  if (!(std::log(r.F_AS_upper) < r.N_JL_exponent))
    r.unseparated_pairs.push_back("F_AS_upper vs N_JL");
  r.ordering_holds = r.unseparated_pairs.empty();
  return r;
}

std::vector<ScaleRow> scale_rows(const ScaleReport& r) {
  std::vector<ScaleRow> rows;
  rows.push_back({"F_CS", r.F_CS, false, Provenance::ProvedImported,
                  "d*g(alpha), g(alpha)=" + fmt(r.g_alpha)});
  rows.push_back({"F_H_template", r.F_H_template, false, Provenance::ProvedHere,
                  "(C2/C1)^2 * d^1.5 * s^-2.5"});
  rows.push_back({"F_AS_lower", r.F_AS_lower, false, Provenance::ProvedImported,
                  "d^2/ln^2 d"});
  rows.push_back({"F_AS_upper", r.F_AS_upper, false, Provenance::ProvedImported,
                  "d^2/ln d"});
  rows.push_back({"N_JL", r.N_JL_exponent, true, Provenance::ReferenceOnly,
                  "exp(d*eps^2), exponent only"});
  rows.push_back({"F_interp", r.F_interp, false, Provenance::Conditional,
                  "c*K^2 * d^(1.5+gamma) / sqrt(s), needs reset hypothesis"});
  return rows;
}

std::string to_text_table(const ScaleReport& r) {
  char line[256];
  std::string out;
  std::snprintf(line, sizeof line,
                "capacity reference scales: d=%lld alpha=%s s=%s eps=%s gamma=%s\n",
                static_cast<long long>(r.d), fmt(r.alpha).c_str(), fmt(r.s).c_str(),
                fmt(r.eps).c_str(), fmt(r.constants.gamma).c_str());
  out += line;
  std::snprintf(line, sizeof line, "%-14s %-14s %-16s %s\n", "scale", "value",
                "provenance", "formula");
  out += line;
  for (const ScaleRow& row : scale_rows(r)) {
    const std::string v =
        row.value_is_exponent ? "exp(" + fmt(row.value) + ")" : fmt(row.value);
    std::snprintf(line, sizeof line, "%-14s %-14s %-16s %s\n", row.name.c_str(),
                  v.c_str(), to_string(row.provenance), row.formula.c_str());
    out += line;
  }
  std::snprintf(line, sizeof line,
                "crossovers: d_cross_H=%s  d_cross_AS=%s (residual %s)\n",
                fmt(r.d_cross_H).c_str(), fmt(r.d_cross_AS).c_str(),
                fmt(r.d_cross_AS_residual).c_str());
  out += line;
  if (r.ordering_holds) {
    out += "ordering F_CS < F_H_template < F_AS_lower <= F_AS_upper < N_JL holds at "
           "this d\n";
  } else {
    out += "not yet separated at this d:";
    for (const std::string& p : r.unseparated_pairs) out += " [" + p + "]";
    out += "\n";
  }
  out += "note: AS bracket sides differ by one log factor; the gap is open\n";
  return out;
}

std::string to_json(const ScaleReport& r) {
  nlohmann::ordered_json j;
  j["d"] = r.d;
  j["alpha"] = r.alpha;
  j["s"] = r.s;
  j["eps"] = r.eps;
  j["constants"] = {{"C1", r.constants.C1},
                    {"C2", r.constants.C2},
                    {"gamma", r.constants.gamma},
                    {"K_gamma", r.constants.K_gamma},
                    {"c_gamma", r.constants.c_gamma}};
  j["g_alpha"] = r.g_alpha;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ScaleRow& row : scale_rows(r)) {
    nlohmann::ordered_json jr;
    jr["name"] = row.name;
    if (row.value_is_exponent)
      jr["exponent"] = row.value;
    else
      jr["value"] = row.value;
    jr["provenance"] = to_string(row.provenance);
    jr["formula"] = row.formula;
    rows.push_back(jr);
  }
  j["scales"] = rows;
  j["d_cross_H"] = r.d_cross_H;
  j["d_cross_AS"] = r.d_cross_AS;
  j["d_cross_AS_residual"] = r.d_cross_AS_residual;
  j["ordering_holds"] = r.ordering_holds;
  j["unseparated_pairs"] = r.unseparated_pairs;
  j["as_bracket_gap"] = "sides differ by one log factor; unresolved";
  j["log_convention"] = "natural_log";
  return j.dump(2);
}

}  // namespace scl
