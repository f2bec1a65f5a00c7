#pragma once

#include <string>
#include <vector>

#include "scl/types.hpp"

// Closed-form capacity reference scales: the compressed-sensing storage factor
// g(alpha), the d^{3/2} template-compatibility scale, the near-quadratic recursive
// bracket, crossover widths between them, and the conditional interpolation formula.
// Every scale carries a provenance tag so certified and conjectural values cannot be
// mixed silently. Natural log throughout.
namespace scl {

enum class Provenance { ProvedImported, ProvedHere, Conditional, ReferenceOnly };

const char* to_string(Provenance p);

// Unnamed universal constants; all default to 1 and stay explicit parameters.
struct ScaleConstants {
  Scalar C1 = 1.0;  // template threshold constants (C2/C1)^2
  Scalar C2 = 1.0;
  Scalar gamma = 0.0;    // interpolation exponent, in [0, 1/2]
  Scalar K_gamma = 1.0;  // correction-layer polylog factor, degree unspecified
  Scalar c_gamma = 1.0;
};

struct CrossoverWidths {
  Scalar d_cross_H = 0.0;   // g(alpha)^2
  Scalar d_cross_AS = 0.0;  // largest root of d/ln^2 d = g(alpha) in [3, 1e12]
  Scalar residual = 0.0;    // |d_cross_AS/ln^2 d_cross_AS - g(alpha)|
};

struct Bracket {
  Scalar lower = 0.0;  // n^2/ln^2 n
  Scalar upper = 0.0;  // n^2/ln n; the one-log-factor gap between the sides is open
};

struct ScaleReport {
  Index d = 0;
  Scalar alpha = 0.0;
  Scalar s = 1.0;
  Scalar eps = 0.0;
  ScaleConstants constants;

  Scalar g_alpha = 0.0;
  Scalar F_CS = 0.0;           // d * g(alpha)
  Scalar F_H_template = 0.0;   // (C2/C1)^2 d^{3/2} s^{-5/2}
  Scalar F_AS_lower = 0.0;     // d^2/ln^2 d
  Scalar F_AS_upper = 0.0;     // d^2/ln d
  Scalar N_JL_exponent = 0.0;  // d*eps^2; the count itself is never materialized
  Scalar d_cross_H = 0.0;
  Scalar d_cross_AS = 0.0;
  Scalar d_cross_AS_residual = 0.0;
  Scalar F_interp = 0.0;  // c_gamma K_gamma^2 d^{3/2+gamma} / sqrt(s)

  // The scale ordering F_CS < F_H < L_AS <= U_AS < N_JL is asymptotic; at small d
  // adjacent pairs cross. Pairs not yet separated at this d are listed by name.
  bool ordering_holds = false;
  std::vector<std::string> unseparated_pairs;
};

// One displayable scale; shared by the text table and the JSON emitter.
struct ScaleRow {
  std::string name;
  Scalar value = 0.0;
  bool value_is_exponent = false;  // print as exp(value), never materialize
  Provenance provenance = Provenance::ReferenceOnly;
  std::string formula;
};

Scalar g_of_alpha(Scalar alpha);
Scalar template_compatibility_F(Scalar d, Scalar s, Scalar C1 = 1.0, Scalar C2 = 1.0);
Bracket as_bracket(Scalar n);
CrossoverWidths crossover_widths(Scalar alpha);
Scalar interpolation_F(Scalar d, Scalar s, Scalar gamma, Scalar K_gamma = 1.0,
                       Scalar c_gamma = 1.0);

ScaleReport hierarchy_report(Index d, Scalar alpha, Scalar s, Scalar eps,
                             const ScaleConstants& constants = {});

std::vector<ScaleRow> scale_rows(const ScaleReport& report);
std::string to_text_table(const ScaleReport& report);
std::string to_json(const ScaleReport& report);

}  // namespace scl
