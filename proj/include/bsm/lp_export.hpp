#pragma once

#include <string>
#include <vector>

#include "bsm/coverage.hpp"
#include "bsm/facility.hpp"

namespace bsm {

enum class IlpMode {
  Utility,  // maximize average utility under the cardinality constraint
  Robust,   // maximize an auxiliary variable bounded by every group average
  Bsm,      // utility objective plus per-group rows >= tau * optg
};

// Emit LP-format text (objective section, named constraint rows, Binaries
// section) for the coverage model: binary x per item, binary y per user,
// cardinality row, one linking row per user. Coefficients print with 17
// significant digits and the text is a pure function of the inputs.
// tau and optg only matter for IlpMode::Bsm.
std::string export_ilp_mc(const CoverageInstance& instance, int k, IlpMode mode,
                          double tau = 0.0, double optg = 0.0);

// Facility-location model: binary x per item, continuous assignment variable
// y per (user, item) pair with y <= x and per-user sum <= 1.
std::string export_ilp_fl(const BenefitMatrix& matrix, int k, IlpMode mode,
                          double tau = 0.0, double optg = 0.0);

// Minimal LP-text reader covering what the exporters emit; used to confirm
// a written file round-trips to the same structure and coefficients.
struct LpTerm {
  double coef = 0.0;
  std::string var;
};

struct LpRow {
  std::string name;
  std::vector<LpTerm> terms;
  std::string sense;  // "<=", ">=", "="
  double rhs = 0.0;
};

struct LpModel {
  bool maximize = true;
  std::string objective_name;
  std::vector<LpTerm> objective;
  std::vector<LpRow> rows;
  std::vector<std::string> binaries;
};

LpModel parse_lp(const std::string& text);

}  // namespace bsm
