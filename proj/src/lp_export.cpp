#include "bsm/lp_export.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace bsm {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Appends "coef var" in LP style: sign separated, unit coefficients elided.
void append_term(std::string& out, bool& first, double coef, const std::string& var) {
  if (coef == 0.0) return;
  if (first) {
    if (coef < 0.0) out += "- ";
    first = false;
  } else {
    out += coef < 0.0 ? " - " : " + ";
  }
  const double mag = std::fabs(coef);
  if (mag != 1.0) {
    out += num(mag);
    out += ' ';
  }
  out += var;
}

void check_bsm_params(IlpMode mode, double tau, double optg) {
  if (mode != IlpMode::Bsm) return;
  if (tau < 0.0 || tau > 1.0) throw std::invalid_argument("tau must lie in [0, 1]");
  if (!(optg >= 0.0) || !std::isfinite(optg)) {
    throw std::invalid_argument("bsm export needs a nonnegative optg");
  }
}

void check_k(int k, int n) {
  if (k < 1 || k > n) throw std::invalid_argument("k must lie in [1, item count]");
}

std::string cardinality_row(int n, int k) {
  std::string row = " card: ";
  bool first = true;
  for (int l = 0; l < n; ++l) append_term(row, first, 1.0, "x" + std::to_string(l));
  row += " <= " + std::to_string(k) + "\n";
  return row;
}

}  // namespace

std::string export_ilp_mc(const CoverageInstance& instance, int k, IlpMode mode,
                          double tau, double optg) {
  const int n = instance.item_count();
  const auto& pop = instance.population();
  const int m = pop.user_count();
  const int c = pop.group_count();
  check_k(k, n);
  check_bsm_params(mode, tau, optg);

  std::vector<std::vector<int>> covered_by(m);
  for (int l = 0; l < n; ++l) {
    for (int u : instance.users_of(l)) covered_by[u].push_back(l);
  }
  std::vector<std::vector<int>> group_users(c);
  for (int u = 0; u < m; ++u) group_users[pop.group_of(u)].push_back(u);

  std::string out = "Maximize\n obj: ";
  bool first = true;
  if (mode == IlpMode::Robust) {
    append_term(out, first, 1.0, "w");
  } else {
    for (int u = 0; u < m; ++u) {
      append_term(out, first, 1.0 / m, "y" + std::to_string(u));
    }
  }
  out += "\nSubject To\n";
  out += cardinality_row(n, k);
  for (int u = 0; u < m; ++u) {
    out += " cov" + std::to_string(u) + ": ";
    first = true;
    for (int l : covered_by[u]) append_term(out, first, 1.0, "x" + std::to_string(l));
    append_term(out, first, -1.0, "y" + std::to_string(u));
    out += " >= 0\n";
  }
  if (mode != IlpMode::Utility) {
    for (int i = 0; i < c; ++i) {
      out += " grp" + std::to_string(i) + ": ";
      first = true;
      for (int u : group_users[i]) {
        append_term(out, first, 1.0 / pop.group_size(i), "y" + std::to_string(u));
      }
      if (mode == IlpMode::Robust) {
        append_term(out, first, -1.0, "w");
        out += " >= 0\n";
      } else {
        out += " >= " + num(tau * optg) + "\n";
      }
    }
  }
  out += "Binaries\n";
  for (int l = 0; l < n; ++l) out += " x" + std::to_string(l) + "\n";
  for (int u = 0; u < m; ++u) out += " y" + std::to_string(u) + "\n";
  out += "End\n";
  return out;
}

std::string export_ilp_fl(const BenefitMatrix& matrix, int k, IlpMode mode,
                          double tau, double optg) {
  const int n = matrix.item_count();
  const auto& pop = matrix.population();
  const int m = pop.user_count();
  const int c = pop.group_count();
  check_k(k, n);
  check_bsm_params(mode, tau, optg);

  auto yvar = [](int u, int l) {
    return "y" + std::to_string(u) + "_" + std::to_string(l);
  };
  std::vector<std::vector<int>> group_users(c);
  for (int u = 0; u < m; ++u) group_users[pop.group_of(u)].push_back(u);

  std::string out = "Maximize\n obj: ";
  bool first = true;
  if (mode == IlpMode::Robust) {
    append_term(out, first, 1.0, "w");
  } else {
    for (int u = 0; u < m; ++u) {
      for (int l = 0; l < n; ++l) {
        append_term(out, first, matrix.at(u, l) / m, yvar(u, l));
      }
    }
  }
  out += "\nSubject To\n";
  out += cardinality_row(n, k);
  for (int u = 0; u < m; ++u) {
    for (int l = 0; l < n; ++l) {
      out += " lnk" + std::to_string(u) + "_" + std::to_string(l) + ": ";
      first = true;
      append_term(out, first, 1.0, yvar(u, l));
      append_term(out, first, -1.0, "x" + std::to_string(l));
      out += " <= 0\n";
    }
  }
  for (int u = 0; u < m; ++u) {
    out += " asg" + std::to_string(u) + ": ";
    first = true;
    for (int l = 0; l < n; ++l) append_term(out, first, 1.0, yvar(u, l));
    out += " <= 1\n";
  }
  if (mode != IlpMode::Utility) {
    for (int i = 0; i < c; ++i) {
      out += " grp" + std::to_string(i) + ": ";
      first = true;
      for (int u : group_users[i]) {
        for (int l = 0; l < n; ++l) {
          append_term(out, first, matrix.at(u, l) / pop.group_size(i), yvar(u, l));
        }
      }
      if (mode == IlpMode::Robust) {
        append_term(out, first, -1.0, "w");
        out += " >= 0\n";
      } else {
        out += " >= " + num(tau * optg) + "\n";
      }
    }
  }
  out += "Binaries\n";
  for (int l = 0; l < n; ++l) out += " x" + std::to_string(l) + "\n";
  out += "End\n";
  return out;
}

namespace {

bool is_number(const std::string& tok, double& value) {
  if (tok.empty()) return false;
  char* end = nullptr;
  value = std::strtod(tok.c_str(), &end);
  return end == tok.c_str() + tok.size();
}

bool is_sense(const std::string& tok) {
  return tok == "<=" || tok == ">=" || tok == "=";
}

[[noreturn]] void fail(const std::string& why) {
  throw std::runtime_error("lp parse: " + why);
}

}  // namespace

LpModel parse_lp(const std::string& text) {
  std::vector<std::string> tokens;
  {
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
  }

  LpModel model;
  size_t i = 0;
  auto peek = [&]() -> const std::string& {
    static const std::string empty;
    return i < tokens.size() ? tokens[i] : empty;
  };

  enum class Section { None, Objective, Rows, Binaries };
  Section section = Section::None;
  double sign = 1.0;
  bool have_coef = false;
  double coef = 1.0;
  std::vector<LpTerm>* terms = nullptr;
  LpRow* row = nullptr;

  auto finish_pending = [&] {
    if (have_coef || sign < 0.0) fail("dangling coefficient");
  };

  while (i < tokens.size()) {
    std::string tok = tokens[i];
    if (tok == "Maximize" || tok == "Minimize") {
      finish_pending();
      model.maximize = tok == "Maximize";
      section = Section::Objective;
      ++i;
      if (peek().size() > 1 && peek().back() == ':') {
        model.objective_name = peek().substr(0, peek().size() - 1);
        ++i;
      }
      terms = &model.objective;
      sign = 1.0;
      have_coef = false;
      continue;
    }
    if (tok == "Subject" && i + 1 < tokens.size() && tokens[i + 1] == "To") {
      finish_pending();
      section = Section::Rows;
      terms = nullptr;
      row = nullptr;
      i += 2;
      continue;
    }
    if (tok == "Binaries") {
      finish_pending();
      section = Section::Binaries;
      ++i;
      continue;
    }
    if (tok == "End") {
      finish_pending();
      break;
    }

    switch (section) {
      case Section::None:
        fail("token before any section: " + tok);
      case Section::Binaries:
        model.binaries.push_back(tok);
        ++i;
        break;
      case Section::Rows:
        if (tok.size() > 1 && tok.back() == ':') {
          finish_pending();
          model.rows.emplace_back();
          row = &model.rows.back();
          row->name = tok.substr(0, tok.size() - 1);
          terms = &row->terms;
          sign = 1.0;
          have_coef = false;
          ++i;
          break;
        }
        if (is_sense(tok)) {
          if (row == nullptr) fail("sense outside a row");
          finish_pending();
          row->sense = tok;
          ++i;
          double rhs;
          if (i >= tokens.size() || !is_number(tokens[i], rhs)) {
            fail("missing right-hand side in row " + row->name);
          }
          row->rhs = rhs;
          ++i;
          row = nullptr;
          terms = nullptr;
          break;
        }
        [[fallthrough]];
      case Section::Objective: {
        if (terms == nullptr) fail("term outside a row: " + tok);
        if (tok == "+") {
          sign = 1.0;
          ++i;
          break;
        }
        if (tok == "-") {
          sign = -1.0;
          ++i;
          break;
        }
        double value;
        if (is_number(tok, value)) {
          if (have_coef) fail("two coefficients in a row near " + tok);
          coef = value;
          have_coef = true;
          ++i;
          break;
        }
        terms->push_back({sign * (have_coef ? coef : 1.0), tok});
        sign = 1.0;
        have_coef = false;
        ++i;
        break;
      }
    }
  }
  if (row != nullptr) fail("unterminated row " + row->name);
  return model;
}

}  // namespace bsm
