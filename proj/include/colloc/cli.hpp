#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// tests can drive it with in-memory streams.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or validation error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "colloc/quadrature.hpp"
#include "colloc/spectra.hpp"
#include "colloc/tableau.hpp"
#include "colloc/verify.hpp"

namespace colloc::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

using ordered_json = nlohmann::ordered_json;

inline std::string valid_family_list() {
  std::string s;
  for (Family f : all_families) {
    if (!s.empty()) s += ", ";
    s += family_key(f);
  }
  return s;
}

inline CLI::Validator family_validator() {
  return CLI::Validator(
      [](std::string& key) -> std::string {
        if (parse_family(key)) return {};
        return "unknown family '" + key + "'; valid options: " + valid_family_list();
      },
      "FAMILY", "family");
}

inline ordered_json complex_to_json(const complex& z) {
  ordered_json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

inline ordered_json tableau_json(const ButcherTableau& tab) {
  const BoundCheck bc = bound_check(tab);
  const bool singular = tab.c.front() == 0.0;
  ordered_json j;
  j["family"] = family_key(tab.family);
  j["stages"] = tab.m;
  j["c"] = tab.c;
  j["b"] = tab.b;
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < tab.A.rows(); ++i) rows.push_back(std::vector<double>(tab.A.row(i).begin(), tab.A.row(i).end()));
  j["A"] = rows;
  j["norm_inf"] = bc.norm_inf;
  j["t_max"] = bc.t_max;
  j["bound"] = {{"lower_ok", bc.lower_ok}, {"upper_ok", bc.upper_ok}, {"le_one_ok", bc.le_one_ok}};
  j["charpoly"] = singular ? ordered_json(nullptr) : ordered_json(charpoly_from_nodes(tab.c).coeffs);
  j["singular"] = singular;
  return j;
}

/// Butcher array layout: one "c_i,A_i1,...,A_im" row per stage followed by
/// ",b_1,...,b_m".
inline std::string tableau_csv(const ButcherTableau& tab) {
  std::string out;
  for (std::size_t i = 0; i < tab.A.rows(); ++i) {
    out += format_real(tab.c[i]);
    for (double v : tab.A.row(i)) out += ',' + format_real(v);
    out += '\n';
  }
  for (double w : tab.b) out += ',' + format_real(w);
  out += '\n';
  return out;
}

inline ordered_json charpoly_json(const QuadratureRule& rule) {
  const SpectralReport rep = spectral_report(rule);
  ordered_json j;
  j["coeffs"] = rep.charpoly_formula.coeffs;
  j["oracle_coeffs"] = rep.charpoly_oracle;
  j["max_coeff_err"] = rep.max_coeff_err;
  ordered_json eig = ordered_json::array();
  for (const complex& z : rep.eigenvalues) eig.push_back(complex_to_json(z));
  j["eigenvalues"] = eig;
  j["singular"] = rep.singular;
  return j;
}

inline ordered_json exactness_json(const QuadratureRule& rule) {
  ordered_json arr = ordered_json::array();
  for (int d = 0; d <= rule.exactness_degree + 2; ++d) {
    ordered_json row;
    row["degree"] = d;
    row["residual"] = exactness_residual(rule, d);
    arr.push_back(row);
  }
  return arr;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Collocation Runge-Kutta tableaus: construction, norm bounds and spectra", "colloc"};
  app.require_subcommand(1);

  std::string family_name;
  int stages = 0;
  std::string format = "json";
  std::string output;
  std::vector<std::string> family_names;
  int m_min = 1, m_max = 10;

  auto add_single = [&](CLI::App* sub) {
    sub->add_option("--family", family_name, "Quadrature family")->required()->check(family_validator());
    sub->add_option("--stages", stages, "Stage count m")->required()->check(CLI::Range(1, max_stages));
    sub->add_option("--output", output, "Write to this path instead of standard output");
  };

  CLI::App* tableau = app.add_subcommand("tableau", "Butcher tableau, norm bound check and characteristic polynomial");
  add_single(tableau);
  tableau->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  CLI::App* charpoly = app.add_subcommand("charpoly", "Characteristic polynomial, trace-recursion oracle and eigenvalues");
  add_single(charpoly);

  CLI::App* exactness = app.add_subcommand("exactness", "Quadrature residuals on monomials up to the exactness degree + 2");
  add_single(exactness);

  CLI::App* verify = app.add_subcommand("verify", "Sweep every check over a (family, m) grid");
  verify->add_option("--family", family_names, "Families to sweep (repeatable or comma separated; default all)")
      ->delimiter(',')
      ->check(family_validator());
  verify->add_option("--m-min", m_min, "Smallest stage count")->check(CLI::Range(1, max_stages));
  verify->add_option("--m-max", m_max, "Largest stage count")->check(CLI::Range(1, max_stages));
  verify->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--output", output, "Write to this path instead of standard output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  std::string payload;
  int code = exit_ok;
  try {
    if (*verify) {
      if (m_min > m_max) {
        err << "error: --m-min must not exceed --m-max\n";
        return exit_usage;
      }
      std::vector<Family> families;
      for (const auto& name : family_names) families.push_back(*parse_family(name));
      if (families.empty()) families.assign(all_families.begin(), all_families.end());
      const auto records = sweep(families, m_min, m_max);
      payload = format == "csv" ? emit_csv(records) : emit_json(records);
      for (const auto& r : records)
        if (!r.error.empty()) err << family_key(r.family) << " m=" << r.m << ": " << r.error << "\n";
      code = all_pass(records) ? exit_ok : exit_failed;
    } else {
      const Family family = *parse_family(family_name);
      if (!valid_stage_count(family, stages)) {
        err << "error: " << family_key(family) << " requires between " << min_stages(family) << " and "
            << max_stages << " stages\n";
        return exit_usage;
      }
      const QuadratureRule rule = build_rule(family, stages);
      if (*tableau) {
        const ButcherTableau tab = build_tableau(rule);
        payload = format == "csv" ? tableau_csv(tab) : tableau_json(tab).dump(2) + "\n";
      } else if (*charpoly) {
        payload = charpoly_json(rule).dump(2) + "\n";
      } else {
        payload = exactness_json(rule).dump(2) + "\n";
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_failed;
  }

  if (output.empty()) {
    out << payload;
  } else {
    std::ofstream file(output, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << output << " for writing\n";
      return exit_usage;
    }
    file << payload;
  }
  return code;
}

}  // namespace colloc::cli
