#pragma once

// Sweep harness: evaluates every check for a grid of (family, m) pairs and
// serializes the results as CSV or JSON.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "colloc/error.hpp"
#include "colloc/quadrature.hpp"
#include "colloc/spectra.hpp"
#include "colloc/tableau.hpp"

namespace colloc {

namespace tolerance {
inline constexpr double row_sum = 1e-12;
inline constexpr double weight_sum = 1e-13;
inline constexpr double exactness = 1e-12;
inline constexpr double coeff = 1e-9;
inline constexpr double eigen_residual = 1e-9;
inline constexpr double mapping = 1e-11;
}  // namespace tolerance

enum class Status { Pass, Fail };

constexpr std::string_view status_key(Status s) { return s == Status::Pass ? "pass" : "fail"; }

struct VerificationRecord {
  Family family = Family::GaussLegendre;
  int m = 0;
  double t_max = 0.0;
  double norm_inf = 0.0;
  double sqrt_t_max = 0.0;
  bool lower_ok = false;
  bool upper_ok = false;
  bool le_one_ok = false;
  double row_sum_err = 0.0;
  double weight_sum_err = 0.0;
  double max_exactness_residual = 0.0;
  std::optional<double> max_coeff_err;       // null for singular tableaus
  std::optional<double> max_eigen_residual;  // null for singular tableaus
  double mapping_err = 0.0;
  bool singular = false;
  Status status = Status::Fail;
  std::string error;  // set when the computation itself threw

  friend bool operator==(const VerificationRecord&, const VerificationRecord&) = default;
};

inline constexpr std::string_view csv_header =
    "family,m,t_max,norm_inf,sqrt_t_max,lower_ok,upper_ok,le_one_ok,row_sum_err,weight_sum_err,"
    "max_exactness_residual,max_coeff_err,max_eigen_residual,mapping_err,singular,status";

/// Pass iff every non-null check is within its tolerance.
inline Status judge(const VerificationRecord& r) {
  if (!r.error.empty()) return Status::Fail;
  const auto within = [](double v, double tol) { return std::isfinite(v) && v <= tol; };
  bool ok = r.lower_ok && r.upper_ok && r.le_one_ok && within(r.row_sum_err, tolerance::row_sum) &&
            within(r.weight_sum_err, tolerance::weight_sum) &&
            within(r.max_exactness_residual, tolerance::exactness) && within(r.mapping_err, tolerance::mapping);
  if (r.max_coeff_err) ok = ok && within(*r.max_coeff_err, tolerance::coeff);
  if (r.max_eigen_residual) ok = ok && within(*r.max_eigen_residual, tolerance::eigen_residual);
  return ok ? Status::Pass : Status::Fail;
}

inline VerificationRecord evaluate(Family family, int m) {
  VerificationRecord r;
  r.family = family;
  r.m = m;
  try {
    const QuadratureRule rule = build_rule(family, m);
    const ButcherTableau tab = build_tableau(rule);
    const BoundCheck bc = bound_check(tab);
    r.t_max = bc.t_max;
    r.norm_inf = bc.norm_inf;
    r.sqrt_t_max = bc.sqrt_t_max;
    r.lower_ok = bc.lower_ok;
    r.upper_ok = bc.upper_ok;
    r.le_one_ok = bc.le_one_ok;
    r.row_sum_err = row_sum_error(tab);
    r.weight_sum_err = exactness_residual(rule, 0);
    r.max_exactness_residual = 0.0;
    for (int d = 0; d <= rule.exactness_degree; ++d)
      r.max_exactness_residual = std::max(r.max_exactness_residual, exactness_residual(rule, d));
    r.mapping_err = monomial_mapping_check(tab);

    const SpectralReport spec = spectral_report(rule);
    r.singular = spec.singular;
    if (!spec.singular) {
      r.max_coeff_err = spec.max_coeff_err;
      r.max_eigen_residual = spec.max_eigen_residual;
    }
    r.status = judge(r);
  } catch (const std::exception& e) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    r.t_max = r.norm_inf = r.sqrt_t_max = r.row_sum_err = r.weight_sum_err = nan;
    r.max_exactness_residual = r.mapping_err = nan;
    r.lower_ok = r.upper_ok = r.le_one_ok = false;
    r.max_coeff_err.reset();
    r.max_eigen_residual.reset();
    r.error = e.what();
    r.status = Status::Fail;
  }
  return r;
}

/// One record per valid (family, m) pair in family-then-m order; pairs a
/// family does not support (Lobatto with one stage) are skipped. Records are
/// computed on a small thread pool and stored by index, so the output does
/// not depend on scheduling.
inline std::vector<VerificationRecord> sweep(std::vector<Family> families, int m_min, int m_max) {
  if (m_min < 1 || m_max > max_stages || m_min > m_max)
    throw Error("stage range must satisfy 1 <= m-min <= m-max <= " + std::to_string(max_stages));
  std::sort(families.begin(), families.end());
  families.erase(std::unique(families.begin(), families.end()), families.end());

  std::vector<std::pair<Family, int>> jobs;
  for (Family f : families)
    for (int m = m_min; m <= m_max; ++m)
      if (valid_stage_count(f, m)) jobs.emplace_back(f, m);

  std::vector<VerificationRecord> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) out[i] = evaluate(jobs[i].first, jobs[i].second);
  };
  const std::size_t threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < std::min(threads, jobs.size()); ++t) pool.emplace_back(worker);
    worker();
  }
  return out;
}

inline std::vector<VerificationRecord> sweep(int m_min, int m_max) {
  return sweep(std::vector<Family>(all_families.begin(), all_families.end()), m_min, m_max);
}

inline bool all_pass(const std::vector<VerificationRecord>& records) {
  return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.status == Status::Pass; });
}

/// 17 significant digits; non-finite values render as an empty field.
inline std::string format_real(double v) {
  if (!std::isfinite(v)) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string emit_csv(const std::vector<VerificationRecord>& records) {
  std::string out(csv_header);
  out += '\n';
  const auto flag = [](bool b) { return b ? "true" : "false"; };
  const auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
  for (const auto& r : records) {
    out += family_key(r.family);
    out += ',' + std::to_string(r.m);
    out += ',' + format_real(r.t_max);
    out += ',' + format_real(r.norm_inf);
    out += ',' + format_real(r.sqrt_t_max);
    out += std::string(",") + flag(r.lower_ok) + ',' + flag(r.upper_ok) + ',' + flag(r.le_one_ok);
    out += ',' + format_real(r.row_sum_err);
    out += ',' + format_real(r.weight_sum_err);
    out += ',' + format_real(r.max_exactness_residual);
    out += ',' + opt(r.max_coeff_err);
    out += ',' + opt(r.max_eigen_residual);
    out += ',' + format_real(r.mapping_err);
    out += std::string(",") + flag(r.singular);
    out += ',';
    out += status_key(r.status);
    out += '\n';
  }
  return out;
}

namespace detail {

inline nlohmann::ordered_json real_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

inline nlohmann::ordered_json real_or_null(const std::optional<double>& v) {
  return v ? real_or_null(*v) : nlohmann::ordered_json(nullptr);
}

inline double real_from(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const VerificationRecord& r) {
  using detail::real_or_null;
  nlohmann::ordered_json j;
  j["family"] = family_key(r.family);
  j["m"] = r.m;
  j["t_max"] = real_or_null(r.t_max);
  j["norm_inf"] = real_or_null(r.norm_inf);
  j["sqrt_t_max"] = real_or_null(r.sqrt_t_max);
  j["lower_ok"] = r.lower_ok;
  j["upper_ok"] = r.upper_ok;
  j["le_one_ok"] = r.le_one_ok;
  j["row_sum_err"] = real_or_null(r.row_sum_err);
  j["weight_sum_err"] = real_or_null(r.weight_sum_err);
  j["max_exactness_residual"] = real_or_null(r.max_exactness_residual);
  j["max_coeff_err"] = real_or_null(r.max_coeff_err);
  j["max_eigen_residual"] = real_or_null(r.max_eigen_residual);
  j["mapping_err"] = real_or_null(r.mapping_err);
  j["singular"] = r.singular;
  j["status"] = status_key(r.status);
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

inline std::string emit_json(const std::vector<VerificationRecord>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

inline VerificationRecord record_from_json(const nlohmann::json& j) {
  using detail::real_from;
  VerificationRecord r;
  try {
    const auto family = parse_family(j.at("family").get<std::string>());
    if (!family) throw Error("unknown family in record");
    r.family = *family;
    r.m = j.at("m").get<int>();
    r.t_max = real_from(j.at("t_max"));
    r.norm_inf = real_from(j.at("norm_inf"));
    r.sqrt_t_max = real_from(j.at("sqrt_t_max"));
    r.lower_ok = j.at("lower_ok").get<bool>();
    r.upper_ok = j.at("upper_ok").get<bool>();
    r.le_one_ok = j.at("le_one_ok").get<bool>();
    r.row_sum_err = real_from(j.at("row_sum_err"));
    r.weight_sum_err = real_from(j.at("weight_sum_err"));
    r.max_exactness_residual = real_from(j.at("max_exactness_residual"));
    if (!j.at("max_coeff_err").is_null()) r.max_coeff_err = j["max_coeff_err"].get<double>();
    if (!j.at("max_eigen_residual").is_null()) r.max_eigen_residual = j["max_eigen_residual"].get<double>();
    r.mapping_err = real_from(j.at("mapping_err"));
    r.singular = j.at("singular").get<bool>();
    const std::string status = j.at("status").get<std::string>();
    if (status != "pass" && status != "fail") throw Error("unknown status in record");
    r.status = status == "pass" ? Status::Pass : Status::Fail;
    if (j.contains("error")) r.error = j["error"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed verification record: ") + e.what());
  }
  return r;
}

inline std::vector<VerificationRecord> records_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error("verification report must be a JSON array");
  std::vector<VerificationRecord> out;
  for (const auto& j : doc) out.push_back(record_from_json(j));
  return out;
}

}  // namespace colloc
