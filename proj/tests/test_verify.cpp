#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "colloc/verify.hpp"

using namespace colloc;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST(Sweep, SingleGaussStage) {
  const auto recs = sweep({Family::GaussLegendre}, 1, 1);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].status, Status::Pass);
  EXPECT_EQ(recs[0].norm_inf, 0.5);
  EXPECT_FALSE(recs[0].singular);
  EXPECT_TRUE(recs[0].max_coeff_err.has_value());
}

TEST(Sweep, LobattoSkipsSingleStage) {
  const auto recs = sweep({Family::Lobatto}, 1, 2);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].m, 2);
  EXPECT_TRUE(recs[0].singular);
  EXPECT_EQ(recs[0].status, Status::Pass);
  EXPECT_FALSE(recs[0].max_coeff_err.has_value());
  EXPECT_FALSE(recs[0].max_eigen_residual.has_value());
  EXPECT_EQ(recs[0].t_max, 1.0);
  EXPECT_EQ(recs[0].norm_inf, 1.0);

  EXPECT_TRUE(sweep({Family::Lobatto}, 1, 1).empty());
}

TEST(Sweep, DefaultRangeAllPass) {
  const auto recs = sweep(1, 10);
  ASSERT_EQ(recs.size(), 39u);
  for (const auto& r : recs) EXPECT_EQ(r.status, Status::Pass) << family_key(r.family) << " m=" << r.m << " " << r.error;
  // family-then-m order
  for (std::size_t i = 1; i < recs.size(); ++i) {
    const bool ordered = recs[i - 1].family < recs[i].family ||
                         (recs[i - 1].family == recs[i].family && recs[i - 1].m < recs[i].m);
    EXPECT_TRUE(ordered) << i;
  }
}

TEST(Sweep, FamiliesAreSortedAndDeduplicated) {
  const auto recs = sweep({Family::Lobatto, Family::GaussLegendre, Family::Lobatto}, 2, 3);
  ASSERT_EQ(recs.size(), 4u);
  EXPECT_EQ(recs[0].family, Family::GaussLegendre);
  EXPECT_EQ(recs[3].family, Family::Lobatto);
}

TEST(Sweep, RejectsBadRange) {
  EXPECT_THROW((void)sweep(0, 3), Error);
  EXPECT_THROW((void)sweep(4, 3), Error);
  EXPECT_THROW((void)sweep(1, 13), Error);
}

TEST(Sweep, Deterministic) {
  const auto a = sweep(1, 12);
  const auto b = sweep(1, 12);
  EXPECT_EQ(emit_csv(a), emit_csv(b));
  EXPECT_EQ(emit_json(a), emit_json(b));
}

TEST(Judge, FailsOnAnyCheck) {
  VerificationRecord r = sweep({Family::GaussLegendre}, 3, 3).front();
  ASSERT_EQ(judge(r), Status::Pass);
  auto bad = r;
  bad.upper_ok = false;
  EXPECT_EQ(judge(bad), Status::Fail);
  bad = r;
  bad.weight_sum_err = 2e-13;
  EXPECT_EQ(judge(bad), Status::Fail);
  bad = r;
  bad.max_coeff_err = 1e-8;
  EXPECT_EQ(judge(bad), Status::Fail);
  bad = r;
  bad.max_coeff_err.reset();
  bad.max_eigen_residual.reset();
  EXPECT_EQ(judge(bad), Status::Pass);
  bad = r;
  bad.error = "boom";
  EXPECT_EQ(judge(bad), Status::Fail);
}

TEST(EmitCsv, EmptyIsHeaderOnly) {
  EXPECT_EQ(emit_csv({}), std::string(csv_header) + "\n");
  EXPECT_EQ(emit_json({}), "[]\n");
}

TEST(EmitCsv, SingleRecord) {
  const auto lines = split_lines(emit_csv(sweep({Family::GaussLegendre}, 1, 1)));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0],
            "family,m,t_max,norm_inf,sqrt_t_max,lower_ok,upper_ok,le_one_ok,row_sum_err,weight_sum_err,"
            "max_exactness_residual,max_coeff_err,max_eigen_residual,mapping_err,singular,status");
  const auto fields = split_fields(lines[1]);
  ASSERT_EQ(fields.size(), 16u);
  EXPECT_EQ(fields[0], "gauss");
  EXPECT_EQ(fields[1], "1");
  EXPECT_EQ(fields[3], "0.5");
  EXPECT_EQ(fields[4], "0.70710678118654757");
  EXPECT_EQ(fields[5], "true");
  EXPECT_EQ(fields[14], "false");
  EXPECT_EQ(fields[15], "pass");
}

TEST(EmitCsv, SingularHasEmptyNullFields) {
  const auto lines = split_lines(emit_csv(sweep({Family::Lobatto}, 2, 2)));
  const auto fields = split_fields(lines[1]);
  ASSERT_EQ(fields.size(), 16u);
  EXPECT_EQ(fields[11], "");
  EXPECT_EQ(fields[12], "");
  EXPECT_EQ(fields[14], "true");
}

TEST(EmitJson, FieldsAndNulls) {
  const auto doc = nlohmann::json::parse(emit_json(sweep({Family::Lobatto}, 2, 2)));
  ASSERT_TRUE(doc.is_array());
  ASSERT_EQ(doc.size(), 1u);
  const auto& r = doc[0];
  EXPECT_EQ(r["family"], "lobatto");
  EXPECT_EQ(r["m"], 2);
  EXPECT_TRUE(r["max_coeff_err"].is_null());
  EXPECT_TRUE(r["max_eigen_residual"].is_null());
  EXPECT_EQ(r["status"], "pass");
  EXPECT_FALSE(r.contains("error"));
  std::vector<std::string> keys;
  for (auto it = r.begin(); it != r.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys.size(), 16u);
}

TEST(EmitJson, RoundTripRandomRecords) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> fam(0, 3), stages(1, 12);
  std::vector<VerificationRecord> recs;
  for (int i = 0; i < 200; ++i) {
    VerificationRecord r;
    r.family = all_families[static_cast<std::size_t>(fam(rng))];
    r.m = stages(rng);
    r.t_max = u(rng);
    r.norm_inf = u(rng);
    r.sqrt_t_max = std::sqrt(r.t_max);
    r.lower_ok = coin(rng);
    r.upper_ok = coin(rng);
    r.le_one_ok = coin(rng);
    r.row_sum_err = u(rng) * 1e-14;
    r.weight_sum_err = u(rng) * 1e-15;
    r.max_exactness_residual = u(rng) * 1e-13;
    if (coin(rng)) r.max_coeff_err = u(rng) * 1e-12;
    if (coin(rng)) r.max_eigen_residual = u(rng) * 1e-12;
    r.mapping_err = u(rng) * 1e-13;
    r.singular = coin(rng);
    r.status = coin(rng) ? Status::Pass : Status::Fail;
    recs.push_back(r);
  }
  EXPECT_EQ(records_from_json(emit_json(recs)), recs);
}

TEST(EmitJson, RejectsMalformedInput) {
  EXPECT_THROW((void)records_from_json("{"), Error);
  EXPECT_THROW((void)records_from_json("{}"), Error);
  EXPECT_THROW((void)records_from_json(R"([{"family": "gauss"}])"), Error);
}

TEST(Evaluate, ErrorsBecomeFailedRecords) {
  const auto r = evaluate(Family::Lobatto, 1);
  EXPECT_EQ(r.status, Status::Fail);
  EXPECT_EQ(r.error, "Lobatto requires at least two stages");
  const auto doc = nlohmann::json::parse(emit_json({r}));
  EXPECT_TRUE(doc[0]["t_max"].is_null());
  EXPECT_EQ(doc[0]["error"], "Lobatto requires at least two stages");
}
