#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "powersieve/survey.h"

using namespace powersieve;

namespace {

SurveyConfig small_grid() {
  SurveyConfig c;
  c.ks = {2};
  c.qs = {2, 3, 4};
  c.thetas = {Rational::from_ints(5, 2), Rational(3), Rational::from_ints(7, 2)};
  return c;
}

}  // namespace

TEST_CASE("grid expansion") {
  SurveyConfig c;
  CHECK(survey_grid(c).size() == 36);
  CHECK(survey_grid(small_grid()).size() == 9);
  c.ns = {10, 20};
  CHECK(survey_grid(c).size() == 12);
  CHECK(n_for_theta(4, Rational::from_ints(5, 2)) == 32);
}

TEST_CASE("small grid rows are complete and sandwiched") {
  const SurveyConfig c = small_grid();
  const auto rows = run_survey(c);
  REQUIRE(rows.size() == 9);
  for (const SurveyRow& row : rows) {
    CAPTURE(row.message);
    REQUIRE(row.status == "ok");
    CHECK(row.q_max == 2 * row.q_min);
    CHECK(row.delta_star >= std::max<double>(row.point.n, row.family_size) * (1 - 1e-9));
    CHECK(row.sandwich);
    CHECK(row.partition_certified);
    CHECK(row.repetitions <= row.m_value);
    REQUIRE(row.dense_delta_star.has_value());
    CHECK(std::abs(row.delta_star - *row.dense_delta_star) <= 1e-6 * row.delta_star);
    CHECK(row.bound_values.size() == c.bounds.size());
  }
}

TEST_CASE("full range uses q in [1, Q]") {
  SurveyConfig c = small_grid();
  c.range = QRange::kFull;
  c.qs = {4};
  const auto rows = run_survey(c);
  for (const auto& row : rows) {
    CHECK(row.q_min == 1);
    CHECK(row.q_max == 4);
    CHECK(row.sandwich);
  }
}

TEST_CASE("survey output is deterministic across runs and worker counts") {
  SurveyConfig c = small_grid();
  c.seed = 3;
  const std::string a = survey_csv(c, run_survey(c));
  const std::string b = survey_csv(c, run_survey(c));
  CHECK(a == b);
  c.workers = 3;
  CHECK(survey_csv(c, run_survey(c)) == a);
}

TEST_CASE("out-of-range points are flagged, not dropped") {
  SurveyConfig c;
  c.ks = {2};
  c.qs = {3};
  c.thetas = {Rational(1), Rational(3)};
  const auto rows = run_survey(c);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].new_bound_range == "out-of-range");
  CHECK(rows[0].status == "ok");
  CHECK(rows[1].new_bound_range == "in-range");
  const std::string csv = survey_csv(c, rows);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.find("out-of-range") != std::string::npos);
}

TEST_CASE("budget failures become rows") {
  SurveyConfig c = small_grid();
  c.budgets.max_family_size = 20;
  const auto rows = run_survey(c);
  REQUIRE(rows.size() == 9);
  CHECK(std::any_of(rows.begin(), rows.end(),
                    [](const SurveyRow& r) { return r.status == "budget-exceeded"; }));
}

TEST_CASE("CSV columns") {
  const SurveyConfig c = small_grid();
  const std::string csv = survey_csv(c, run_survey(c));
  const std::string header = csv.substr(0, csv.find('\n'));
  std::ostringstream expected;
  expected << "k,Q,q_min,q_max,range,theta,N,status,family_size,min_spacing,"
              "m_value,m_ratio,delta_star,relative_residual,iterations,backend,"
              "dense_delta_star,classes,repetitions,partition_certified,"
              "covering_bound,classical_bound,sandwich,new_bound_range";
  for (BoundId id : all_bounds())
    expected << ',' << bound_name(id) << ",ratio_" << bound_name(id);
  expected << ",message";
  CHECK(header == expected.str());
  CHECK(survey_json(c, run_survey(c)).find("\"delta_star\"") != std::string::npos);
}
