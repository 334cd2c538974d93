#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "powersieve/bounds.h"
#include "powersieve/budget.h"
#include "powersieve/eigensolver.h"
#include "powersieve/rational.h"

namespace powersieve {

// kDyadic: Q <= q <= 2Q. kFull: 1 <= q <= Q.
enum class QRange { kDyadic, kFull };

std::string range_name(QRange range);
std::optional<QRange> parse_range(const std::string& name);

struct SurveyConfig {
  std::vector<int> ks{2, 3};
  std::vector<std::int64_t> qs{4, 6, 8};
  // Empty: theta = k, k + 1/2, ..., 2k for each k.
  std::vector<Rational> thetas;
  // When non-empty, used in place of thetas.
  std::vector<std::int64_t> ns;
  QRange range = QRange::kDyadic;
  double eps = 0.0;
  std::vector<BoundId> bounds = all_bounds();
  BoundOptions bound_options;
  Budgets budgets;
  EigenOptions eigen;
  unsigned workers = 1;
  std::uint64_t seed = 0;
};

struct SurveyPoint {
  int k = 0;
  std::int64_t Q = 0;
  std::optional<Rational> theta;
  std::int64_t n = 0;
};

// Grid in output order: k, then Q, then theta (or N).
std::vector<SurveyPoint> survey_grid(const SurveyConfig& config);

// round(Q^theta).
std::int64_t n_for_theta(std::int64_t Q, const Rational& theta);

struct SurveyRow {
  SurveyPoint point;
  std::int64_t q_min = 0, q_max = 0;
  std::string status = "ok";  // ok, budget-exceeded, convergence-failure, error
  std::string message;

  std::size_t family_size = 0;
  std::string min_spacing;
  std::int64_t m_value = 0;
  // M / (Q^{1 + 1/(k+1)} N^{-1/(k(k+1))}).
  double m_ratio = 0.0;

  double delta_star = 0.0;
  double relative_residual = 0.0;
  int iterations = 0;
  std::string backend;
  std::optional<double> dense_delta_star;  // when |S| <= max_dense_eigen

  std::size_t classes = 0;
  std::int64_t repetitions = 0;  // largest over dyadic blocks
  bool partition_certified = false;
  double covering_bound = 0.0;
  double classical_bound = 0.0;  // N + 1/min_spacing
  bool sandwich = false;

  // Empty when the new bound is not selected.
  std::string new_bound_range;  // in-range / out-of-range
  std::vector<double> bound_values;  // in config.bounds order
  std::vector<double> ratios;        // delta_star / value
};

SurveyRow survey_row(const SurveyConfig& config, const SurveyPoint& point);

// Runs every grid point on a worker pool; rows come back in grid order.
std::vector<SurveyRow> run_survey(const SurveyConfig& config);

// max(N, |S|) - 1e-6 D <= D <= min(covering, classical) (1 + 1e-6).
bool sandwich_holds(const SurveyRow& row);

std::vector<std::string> survey_columns(const SurveyConfig& config);
std::string survey_csv(const SurveyConfig& config,
                       const std::vector<SurveyRow>& rows);
std::string survey_json(const SurveyConfig& config,
                        const std::vector<SurveyRow>& rows);

}  // namespace powersieve
