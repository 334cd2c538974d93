#include "powersieve/survey.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "powersieve/errors.h"
#include "powersieve/farey.h"
#include "powersieve/parallel.h"
#include "powersieve/partition.h"
#include "powersieve/sieve_operator.h"

namespace powersieve {
namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::int64_t q_lo(const SurveyConfig& c, std::int64_t Q) {
  return c.range == QRange::kDyadic ? Q : 1;
}

std::int64_t q_hi(const SurveyConfig& c, std::int64_t Q) {
  return c.range == QRange::kDyadic ? 2 * Q : Q;
}

bool selected(const SurveyConfig& c, BoundId id) {
  return std::find(c.bounds.begin(), c.bounds.end(), id) != c.bounds.end();
}

}  // namespace

std::string range_name(QRange range) {
  return range == QRange::kDyadic ? "dyadic" : "full";
}

std::optional<QRange> parse_range(const std::string& name) {
  if (name == "dyadic") return QRange::kDyadic;
  if (name == "full") return QRange::kFull;
  return std::nullopt;
}

std::int64_t n_for_theta(std::int64_t Q, const Rational& theta) {
  return std::llround(std::pow(static_cast<double>(Q), theta.to_double()));
}

std::vector<SurveyPoint> survey_grid(const SurveyConfig& config) {
  std::vector<SurveyPoint> grid;
  for (int k : config.ks) {
    for (std::int64_t Q : config.qs) {
      if (!config.ns.empty()) {
        for (std::int64_t n : config.ns) grid.push_back({k, Q, std::nullopt, n});
        continue;
      }
      std::vector<Rational> thetas = config.thetas;
      if (thetas.empty())
        for (int i = 0; i <= 2 * k; ++i)
          thetas.push_back(Rational(k) + Rational::from_ints(i, 2));
      for (const Rational& t : thetas)
        grid.push_back({k, Q, t, n_for_theta(Q, t)});
    }
  }
  return grid;
}

SurveyRow survey_row(const SurveyConfig& config, const SurveyPoint& point) {
  SurveyRow row;
  row.point = point;
  row.q_min = q_lo(config, point.Q);
  row.q_max = q_hi(config, point.Q);
  const int k = point.k;
  const std::int64_t n = point.n;
  const auto Qd = static_cast<double>(point.Q);
  const auto Nd = static_cast<double>(n);

  try {
    if (n < 1) throw std::invalid_argument("N must be positive");
    for (BoundId id : config.bounds) {
      const BoundValue v =
          evaluate(id, k, Qd, Nd, config.eps, config.bound_options);
      row.bound_values.push_back(v.value);
    }
    if (selected(config, BoundId::kMunschNew))
      row.new_bound_range =
          new_bound_in_range(k, point.Q, n) ? "in-range" : "out-of-range";

    const FareyFamily family =
        enumerate(k, row.q_min, row.q_max, config.budgets);
    row.family_size = family.size();
    const SpacingReport spacing = max_close_count(family, n);
    row.min_spacing = spacing.min_gap.to_string();
    row.m_value = spacing.max_close_count;
    row.m_ratio = static_cast<double>(row.m_value) /
                  (std::pow(Qd, 1.0 + 1.0 / (k + 1.0)) *
                   std::pow(Nd, -1.0 / (k * (k + 1.0))));
    row.classical_bound = Nd + 1.0 / spacing.min_gap.to_double();

    const AssembledPartition part = assemble_partition(
        k, row.q_min, row.q_max, n, PartitionGrid::kHalfWidth, config.budgets);
    row.classes = part.total_classes;
    row.partition_certified = part.pass();
    for (const auto& b : part.blocks)
      row.repetitions = std::max(row.repetitions, b.partition.repetitions);
    row.covering_bound = part.covering_bound;

    DeltaStarOptions opts;
    opts.eigen = config.eigen;
    opts.eigen.seed = config.seed;
    opts.budgets = config.budgets;
    const EigenEstimate est = delta_star(family, n, 0, opts);
    row.delta_star = est.value;
    row.relative_residual = est.relative_residual;
    row.iterations = est.iterations;
    row.backend = est.backend;
    if (family.size() <= config.budgets.max_dense_eigen)
      row.dense_delta_star = delta_star_dense(family, n, 0, config.budgets);

    for (double v : row.bound_values) row.ratios.push_back(row.delta_star / v);
    row.sandwich = sandwich_holds(row);
  } catch (const ResourceLimitError& e) {
    row.status = "budget-exceeded";
    row.message = e.what();
  } catch (const ConvergenceError& e) {
    row.status = "convergence-failure";
    row.message = e.what();
    row.delta_star = e.estimate();
    row.iterations = e.iterations();
  } catch (const std::exception& e) {
    row.status = "error";
    row.message = e.what();
  }
  return row;
}

std::vector<SurveyRow> run_survey(const SurveyConfig& config) {
  const std::vector<SurveyPoint> grid = survey_grid(config);
  std::vector<SurveyRow> rows(grid.size());
  // Interleaved assignment spreads the costly large-N rows across workers.
  const unsigned workers =
      std::max(1u, std::min<unsigned>(config.workers,
                                      static_cast<unsigned>(grid.size())));
  parallel_chunks(workers, workers, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t w = begin; w < end; ++w)
      for (std::size_t i = w; i < grid.size(); i += workers)
        rows[i] = survey_row(config, grid[i]);
  });
  return rows;
}

bool sandwich_holds(const SurveyRow& row) {
  const double d = row.delta_star;
  const double lower = std::max(static_cast<double>(row.point.n),
                                static_cast<double>(row.family_size));
  const double upper = std::min(row.covering_bound, row.classical_bound);
  return lower - 1e-6 * d <= d && d <= upper * (1.0 + 1e-6);
}

std::vector<std::string> survey_columns(const SurveyConfig& config) {
  std::vector<std::string> cols{
      "k",           "Q",          "q_min",          "q_max",
      "range",       "theta",      "N",              "status",
      "family_size", "min_spacing", "m_value",       "m_ratio",
      "delta_star",  "relative_residual", "iterations", "backend",
      "dense_delta_star", "classes", "repetitions",  "partition_certified",
      "covering_bound", "classical_bound", "sandwich", "new_bound_range"};
  for (BoundId id : config.bounds) {
    cols.push_back(bound_name(id));
    cols.push_back("ratio_" + bound_name(id));
  }
  cols.push_back("message");
  return cols;
}

std::string survey_csv(const SurveyConfig& config,
                       const std::vector<SurveyRow>& rows) {
  std::ostringstream os;
  const auto cols = survey_columns(config);
  for (std::size_t i = 0; i < cols.size(); ++i)
    os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const SurveyRow& r : rows) {
    const bool ok = r.status == "ok";
    os << r.point.k << ',' << r.point.Q << ',' << r.q_min << ',' << r.q_max
       << ',' << range_name(config.range) << ','
       << (r.point.theta ? r.point.theta->to_string() : "") << ','
       << r.point.n << ',' << r.status << ',' << r.family_size << ','
       << r.min_spacing << ',' << r.m_value << ',' << fmt(r.m_ratio) << ','
       << (ok ? fmt(r.delta_star) : "") << ','
       << (ok ? fmt(r.relative_residual) : "") << ',' << r.iterations << ','
       << r.backend << ','
       << (r.dense_delta_star ? fmt(*r.dense_delta_star) : "") << ','
       << r.classes << ',' << r.repetitions << ','
       << (r.partition_certified ? "pass" : "fail") << ','
       << fmt(r.covering_bound) << ',' << fmt(r.classical_bound) << ','
       << (r.sandwich ? "pass" : "fail") << ',' << r.new_bound_range;
    for (std::size_t i = 0; i < config.bounds.size(); ++i) {
      os << ',' << (i < r.bound_values.size() ? fmt(r.bound_values[i]) : "");
      os << ',' << (i < r.ratios.size() ? fmt(r.ratios[i]) : "");
    }
    std::string msg = r.message;
    std::replace(msg.begin(), msg.end(), '"', '\'');
    os << ",\"" << msg << "\"\n";
  }
  return os.str();
}

std::string survey_json(const SurveyConfig& config,
                        const std::vector<SurveyRow>& rows) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const SurveyRow& r : rows) {
    nlohmann::ordered_json j;
    j["k"] = r.point.k;
    j["Q"] = r.point.Q;
    j["q_min"] = r.q_min;
    j["q_max"] = r.q_max;
    j["range"] = range_name(config.range);
    j["theta"] = r.point.theta ? r.point.theta->to_string() : "";
    j["N"] = r.point.n;
    j["status"] = r.status;
    j["family_size"] = r.family_size;
    j["min_spacing"] = r.min_spacing;
    j["m_value"] = r.m_value;
    j["m_ratio"] = r.m_ratio;
    j["delta_star"] = r.delta_star;
    j["relative_residual"] = r.relative_residual;
    j["iterations"] = r.iterations;
    j["backend"] = r.backend;
    if (r.dense_delta_star) j["dense_delta_star"] = *r.dense_delta_star;
    j["classes"] = r.classes;
    j["repetitions"] = r.repetitions;
    j["partition_certified"] = r.partition_certified;
    j["covering_bound"] = r.covering_bound;
    j["classical_bound"] = r.classical_bound;
    j["sandwich"] = r.sandwich;
    j["new_bound_range"] = r.new_bound_range;
    nlohmann::ordered_json bounds = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < config.bounds.size() && i < r.bound_values.size(); ++i)
      bounds[bound_name(config.bounds[i])] = {{"value", r.bound_values[i]},
                                              {"ratio", i < r.ratios.size() ? r.ratios[i] : 0.0}};
    j["bounds"] = bounds;
    j["message"] = r.message;
    out.push_back(j);
  }
  return out.dump(2);
}

}  // namespace powersieve
