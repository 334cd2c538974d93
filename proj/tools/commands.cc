#include "commands.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "powersieve/bounds.h"
#include "powersieve/budget.h"
#include "powersieve/congruence.h"
#include "powersieve/errors.h"
#include "powersieve/farey.h"
#include "powersieve/partition.h"
#include "powersieve/sieve_operator.h"
#include "powersieve/survey.h"
#include "powersieve/verify.h"

namespace powersieve::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Common {
  std::string format;
  std::string out;
  unsigned workers = 1;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  int max_iters = 20000;
  Budgets budgets = Budgets::from_env();
};

void add_output(CLI::App* cmd, Common& c, const std::string& default_format) {
  cmd->add_option("--format", c.format,
                  "Output format (default " + default_format + ")")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", c.out, "Write the report to this file");
}

void add_budgets(CLI::App* cmd, Common& c) {
  auto& b = c.budgets;
  cmd->add_option("--budget-family", b.max_family_size, "Largest family size")
      ->capture_default_str();
  cmd->add_option("--budget-power-denominator", b.max_power_denominator,
                  "Largest q^k")
      ->capture_default_str();
  cmd->add_option("--budget-pairs", b.max_pair_checks,
                  "Pair checks for quadratic oracles")
      ->capture_default_str();
  cmd->add_option("--budget-box", b.max_box_width, "Box width for counting")
      ->capture_default_str();
  cmd->add_option("--budget-dense", b.max_dense_eigen,
                  "Largest dense eigensolver size")
      ->capture_default_str();
  cmd->add_option("--budget-matrix-bytes", b.max_matrix_bytes,
                  "Bytes for a stored Gram matrix")
      ->capture_default_str();
  cmd->add_option("--budget-operator-dim", b.max_operator_dim,
                  "Dimension for iterative operators")
      ->capture_default_str();
}

void add_solver(CLI::App* cmd, Common& c) {
  cmd->add_option("--tol", c.tol, "Relative residual tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-iters", c.max_iters, "Eigensolver iteration cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "Seed for start vectors and sampling")
      ->capture_default_str();
  cmd->add_option("--workers", c.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file " + c.out);
  file << text;
  if (!text.empty() && text.back() != '\n') file << '\n';
}

std::vector<BoundId> parse_bound_list(const std::vector<std::string>& names) {
  if (names.empty()) return all_bounds();
  std::vector<BoundId> ids;
  for (const auto& name : names) {
    if (name == "all") return all_bounds();
    const auto id = parse_bound(name);
    if (!id) throw std::invalid_argument("unknown bound id: " + name);
    ids.push_back(*id);
  }
  return ids;
}

GramBackend parse_backend(const std::string& name) {
  for (GramBackend b : {GramBackend::kAuto, GramBackend::kDenseKernel,
                        GramBackend::kKernelOnTheFly, GramBackend::kToeplitz,
                        GramBackend::kFoldedDft})
    if (backend_name(b) == name) return b;
  throw std::invalid_argument("unknown backend: " + name);
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + cells[i];
  return line + "\n";
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Large sieve laboratory for power moduli"};
  app.set_config("--config", "", "Key-value file; one [section] per command");
  app.require_subcommand(1);
  Common c;

  // Family parameters shared by several commands.
  int k = 2;
  std::int64_t qmin = 1, qmax = 1, n = 1, m = 0;

  // enumerate
  auto* enumerate_cmd = app.add_subcommand("enumerate", "List the points a/q^k");
  enumerate_cmd->add_option("--k", k)->required()->check(CLI::Range(1, 30));
  enumerate_cmd->add_option("--qmin", qmin)->required()->check(CLI::PositiveNumber);
  enumerate_cmd->add_option("--qmax", qmax)->required()->check(CLI::PositiveNumber);

  // mnq
  bool brute = false;
  auto* mnq_cmd = app.add_subcommand("mnq", "Minimum spacing and M(N, Q)");
  mnq_cmd->add_option("--k", k)->required()->check(CLI::Range(1, 30));
  mnq_cmd->add_option("--qmin", qmin)->required()->check(CLI::PositiveNumber);
  mnq_cmd->add_option("--qmax", qmax)->required()->check(CLI::PositiveNumber);
  mnq_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  mnq_cmd->add_flag("--brute", brute, "Also run the quadratic oracle");

  // boxcount
  std::vector<std::int64_t> coefficients;
  std::int64_t modulus = 0;
  BoxSpec box;
  bool legacy_j = false;
  int survey_instances = 0;
  std::int64_t max_modulus = 1000;
  auto* box_cmd = app.add_subcommand(
      "boxcount", "Count f(x) = y (mod m) in a box, or survey random boxes");
  box_cmd->add_option("--k", k, "Degree (survey mode)")->check(CLI::Range(2, 30));
  box_cmd->add_option("--poly", coefficients,
                      "Coefficients c0,c1,...,ck of f, lowest first")
      ->delimiter(',');
  box_cmd->add_option("--modulus", modulus, "m")->check(CLI::PositiveNumber);
  box_cmd->add_option("--K", box.K, "x runs over K+1..K+H");
  box_cmd->add_option("--H", box.H)->check(CLI::PositiveNumber);
  box_cmd->add_option("--L", box.L, "y runs over L+1..L+R");
  box_cmd->add_option("--R", box.R)->check(CLI::PositiveNumber);
  box_cmd->add_flag("--legacy-j", legacy_j, "Use j = k(k+1) in the bound");
  box_cmd->add_option("--survey", survey_instances,
                      "Number of random instances instead of one box");
  box_cmd->add_option("--max-modulus", max_modulus)->check(CLI::PositiveNumber);

  // delta-star
  std::string backend = "auto";
  std::string method = "lobpcg";
  bool dense_check = false;
  auto* delta_cmd = app.add_subcommand("delta-star", "Optimal sieve constant");
  delta_cmd->add_option("--k", k)->required()->check(CLI::Range(1, 30));
  delta_cmd->add_option("--qmin", qmin)->required()->check(CLI::PositiveNumber);
  delta_cmd->add_option("--qmax", qmax)->required()->check(CLI::PositiveNumber);
  delta_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  delta_cmd->add_option("--m", m, "Offset M of the coefficient range");
  delta_cmd->add_option("--backend", backend)
      ->check(CLI::IsMember({"auto", "dense-kernel", "kernel-on-the-fly",
                             "toeplitz", "folded-dft"}))
      ->capture_default_str();
  delta_cmd->add_option("--method", method)
      ->check(CLI::IsMember({"lobpcg", "power"}))
      ->capture_default_str();
  delta_cmd->add_flag("--dense-check", dense_check,
                      "Compare with the dense eigensolver");

  // bounds
  double Q = 10.0, N = 0.0, eps = 0.0;
  std::string theta_text;
  std::vector<std::string> bound_names;
  bool zhao_variant = false, halupczok_sum = false, regime = false;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate the bound catalog");
  bounds_cmd->add_option("--k", k)->required()->check(CLI::Range(2, 30));
  bounds_cmd->add_option("--Q", Q)->check(CLI::Range(1.0, 1e300));
  bounds_cmd->add_option("--n", N, "N (or give --theta)");
  bounds_cmd->add_option("--theta", theta_text, "N = Q^theta, rational like 9/2");
  bounds_cmd->add_option("--eps", eps)->check(CLI::NonNegativeNumber);
  bounds_cmd->add_option("--bounds", bound_names, "Bound ids, comma separated")
      ->delimiter(',');
  bounds_cmd->add_flag("--zhao-variant", zhao_variant,
                       "Zhao with N^{1-1/kappa}");
  bounds_cmd->add_flag("--halupczok-sum", halupczok_sum,
                       "Combine Halupczok terms by addition, not max");
  bounds_cmd->add_flag("--regime", regime,
                       "Print the regime map over [k, 2k] instead");

  // crossover
  std::string a_name, b_name, lo_text, hi_text;
  auto* cross_cmd = app.add_subcommand("crossover", "Exact exponent crossovers");
  cross_cmd->add_option("--a", a_name)->required();
  cross_cmd->add_option("--b", b_name)->required();
  cross_cmd->add_option("--k", k)->required()->check(CLI::Range(2, 30));
  cross_cmd->add_option("--lo", lo_text, "Range start (default k)");
  cross_cmd->add_option("--hi", hi_text, "Range end (default 2k)");
  cross_cmd->add_flag("--zhao-variant", zhao_variant);

  // partition
  std::string grid = "half";
  auto* part_cmd = app.add_subcommand("partition", "1/N-spaced covering");
  part_cmd->add_option("--k", k)->required()->check(CLI::Range(1, 30));
  part_cmd->add_option("--qmin", qmin)->required()->check(CLI::PositiveNumber);
  part_cmd->add_option("--qmax", qmax)->required()->check(CLI::PositiveNumber);
  part_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  part_cmd->add_option("--grid", grid, "Interval width 1/(2N) or 1/N")
      ->check(CLI::IsMember({"half", "unit"}))
      ->capture_default_str();

  // survey
  SurveyConfig survey;
  std::vector<std::string> theta_list;
  std::string range = "dyadic";
  auto* survey_cmd = app.add_subcommand("survey", "Grid of Delta* against bounds");
  survey_cmd->add_option("--k", survey.ks, "k values")->delimiter(',');
  survey_cmd->add_option("--Q", survey.qs, "Q values")->delimiter(',');
  survey_cmd->add_option("--theta", theta_list, "theta values (default k..2k by 1/2)")
      ->delimiter(',');
  survey_cmd->add_option("--n", survey.ns, "N values in place of theta")
      ->delimiter(',');
  survey_cmd->add_option("--range", range, "q in [Q, 2Q] or [1, Q]")
      ->check(CLI::IsMember({"dyadic", "full"}))
      ->capture_default_str();
  survey_cmd->add_option("--eps", eps)->check(CLI::NonNegativeNumber);
  survey_cmd->add_option("--bounds", bound_names, "Bound ids, comma separated")
      ->delimiter(',');
  survey_cmd->add_flag("--zhao-variant", zhao_variant);
  survey_cmd->add_flag("--halupczok-sum", halupczok_sum);

  // verify
  bool quick = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run every invariant check");
  verify_cmd->add_flag("--quick", quick, "Reduced grids");

  add_output(enumerate_cmd, c, "csv");
  add_output(mnq_cmd, c, "json");
  add_output(box_cmd, c, "json");
  add_output(delta_cmd, c, "json");
  add_output(bounds_cmd, c, "csv");
  add_output(cross_cmd, c, "json");
  add_output(part_cmd, c, "json");
  add_output(survey_cmd, c, "csv");
  for (auto* cmd : {enumerate_cmd, mnq_cmd, box_cmd, delta_cmd, part_cmd,
                    survey_cmd})
    add_budgets(cmd, c);
  for (auto* cmd : {delta_cmd, survey_cmd, box_cmd, mnq_cmd, part_cmd,
                    verify_cmd})
    add_solver(cmd, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidArguments;
  }
  if (c.format.empty())
    c.format = app.got_subcommand(enumerate_cmd) || app.got_subcommand(bounds_cmd) ||
                       app.got_subcommand(survey_cmd)
                   ? "csv"
                   : "json";

  try {
    if (app.got_subcommand(enumerate_cmd)) {
      const FareyFamily f = enumerate(k, qmin, qmax, c.budgets);
      if (c.format == "csv") {
        emit(c, family_csv(f), out);
      } else {
        Json j;
        j["k"] = k;
        j["q_min"] = qmin;
        j["q_max"] = qmax;
        j["size"] = f.size();
        j["points"] = Json::array();
        for (const auto& p : f.points())
          j["points"].push_back({{"q", p.q}, {"a", p.a}, {"value", p.value().to_string()}});
        emit(c, j.dump(2), out);
      }
      return kOk;
    }

    if (app.got_subcommand(mnq_cmd)) {
      const FareyFamily f = enumerate(k, qmin, qmax, c.budgets);
      if (f.empty()) throw std::invalid_argument("empty family");
      const SpacingReport r = max_close_count(f, n);
      std::optional<std::int64_t> oracle;
      if (brute) oracle = brute_force_max_close_count(f, n, c.budgets, c.workers);
      if (c.format == "json") {
        Json j = Json::parse(spacing_report_json(r));
        if (oracle) j["m_brute_force"] = *oracle;
        emit(c, j.dump(2), out);
      } else {
        std::string text = csv_line({"min_gap", "m_value", "argmax_k", "argmax_q",
                                     "argmax_a", "m_brute_force"});
        text += csv_line({r.min_gap.to_string(), std::to_string(r.max_close_count),
                          std::to_string(r.argmax_point.k),
                          std::to_string(r.argmax_point.q),
                          std::to_string(r.argmax_point.a),
                          oracle ? std::to_string(*oracle) : ""});
        emit(c, text, out);
      }
      if (oracle && *oracle != r.max_close_count) {
        err << "sweep and brute force disagree\n";
        return kVerifyFailed;
      }
      return kOk;
    }

    if (app.got_subcommand(box_cmd)) {
      if (survey_instances > 0) {
        const auto rows = box_survey(k, survey_instances, max_modulus, c.seed);
        if (c.format == "csv") {
          emit(c, box_survey_csv(rows), out);
        } else {
          Json arr = Json::array();
          for (const auto& r : rows)
            arr.push_back({{"k", r.k}, {"m", r.m}, {"H", r.box.H}, {"R", r.box.R},
                           {"K", r.box.K}, {"L", r.box.L}, {"count", r.result.count},
                           {"bound", r.result.bound_value}, {"ratio", r.result.ratio}});
          emit(c, arr.dump(2), out);
        }
        return kOk;
      }
      if (coefficients.empty() || modulus == 0)
        throw std::invalid_argument("boxcount needs --poly and --modulus");
      PolySpec poly{coefficients, modulus};
      poly.validate();
      const BoxCount result = count_box_solutions(poly, box, c.budgets);
      const double bound = box_bound(poly.degree(), modulus, box.H, box.R, legacy_j);
      if (c.format == "json") {
        Json j;
        j["k"] = poly.degree();
        j["m"] = modulus;
        j["K"] = box.K;
        j["H"] = box.H;
        j["L"] = box.L;
        j["R"] = box.R;
        j["count"] = result.count;
        j["bound"] = bound;
        j["ratio"] = static_cast<double>(result.count) / bound;
        emit(c, j.dump(2), out);
      } else {
        std::string text = csv_line({"k", "m", "H", "R", "K", "L", "count", "bound", "ratio"});
        text += csv_line({std::to_string(poly.degree()), std::to_string(modulus),
                          std::to_string(box.H), std::to_string(box.R),
                          std::to_string(box.K), std::to_string(box.L),
                          std::to_string(result.count), fmt(bound),
                          fmt(static_cast<double>(result.count) / bound)});
        emit(c, text, out);
      }
      return kOk;
    }

    if (app.got_subcommand(delta_cmd)) {
      const FareyFamily f = enumerate(k, qmin, qmax, c.budgets);
      DeltaStarOptions opts;
      opts.backend = parse_backend(backend);
      opts.budgets = c.budgets;
      opts.eigen.tolerance = c.tol;
      opts.eigen.max_iterations = c.max_iters;
      opts.eigen.seed = c.seed;
      opts.eigen.method = method == "power" ? EigenMethod::kPower : EigenMethod::kLobpcg;
      DeltaStarRecord rec;
      rec.k = k;
      rec.q_min = qmin;
      rec.q_max = qmax;
      rec.n = n;
      rec.m = m;
      rec.family_size = f.size();
      rec.estimate = delta_star(f, n, m, opts);
      rec.min_spacing = f.size() >= 2 ? min_spacing(f).to_string() : "1";
      std::optional<double> dense;
      if (dense_check) dense = delta_star_dense(f, n, m, c.budgets);
      if (c.format == "json") {
        Json j = Json::parse(delta_star_json(rec));
        j["backend"] = rec.estimate.backend;
        j["method"] = rec.estimate.method;
        if (dense) j["dense_delta_star"] = *dense;
        emit(c, j.dump(2), out);
      } else {
        std::string text = csv_line({"k", "q_min", "q_max", "N", "M", "family_size",
                                     "delta_star", "residual", "iterations",
                                     "min_spacing", "backend", "dense_delta_star"});
        text += csv_line({std::to_string(k), std::to_string(qmin), std::to_string(qmax),
                          std::to_string(n), std::to_string(m), std::to_string(f.size()),
                          fmt(rec.estimate.value), fmt(rec.estimate.residual),
                          std::to_string(rec.estimate.iterations), rec.min_spacing,
                          rec.estimate.backend, dense ? fmt(*dense) : ""});
        emit(c, text, out);
      }
      return kOk;
    }

    if (app.got_subcommand(bounds_cmd)) {
      BoundOptions opts;
      opts.zhao_variant = zhao_variant;
      opts.halupczok_max_reading = !halupczok_sum;
      const auto ids = parse_bound_list(bound_names);
      if (regime) {
        const auto segments = regime_map(k, ids, Rational(k), Rational(2 * k), opts);
        if (c.format == "csv") {
          emit(c, regime_map_csv(k, segments), out);
        } else {
          Json arr = Json::array();
          for (const auto& s : segments)
            arr.push_back({{"k", k}, {"theta_lo", s.lo.to_string()},
                           {"theta_hi", s.hi.to_string()},
                           {"winner_id", bound_name(s.winner)},
                           {"exponent_expression", s.expression.to_string()}});
          emit(c, arr.dump(2), out);
        }
        return kOk;
      }
      std::optional<Rational> theta;
      if (!theta_text.empty()) {
        theta = Rational::parse(theta_text);
        N = std::pow(Q, theta->to_double());
      }
      if (!(N >= 1.0)) throw std::invalid_argument("bounds needs --n >= 1 or --theta");
      Json arr = Json::array();
      std::string text = csv_line({"id", "k", "Q", "N", "eps", "value",
                                   "dominant_term", "exponent", "out_of_range"});
      for (BoundId id : ids) {
        const BoundValue v = evaluate(id, k, Q, N, eps, opts);
        const std::string e = theta ? exponent(id, k, *theta, opts).to_string() : "";
        const std::string flag = id == BoundId::kMunschNew
                                     ? (v.out_of_range ? "out-of-range" : "in-range")
                                     : "";
        text += csv_line({bound_name(id), std::to_string(k), fmt(Q), fmt(N), fmt(eps),
                          fmt(v.value), fmt(v.dominant_term), e, flag});
        arr.push_back({{"id", bound_name(id)}, {"k", k}, {"Q", Q}, {"N", N},
                       {"eps", eps}, {"value", v.value},
                       {"dominant_term", v.dominant_term}, {"exponent", e},
                       {"out_of_range", flag}});
        if (v.out_of_range)
          err << "warning: " << bound_name(id)
              << " evaluated outside N^{1/2k} <= Q <= N^{1/k}\n";
      }
      emit(c, c.format == "csv" ? text : arr.dump(2), out);
      return kOk;
    }

    if (app.got_subcommand(cross_cmd)) {
      const auto a = parse_bound(a_name);
      const auto b = parse_bound(b_name);
      if (!a || !b) throw std::invalid_argument("unknown bound id");
      BoundOptions opts;
      opts.zhao_variant = zhao_variant;
      const Rational lo = lo_text.empty() ? Rational(k) : Rational::parse(lo_text);
      const Rational hi = hi_text.empty() ? Rational(2 * k) : Rational::parse(hi_text);
      const CrossoverResult r = crossover(*a, *b, k, lo, hi, opts);
      if (c.format == "json") {
        Json j;
        j["a"] = a_name;
        j["b"] = b_name;
        j["k"] = k;
        j["identical"] = r.identical;
        j["crossings"] = Json::array();
        for (const auto& t : r.crossings) j["crossings"].push_back(t.to_string());
        j["intervals"] = Json::array();
        for (const auto& s : r.intervals)
          j["intervals"].push_back({{"lo", s.lo.to_string()},
                                    {"hi", s.hi.to_string()},
                                    {"sign", s.sign}});
        emit(c, j.dump(2), out);
      } else {
        std::string text = csv_line({"k", "theta_lo", "theta_hi", "sign"});
        for (const auto& s : r.intervals)
          text += csv_line({std::to_string(k), s.lo.to_string(), s.hi.to_string(),
                            std::to_string(s.sign)});
        emit(c, text, out);
      }
      return kOk;
    }

    if (app.got_subcommand(part_cmd)) {
      const AssembledPartition p = assemble_partition(
          k, qmin, qmax, n,
          grid == "half" ? PartitionGrid::kHalfWidth : PartitionGrid::kUnitWidth,
          c.budgets, c.workers);
      if (c.format == "json") {
        emit(c, partition_json(p), out);
      } else {
        std::string text = csv_line({"n", "q_lo", "q_hi", "classes", "repetitions",
                                     "m_value", "certified"});
        for (const auto& b : p.blocks)
          text += csv_line({std::to_string(n), std::to_string(b.q_lo),
                            std::to_string(b.q_hi),
                            std::to_string(b.partition.classes.size()),
                            std::to_string(b.partition.repetitions),
                            std::to_string(b.certificate.m_value),
                            b.certificate.pass() ? "true" : "false"});
        emit(c, text, out);
      }
      for (const auto& b : p.blocks)
        if (!b.certificate.covers || !b.certificate.spaced) {
          err << "partition certificate failed: " << b.certificate.failure << "\n";
          return kVerifyFailed;
        }
      return kOk;
    }

    if (app.got_subcommand(survey_cmd)) {
      for (const auto& t : theta_list) survey.thetas.push_back(Rational::parse(t));
      survey.range = *parse_range(range);
      survey.eps = eps;
      survey.bounds = parse_bound_list(bound_names);
      survey.bound_options.zhao_variant = zhao_variant;
      survey.bound_options.halupczok_max_reading = !halupczok_sum;
      survey.budgets = c.budgets;
      survey.eigen.tolerance = c.tol;
      survey.eigen.max_iterations = c.max_iters;
      survey.workers = c.workers;
      survey.seed = c.seed;
      const auto rows = run_survey(survey);
      emit(c, c.format == "csv" ? survey_csv(survey, rows) : survey_json(survey, rows),
           out);
      int failure = kOk;
      for (const auto& r : rows) {
        if (r.status == "ok") return kOk;
        if (failure == kOk)
          failure = r.status == "budget-exceeded"       ? kBudgetExceeded
                    : r.status == "convergence-failure" ? kConvergenceFailure
                                                        : kInvalidArguments;
      }
      if (rows.empty()) return kInvalidArguments;
      err << "every survey row failed\n";
      return failure;
    }

    if (app.got_subcommand(verify_cmd)) {
      const auto results = run_verification(quick, c.workers);
      out << verification_table(results);
      for (const auto& r : results)
        if (!r.pass) return kVerifyFailed;
      return kOk;
    }
  } catch (const ResourceLimitError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const ConvergenceError& e) {
    err << "no convergence: " << e.what() << " (estimate " << e.estimate()
        << ", residual " << e.residual() << ", iterations " << e.iterations()
        << ")\n";
    return kConvergenceFailure;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kInvalidArguments;
  } catch (const std::domain_error& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kInvalidArguments;
  } catch (const std::logic_error& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kInvalidArguments;
  }
  return kInvalidArguments;
}

}  // namespace powersieve::cli
