#include "powersieve/verify.h"

#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "powersieve/arith.h"
#include "powersieve/bounds.h"
#include "powersieve/congruence.h"
#include "powersieve/farey.h"
#include "powersieve/partition.h"
#include "powersieve/sieve_operator.h"
#include "powersieve/survey.h"

namespace powersieve {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::size_t instances = 0;

  void fail(const std::string& what) {
    if (pass) detail = what;
    pass = false;
  }
};

std::string describe(int k, std::int64_t q_min, std::int64_t q_max,
                     std::int64_t n) {
  std::ostringstream os;
  os << "k=" << k << " q=[" << q_min << "," << q_max << "] N=" << n;
  return os.str();
}

// N values spread geometrically over [lo, hi].
std::vector<std::int64_t> spread(std::int64_t lo, std::int64_t hi, int count) {
  std::vector<std::int64_t> out;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    const auto v = std::llround(std::exp(std::log(static_cast<double>(lo)) * (1 - t) +
                                         std::log(static_cast<double>(hi)) * t));
    if (out.empty() || out.back() != v) out.push_back(v);
  }
  return out;
}

Outcome check_cardinality(bool quick) {
  Outcome o;
  const std::int64_t top = quick ? 5 : 8;
  for (int k = 2; k <= 3; ++k)
    for (std::int64_t Q = 1; Q <= top; ++Q)
      for (auto [lo, hi] : {std::pair{Q, 2 * Q}, std::pair{std::int64_t{1}, Q}}) {
        const FareyFamily f = enumerate(k, lo, hi);
        ++o.instances;
        if (f.size() != predicted_cardinality(k, lo, hi))
          o.fail("size mismatch at " + describe(k, lo, hi, 0));
        if (!f.symmetric()) o.fail("not symmetric at " + describe(k, lo, hi, 0));
      }
  return o;
}

Outcome check_spacing_floor(bool quick) {
  Outcome o;
  const std::int64_t top = quick ? 5 : 8;
  for (int k = 2; k <= 3; ++k)
    for (std::int64_t Q = 1; Q <= top; ++Q) {
      const FareyFamily f = enumerate(k, Q, 2 * Q);
      if (f.size() < 2) continue;
      ++o.instances;
      const auto floor_den = *checked_pow(static_cast<std::uint64_t>(2 * Q), 2 * k);
      if (min_spacing(f) < Rational::from_ints(1, static_cast<std::int64_t>(floor_den)))
        o.fail("gap below 1/(2Q)^{2k} at " + describe(k, Q, 2 * Q, 0));
    }
  return o;
}

Outcome check_mnq(bool quick, unsigned workers) {
  Outcome o;
  const std::int64_t top = quick ? 6 : 12;
  for (int k = 2; k <= 3; ++k)
    for (std::int64_t q_max = 2; q_max <= top; q_max += quick ? 2 : 1) {
      const std::int64_t q_min = std::max<std::int64_t>(1, q_max / 2);
      const FareyFamily f = enumerate(k, q_min, q_max);
      if (static_cast<double>(f.size()) * static_cast<double>(f.size()) > 6e7)
        continue;
      const auto qk = static_cast<std::int64_t>(
          *checked_pow(static_cast<std::uint64_t>(q_max), k));
      for (std::int64_t n : spread(qk, qk * qk, quick ? 3 : 5)) {
        ++o.instances;
        const std::int64_t sweep = max_close_count(f, n).max_close_count;
        const std::int64_t brute =
            brute_force_max_close_count(f, n, Budgets{}, workers);
        std::int64_t via = 0;
        for (const auto& x : f.points())
          via = std::max(via, count_close_pairs_via_congruence(x, q_min, q_max,
                                                               n, true));
        if (sweep != brute || sweep != via) {
          std::ostringstream os;
          os << "sweep/oracle mismatch at " << describe(k, q_min, q_max, n)
             << ": sweep " << sweep << " brute " << brute << " congruence "
             << via;
          o.fail(os.str());
        }
      }
    }
  return o;
}

Outcome check_close_count(bool quick) {
  Outcome o;
  for (int k = 2; k <= 3; ++k)
    for (std::int64_t q_max : {3, 5, quick ? 5 : 7}) {
      const FareyFamily f = enumerate(k, 1, q_max);
      for (std::int64_t n : {1, 4, 37, 500}) {
        ++o.instances;
        std::int64_t best = 0;
        for (const auto& x : f.points())
          best = std::max(best, close_count(f, x, Rational::from_ints(1, 2 * n)));
        if (best != max_close_count(f, n).max_close_count)
          o.fail("close_count maximum differs from sweep at " +
                 describe(k, 1, q_max, n));
      }
    }
  return o;
}

Outcome check_boxes(bool quick) {
  Outcome o;
  std::mt19937_64 rng(20240611);
  const int trials = quick ? 60 : 200;
  for (int t = 0; t < trials; ++t) {
    const int k = 2 + static_cast<int>(rng() % 3);
    const std::int64_t m = 2 + static_cast<std::int64_t>(rng() % 999);
    PolySpec poly;
    for (int d = 0; d < k; ++d)
      poly.coefficients.push_back(static_cast<std::int64_t>(rng() % m));
    std::int64_t lead = 1 + static_cast<std::int64_t>(rng() % m);
    while (std::gcd(lead, m) != 1) lead = 1 + static_cast<std::int64_t>(rng() % m);
    poly.coefficients.push_back(lead);
    poly.modulus = m;
    BoxSpec box;
    box.K = static_cast<std::int64_t>(rng() % 2001) - 1000;
    box.H = 1 + static_cast<std::int64_t>(rng() % m);
    box.L = static_cast<std::int64_t>(rng() % 2001) - 1000;
    box.R = m;
    ++o.instances;
    const BoxCount full = count_box_solutions(poly, box);
    if (full.count != box.H) o.fail("full window count differs from H");
    box.R = 1 + static_cast<std::int64_t>(rng() % m);
    const std::int64_t closed = count_box_solutions(poly, box).count;
    const std::int64_t hashed = count_box_solutions_hashed(poly, box);
    const std::int64_t naive = count_box_solutions_naive(poly, box);
    if (closed != hashed || closed != naive) {
      std::ostringstream os;
      os << "box counters disagree for m=" << m << ": " << closed << " "
         << hashed << " " << naive;
      o.fail(os.str());
    }
  }
  return o;
}

Outcome check_kernel(bool quick) {
  Outcome o;
  std::mt19937_64 rng(77);
  const int trials = quick ? 300 : 2000;
  const std::int64_t offsets[] = {0, 7, -7};
  for (int t = 0; t < trials; ++t) {
    const std::int64_t d1 = 1 + static_cast<std::int64_t>(rng() % 5000);
    const std::int64_t d2 = 1 + static_cast<std::int64_t>(rng() % 5000);
    const Rational x = make_rational(static_cast<std::int64_t>(rng() % d1), d1);
    const Rational y = make_rational(static_cast<std::int64_t>(rng() % d2), d2);
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % (quick ? 1000 : 10000));
    const std::int64_t m = offsets[t % 3];
    ++o.instances;
    const Complex a = kernel_entry(x, y, n, m);
    const Complex b = kernel_entry_naive(x, y, n, m);
    if (std::abs(a - b) > 1e-10 * static_cast<double>(n))
      o.fail("kernel mismatch at x=" + x.to_string() + " y=" + y.to_string() +
             " N=" + std::to_string(n));
  }
  return o;
}

Outcome check_backends(bool quick) {
  Outcome o;
  const GramBackend backends[] = {GramBackend::kDenseKernel,
                                  GramBackend::kKernelOnTheFly,
                                  GramBackend::kToeplitz, GramBackend::kFoldedDft};
  for (int k = 2; k <= 3; ++k)
    for (std::int64_t Q : {2, 3, quick ? 3 : 4}) {
      const FareyFamily f = enumerate(k, Q, 2 * Q);
      if (f.size() > 400) continue;
      const auto qk = static_cast<std::int64_t>(
          *checked_pow(static_cast<std::uint64_t>(Q), k));
      for (std::int64_t n : spread(qk, qk * qk, 3)) {
        ++o.instances;
        const double oracle = delta_star_dense(f, n, 0);
        for (GramBackend b : backends) {
          DeltaStarOptions opts;
          opts.backend = b;
          const double v = delta_star(f, n, 0, opts).value;
          if (std::abs(v - oracle) > 1e-7 * oracle)
            o.fail(backend_name(b) + " differs from dense oracle at " +
                   describe(k, Q, 2 * Q, n));
        }
      }
    }
  return o;
}

Outcome check_symbol(bool) {
  Outcome o;
  for (int k = 2; k <= 3; ++k)
    for (std::int64_t q_max : {4, 7}) {
      const FareyFamily f = enumerate(k, 1, q_max);
      const std::int64_t n = 300;
      ++o.instances;
      const auto exact = dual_symbol_ramanujan(f, n);
      const auto direct = dual_symbol_direct(f, n);
      for (std::size_t d = 0; d < exact.size(); ++d)
        if (std::abs(direct[d] - Complex(static_cast<double>(exact[d]), 0.0)) >
            1e-8 * static_cast<double>(f.size()))
          o.fail("Ramanujan symbol differs at d=" + std::to_string(d));
    }
  return o;
}

Outcome check_sequences(bool quick) {
  Outcome o;
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  for (std::int64_t Q : {2, 3}) {
    const FareyFamily f = enumerate(2, Q, 2 * Q);
    for (std::int64_t n : {8, 30}) {
      const double top = delta_star(f, n, 0).value;
      for (int t = 0; t < (quick ? 5 : 20); ++t) {
        ComplexSequence seq;
        seq.offset = static_cast<std::int64_t>(rng() % 20) - 10;
        for (std::int64_t i = 0; i < n; ++i)
          seq.values.emplace_back(gauss(rng), gauss(rng));
        ++o.instances;
        if (ratio_for_sequence(f, seq) > top * (1 + 1e-8))
          o.fail("sequence ratio above Delta* at " + describe(2, Q, 2 * Q, n));
      }
    }
  }
  return o;
}

Outcome check_sandwich(bool quick, unsigned workers) {
  Outcome o;
  SurveyConfig c;
  c.ks = {2};
  c.qs = quick ? std::vector<std::int64_t>{2, 3} : std::vector<std::int64_t>{2, 3, 4};
  c.thetas = {Rational::from_ints(5, 2), Rational(3), Rational::from_ints(7, 2)};
  c.workers = workers;
  for (const SurveyRow& r : run_survey(c)) {
    ++o.instances;
    if (r.status != "ok") o.fail("survey row failed: " + r.message);
    else if (!r.sandwich)
      o.fail("sandwich violated at " + describe(2, r.q_min, r.q_max, r.point.n));
    else if (r.dense_delta_star &&
             std::abs(*r.dense_delta_star - r.delta_star) > 1e-6 * r.delta_star)
      o.fail("dense oracle differs at " + describe(2, r.q_min, r.q_max, r.point.n));
  }
  return o;
}

Outcome check_partition(bool quick) {
  Outcome o;
  const std::int64_t top = quick ? 6 : 12;
  for (int k = 2; k <= 3; ++k)
    for (std::int64_t q_max = 2; q_max <= top; ++q_max) {
      const std::int64_t q_min = std::max<std::int64_t>(1, q_max / 2);
      const FareyFamily f = enumerate(k, q_min, q_max);
      const auto qk = static_cast<std::int64_t>(
          *checked_pow(static_cast<std::uint64_t>(q_max), k));
      for (std::int64_t n : spread(qk, qk * qk, quick ? 3 : 6)) {
        ++o.instances;
        const SpacedPartition p = build_partition(f, n);
        const PartitionCertificate cert = verify_partition(p);
        if (!cert.pass())
          o.fail(cert.failure + " at " + describe(k, q_min, q_max, n));
        if (p.classes.size() > 4 * static_cast<std::size_t>(p.repetitions))
          o.fail("more than four classes per sweep at " +
                 describe(k, q_min, q_max, n));
      }
    }
  return o;
}

Outcome check_exponent_shape(bool) {
  Outcome o;
  for (int k = 2; k <= 12; ++k)
    for (BoundId id : all_bounds())
      for (bool variant : {false, true}) {
        BoundOptions opts;
        opts.zhao_variant = variant;
        const ExponentExpr e = exponent_expr(id, k, opts);
        ++o.instances;
        Rational prev = e.at(Rational(0));
        for (int i = 1; i <= 24 * k; ++i) {
          const Rational t = Rational::from_ints(i, 8);
          const Rational v = e.at(t);
          if (v < prev) o.fail(bound_name(id) + " exponent decreases, k=" + std::to_string(k));
          const Rational theta_floor = t < Rational(k + 1) ? t : Rational(k + 1);
          if (v < theta_floor)
            o.fail(bound_name(id) + " exponent below min(k+1, theta), k=" + std::to_string(k));
          prev = v;
        }
      }
  return o;
}

Outcome check_range_comparisons(bool) {
  Outcome o;
  for (int k = 3; k <= 12; ++k) {
    ++o.instances;
    const CrossoverResult c =
        crossover(BoundId::kMunschNew, BoundId::kBaierZhao, k);
    const Rational expected = new_vs_baier_zhao_endpoint_printed(k);
    if (expected != new_vs_baier_zhao_endpoint_solved(k))
      o.fail("solved and printed endpoints differ, k=" + std::to_string(k));
    if (c.crossings.size() != 1 || c.crossings.front() != expected ||
        c.intervals.front().sign >= 0)
      o.fail("crossover with baier-zhao wrong, k=" + std::to_string(k));
    const auto wins = improvement_intervals(BoundId::kMunschNew,
                                            prior_bounds_for_comparison(), k);
    if ((k == 3) != wins.empty())
      o.fail("improvement interval emptiness wrong, k=" + std::to_string(k));
  }
  return o;
}

Outcome check_numeric_exponent(bool) {
  Outcome o;
  const double Q = 1e4;
  for (int k = 2; k <= 6; ++k)
    for (BoundId id : all_bounds())
      for (int i = 0; i <= 4; ++i) {
        const Rational theta = Rational(k) + Rational::from_ints(i * k, 4);
        const double N = std::pow(Q, theta.to_double());
        const BoundValue v = evaluate(id, k, Q, N, 0.0);
        ++o.instances;
        const double measured = std::log(v.dominant_term) / std::log(Q);
        if (std::abs(measured - exponent(id, k, theta).to_double()) > 0.05)
          o.fail(bound_name(id) + " dominant term off exponent at k=" +
                 std::to_string(k) + " theta=" + theta.to_string());
      }
  return o;
}

Outcome check_determinism(bool quick, unsigned workers) {
  Outcome o;
  SurveyConfig c;
  c.ks = {2};
  c.qs = quick ? std::vector<std::int64_t>{2, 3} : std::vector<std::int64_t>{2, 3, 4};
  c.workers = std::max(2u, workers);
  const std::string a = survey_csv(c, run_survey(c));
  const std::string b = survey_csv(c, run_survey(c));
  ++o.instances;
  if (a != b) o.fail("survey output differs between runs");
  return o;
}

}  // namespace

std::vector<CheckResult> run_verification(bool quick, unsigned workers) {
  using Check = std::function<Outcome()>;
  const std::vector<std::pair<std::string, Check>> checks = {
      {"farey cardinality and symmetry", [&] { return check_cardinality(quick); }},
      {"farey spacing floor", [&] { return check_spacing_floor(quick); }},
      {"M sweep vs brute force vs congruence", [&] { return check_mnq(quick, workers); }},
      {"M vs close_count", [&] { return check_close_count(quick); }},
      {"box counts", [&] { return check_boxes(quick); }},
      {"kernel closed form vs naive", [&] { return check_kernel(quick); }},
      {"Delta* backends vs dense oracle", [&] { return check_backends(quick); }},
      {"dual symbol via Ramanujan sums", [&] { return check_symbol(quick); }},
      {"sequence ratios below Delta*", [&] { return check_sequences(quick); }},
      {"survey sandwich", [&] { return check_sandwich(quick, workers); }},
      {"partition certificate", [&] { return check_partition(quick); }},
      {"exponent monotone and floored", [&] { return check_exponent_shape(quick); }},
      {"new bound range comparisons", [&] { return check_range_comparisons(quick); }},
      {"numeric vs exponent", [&] { return check_numeric_exponent(quick); }},
      {"survey determinism", [&] { return check_determinism(quick, workers); }},
  };
  std::vector<CheckResult> results;
  for (const auto& [name, run] : checks) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    r.name = name;
    try {
      const Outcome o = run();
      r.pass = o.pass;
      r.detail = o.pass ? std::to_string(o.instances) + " instances" : o.detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
    results.push_back(std::move(r));
  }
  return results;
}

std::string verification_table(const std::vector<CheckResult>& results) {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& r : results) {
    char timing[32];
    std::snprintf(timing, sizeof timing, "%7.2fs", r.seconds);
    os << (r.pass ? "PASS " : "FAIL ") << timing << "  " << r.name << "  ("
       << r.detail << ")\n";
    passed += r.pass ? 1 : 0;
  }
  os << passed << "/" << results.size() << " checks passed\n";
  return os.str();
}

}  // namespace powersieve
