// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.h"
#include "powersieve/bounds.h"
#include "powersieve/congruence.h"
#include "powersieve/farey.h"
#include "powersieve/parallel.h"
#include "powersieve/partition.h"
#include "powersieve/sieve_operator.h"
#include "powersieve/survey.h"

using namespace powersieve;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Instance {
  int k;
  std::int64_t Q;
  std::int64_t n;
};

std::int64_t ipow(std::int64_t q, int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r *= q;
  return r;
}

Rational r(std::int64_t p, std::int64_t q) { return Rational::from_ints(p, q); }

// Ten dyadic families with q_max <= 12, six N per family spread
// geometrically over [Q^k, Q^{2k}].
std::vector<Instance> m_grid() {
  std::vector<Instance> grid;
  for (int k = 2; k <= 3; ++k)
    for (std::int64_t Q = 2; Q <= 6; ++Q) {
      const double lo = static_cast<double>(ipow(Q, k));
      for (int i = 0; i < 6; ++i) {
        const auto n = static_cast<std::int64_t>(std::llround(lo * std::pow(lo, i / 5.0)));
        grid.push_back({k, Q, std::clamp(n, ipow(Q, k), ipow(Q, 2 * k))});
      }
    }
  return grid;
}

Outcome spacing_floor() {
  std::size_t pairs = 0;
  for (int k = 2; k <= 3; ++k)
    for (std::int64_t Q = 1; Q <= 8; ++Q) {
      const FareyFamily f = enumerate(k, Q, 2 * Q);
      const __int128 floor_den = ipow(2 * Q, 2 * k);
      // On the sorted circle the closest pair is adjacent, so checking every
      // adjacent gap (and the wrap gap) covers every distinct pair.
      for (std::size_t i = 0; i < f.size(); ++i) {
        const FareyPoint& x = f[i];
        const FareyPoint& y = f[(i + 1) % f.size()];
        if (f.size() < 2) break;
        __int128 num = static_cast<__int128>(y.num) * x.den -
                       static_cast<__int128>(x.num) * y.den;
        const __int128 den = static_cast<__int128>(x.den) * y.den;
        if (num <= 0) num += den;
        if (2 * num > den) num = den - num;
        if (num * floor_den < den)
          return {false, "k=" + std::to_string(k) + " Q=" + std::to_string(Q) +
                             " pair " + x.value().to_string() + ", " +
                             y.value().to_string()};
        ++pairs;
      }
      if (f.size() >= 2 && min_spacing(f) < r(1, static_cast<std::int64_t>(floor_den)))
        return {false, "min_spacing below floor at k=" + std::to_string(k) +
                           " Q=" + std::to_string(Q)};
    }
  return {true, std::to_string(pairs) + " adjacent gaps over 16 families"};
}

Outcome m_dual_path(unsigned workers) {
  const auto grid = m_grid();
  for (const Instance& in : grid) {
    const FareyFamily f = enumerate(in.k, in.Q, 2 * in.Q);
    const std::int64_t sweep = max_close_count(f, in.n).max_close_count;
    const std::int64_t brute = brute_force_max_close_count(f, in.n, {}, workers);
    std::vector<std::int64_t> best(workers, 0);
    parallel_chunks(f.size(), workers, [&](std::size_t b, std::size_t e, unsigned w) {
      for (std::size_t i = b; i < e; ++i)
        best[w] = std::max(best[w], count_close_pairs_via_congruence(
                                        f[i], in.Q, 2 * in.Q, in.n, true));
    });
    const std::int64_t cong = *std::max_element(best.begin(), best.end());
    if (sweep != brute || sweep != cong)
      return {false, "k=" + std::to_string(in.k) + " Q=" + std::to_string(in.Q) +
                         " N=" + std::to_string(in.n) + " sweep " +
                         std::to_string(sweep) + " brute " + std::to_string(brute) +
                         " congruence " + std::to_string(cong)};
  }
  return {true, std::to_string(grid.size()) + " instances"};
}

double max_neighbour_ratio() {
  double best = 0.0;
  for (const Instance& in : m_grid()) {
    const FareyFamily f = enumerate(in.k, in.Q, 2 * in.Q);
    const double m = static_cast<double>(max_close_count(f, in.n).max_close_count);
    const double k = in.k;
    const double scale = std::pow(static_cast<double>(in.Q), 1.0 + 1.0 / (k + 1.0)) *
                         std::pow(static_cast<double>(in.n), -1.0 / (k * (k + 1.0)));
    best = std::max(best, m / scale);
  }
  return best;
}

Outcome neighbour_ratio() {
  const double a = max_neighbour_ratio();
  const double b = max_neighbour_ratio();
  char buf[96];
  std::snprintf(buf, sizeof buf, "max ratio %.12g", a);
  return {std::isfinite(a) && a > 0.0 && a == b, buf};
}

Outcome sandwich(const SurveyConfig& config, const std::vector<SurveyRow>& rows,
                 double seconds) {
  std::size_t dense = 0;
  for (const SurveyRow& row : rows) {
    const std::string where = "k=" + std::to_string(row.point.k) +
                              " Q=" + std::to_string(row.point.Q) +
                              " N=" + std::to_string(row.point.n);
    if (row.status != "ok") return {false, where + ": " + row.status + " " + row.message};
    const double lower = std::max<double>(row.point.n, row.family_size);
    const double upper = std::min(row.covering_bound, row.classical_bound);
    if (!(lower - 1e-6 * row.delta_star <= row.delta_star &&
          row.delta_star <= upper * (1 + 1e-6)))
      return {false, where + ": sandwich violated"};
    if (!(row.relative_residual <= 1e-8)) return {false, where + ": residual too large"};
    if (row.family_size <= 400) {
      if (!row.dense_delta_star) return {false, where + ": dense oracle missing"};
      if (std::abs(row.delta_star - *row.dense_delta_star) > 1e-6 * *row.dense_delta_star)
        return {false, where + ": dense oracle disagrees"};
      ++dense;
    }
  }
  (void)config;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu rows, %zu dense cross-checks, %.1f s", rows.size(),
                dense, seconds);
  return {seconds < 300.0, buf};
}

Outcome partition_certificate(const SurveyConfig& config, unsigned workers) {
  std::size_t blocks = 0, unit_excess = 0;
  for (const SurveyPoint& pt : survey_grid(config)) {
    const AssembledPartition a = assemble_partition(
        pt.k, pt.Q, 2 * pt.Q, pt.n, PartitionGrid::kHalfWidth, config.budgets, workers);
    for (const PartitionBlock& b : a.blocks) {
      ++blocks;
      if (!b.certificate.pass() || b.partition.repetitions > b.certificate.m_value)
        return {false, "k=" + std::to_string(pt.k) + " Q=" + std::to_string(pt.Q) +
                           " N=" + std::to_string(pt.n) + ": " + b.certificate.failure};
    }
    const SpacedPartition unit = build_partition(enumerate(pt.k, pt.Q, 2 * pt.Q), pt.n,
                                                 PartitionGrid::kUnitWidth);
    unit_excess += !verify_partition(unit).repetitions_within_m;
  }
  return {true, std::to_string(blocks) + " blocks certified; unit-width grid exceeds M on " +
                    std::to_string(unit_excess) + " rows"};
}

Outcome exponent_reproduction() {
  const auto others = prior_bounds_for_comparison();
  for (int k = 3; k <= 12; ++k) {
    const Rational printed = Rational(2 * k - 2) + r(2 * (k - 2), k * k + k - 2);
    const CrossoverResult c = crossover(BoundId::kMunschNew, BoundId::kBaierZhao, k);
    if (c.crossings.empty() || c.crossings.back() != printed)
      return {false, "k=" + std::to_string(k) + " crossover mismatch"};
    const bool empty = improvement_intervals(BoundId::kMunschNew, others, k).empty();
    if (empty != (k == 3))
      return {false, "k=" + std::to_string(k) + " improvement interval " +
                         (empty ? "empty" : "nonempty")};
  }
  const auto four = improvement_intervals(BoundId::kMunschNew, others, 4);
  return {true, "k=3 crossover " +
                    crossover(BoundId::kMunschNew, BoundId::kBaierZhao, 3).crossings.back().to_string() +
                    ", k=4 interval (" + four.front().lo.to_string() + ", " +
                    four.front().hi.to_string() + ")"};
}

Outcome box_counts() {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 200; ++i) {
    const int k = 2 + static_cast<int>(rng() % 4);
    const std::int64_t m = 2 + static_cast<std::int64_t>(rng() % 999);
    PolySpec f;
    f.modulus = m;
    for (int j = 0; j < k; ++j)
      f.coefficients.push_back(static_cast<std::int64_t>(rng() % 20001) - 10000);
    std::int64_t lead;
    do lead = 1 + static_cast<std::int64_t>(rng() % 10000);
    while (std::gcd(lead, m) != 1);
    f.coefficients.push_back(lead);
    const std::int64_t K = static_cast<std::int64_t>(rng() % 200001) - 100000;
    const std::int64_t L = static_cast<std::int64_t>(rng() % 200001) - 100000;
    const std::int64_t H = 1 + static_cast<std::int64_t>(rng() % m);
    const std::int64_t R = 1 + static_cast<std::int64_t>(rng() % m);
    if (count_box_solutions(f, {K, H, L, m}).count != H)
      return {false, "full window count != H at instance " + std::to_string(i)};
    for (const BoxSpec& b : {BoxSpec{K, H, L, m}, BoxSpec{K, H, L, R}})
      if (count_box_solutions_hashed(f, b) != count_box_solutions_naive(f, b))
        return {false, "hashed/naive mismatch at instance " + std::to_string(i)};
  }
  return {true, "200 instances"};
}

Outcome kernel_correctness() {
  std::mt19937_64 rng(77);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const std::int64_t d1 = 1 + static_cast<std::int64_t>(rng() % 10000);
    const std::int64_t d2 = 1 + static_cast<std::int64_t>(rng() % 10000);
    const std::int64_t a1 = static_cast<std::int64_t>(rng() % d1);
    const std::int64_t a2 = static_cast<std::int64_t>(rng() % d2);
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 10000);
    const std::int64_t m = std::array<std::int64_t, 3>{0, 7, -7}[rng() % 3];
    const __int128 num = static_cast<__int128>(a1) * d2 - static_cast<__int128>(a2) * d1;
    const __int128 den = static_cast<__int128>(d1) * d2;
    std::complex<double> naive = 0;
    for (std::int64_t t = m + 1; t <= m + n; ++t) {
      __int128 red = num * t % den;
      if (red < 0) red += den;
      naive += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(red) /
                                   static_cast<double>(den));
    }
    const double dev = std::abs(kernel_entry(r(a1, d1), r(a2, d2), n, m) - naive);
    worst = std::max(worst, dev / static_cast<double>(n));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "10000 instances, max deviation %.3g * N", worst);
  return {worst <= 1e-10, buf};
}

Outcome determinism(unsigned workers) {
  const std::string w = std::to_string(workers);
  std::vector<const char*> argv{"powersieve", "survey", "--seed", "7", "--workers", w.c_str()};
  std::ostringstream first, second, err;
  const int a = cli::run(static_cast<int>(argv.size()), argv.data(), first, err);
  const int b = cli::run(static_cast<int>(argv.size()), argv.data(), second, err);
  if (a != 0 || b != 0) return {false, "survey exit codes " + std::to_string(a) + ", " + std::to_string(b)};
  return {first.str() == second.str(),
          std::to_string(first.str().size()) + " bytes compared"};
}

}  // namespace

int main() {
  const unsigned workers = default_workers();
  int failures = 0;
  auto report = [&](int id, const std::string& name, const std::function<Outcome()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("[%s] %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
                o.detail.c_str(), s);
    std::fflush(stdout);
  };

  SurveyConfig config;
  config.workers = workers;

  report(1, "spacing floor", spacing_floor);
  report(2, "M dual-path equality", [&] { return m_dual_path(workers); });
  report(3, "close-neighbour ratio report", neighbour_ratio);
  report(4, "Delta* sandwich", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = run_survey(config);
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return sandwich(config, rows, s);
  });
  report(5, "partition certificate", [&] { return partition_certificate(config, workers); });
  report(6, "exponent crossover and improvement interval", exponent_reproduction);
  report(7, "full-window law and box counters", box_counts);
  report(8, "kernel closed form", kernel_correctness);
  report(9, "survey determinism", [&] { return determinism(workers); });

  std::printf("%d/9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
