#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "oracles.h"
#include "powersieve/arith.h"
#include "powersieve/errors.h"
#include "powersieve/farey.h"

using namespace powersieve;

namespace {
Rational r(std::int64_t p, std::int64_t q) { return Rational::from_ints(p, q); }
}  // namespace

TEST_CASE("enumerate small families") {
  const FareyFamily one = enumerate(1, 1, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].value() == Rational(0));

  const FareyFamily cubes = enumerate(3, 2, 2);
  REQUIRE(cubes.size() == 4);
  CHECK(cubes[0].value() == r(1, 8));
  CHECK(cubes[1].value() == r(3, 8));
  CHECK(cubes[2].value() == r(5, 8));
  CHECK(cubes[3].value() == r(7, 8));

  CHECK(enumerate(2, 2, 4).size() == 16);
}

TEST_CASE("cardinality matches the naive enumeration") {
  for (int k = 1; k <= 3; ++k)
    for (std::int64_t lo = 2; lo <= 6; ++lo)
      for (std::int64_t hi = lo; hi <= 9; ++hi) {
        const auto naive = oracle::power_farey(k, lo, hi);
        CHECK(enumerate(k, lo, hi).size() == naive.size());
        CHECK(predicted_cardinality(k, lo, hi) == naive.size());
      }
}

TEST_CASE("family is sorted by circle value and symmetric") {
  const FareyFamily f = enumerate(2, 3, 7);
  CHECK(std::is_sorted(f.points().begin(), f.points().end(), value_less));
  CHECK(f.symmetric());
}

TEST_CASE("enumerate respects the family-size budget") {
  Budgets b;
  b.max_family_size = 10;
  CHECK_THROWS_AS(enumerate(2, 2, 4, b), ResourceLimitError);
  try {
    enumerate(2, 2, 4, b);
  } catch (const ResourceLimitError& e) {
    CHECK(e.predicted() == 16);
  }
}

TEST_CASE("min_spacing examples") {
  CHECK(min_spacing(enumerate(3, 2, 2)) == r(1, 4));
  CHECK(min_spacing(enumerate(2, 2, 4)) == r(1, 144));
  CHECK_THROWS_AS(min_spacing(enumerate(1, 1, 1)), std::domain_error);
}

TEST_CASE("min_spacing agrees with a pairwise scan and respects the floor") {
  for (int k = 1; k <= 3; ++k)
    for (std::int64_t q = 2; q <= 6; ++q) {
      const auto pts = oracle::power_farey(k, q, 2 * q);
      oracle::Frac best{1, 2};
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
          const auto g = oracle::circle_gap(pts[i], pts[j]);
          if (static_cast<__int128>(g.num) * best.den <
              static_cast<__int128>(best.num) * g.den)
            best = g;
        }
      const Rational got = min_spacing(enumerate(k, q, 2 * q));
      CHECK(got == r(best.num, best.den));
      CHECK(got >= r(1, oracle::ipow(2 * q, 2 * k)));
    }
}

TEST_CASE("close_count examples") {
  const FareyFamily f = enumerate(2, 2, 4);
  const FareyPoint x = make_point(7, 4, 2);
  CHECK(close_count(f, x, r(1, 100)) == 2);
  CHECK(close_count(f, x, r(1, 144)) == 1);
  CHECK(close_count(f, x, Rational(1)) == static_cast<std::int64_t>(f.size()));
  CHECK_THROWS_AS(close_count(f, make_point(1, 5, 2), r(1, 10)),
                  std::invalid_argument);
}

TEST_CASE("max_close_count examples") {
  const FareyFamily f = enumerate(2, 2, 4);
  const SpacingReport rep = max_close_count(f, 50);
  CHECK(rep.max_close_count == 2);
  CHECK(rep.min_gap == r(1, 144));
  CHECK(brute_force_max_close_count(f, 50) == 2);
  CHECK(max_close_count(f, oracle::ipow(8, 4) / 2).max_close_count == 1);

  const FareyFamily one = enumerate(1, 1, 1);
  CHECK(max_close_count(one, 3).max_close_count == 1);
  CHECK(brute_force_max_close_count(one, 3) == 1);
  CHECK_THROWS_AS(max_close_count(FareyFamily(), 3), std::domain_error);
}

TEST_CASE("sweep, library brute force and test oracle agree on random instances") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    const int k = 1 + static_cast<int>(rng() % 3);
    const std::int64_t hi = 2 + static_cast<std::int64_t>(rng() % 11);
    const std::int64_t lo = 1 + static_cast<std::int64_t>(rng() % hi);
    const auto pts = oracle::power_farey(k, lo, hi);
    if (pts.size() > 1500) continue;
    const std::int64_t n =
        1 + static_cast<std::int64_t>(rng() % (4 * oracle::ipow(hi, k) + 1));
    const FareyFamily f = enumerate(k, lo, hi);
    const std::int64_t sweep = max_close_count(f, n).max_close_count;
    CAPTURE(k);
    CAPTURE(lo);
    CAPTURE(hi);
    CAPTURE(n);
    CHECK(sweep == brute_force_max_close_count(f, n, {}, 2));
    CHECK(sweep == oracle::max_close(pts, n));
  }
}

TEST_CASE("M is non-increasing in N") {
  const FareyFamily f = enumerate(2, 3, 6);
  std::int64_t prev = max_close_count(f, 1).max_close_count;
  CHECK(prev == static_cast<std::int64_t>(f.size()));
  for (std::int64_t n = 2; n < 5000; n = n * 3 / 2 + 1) {
    const std::int64_t m = max_close_count(f, n).max_close_count;
    CHECK(m <= prev);
    prev = m;
  }
}

TEST_CASE("family CSV and spacing JSON") {
  const std::string csv = family_csv(enumerate(3, 2, 2));
  CHECK(csv.rfind("k,q,a,value\n", 0) == 0);
  CHECK(csv.find("3,2,1,1/8\n") != std::string::npos);
  const std::string json = spacing_report_json(max_close_count(enumerate(2, 2, 4), 50));
  CHECK(json.find("\"min_gap\"") != std::string::npos);
  CHECK(json.find("\"m_value\"") != std::string::npos);
  CHECK(json.find("\"argmax\"") != std::string::npos);
}
