#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "powersieve/bounds.h"

using namespace powersieve;

namespace {

Rational r(std::int64_t p, std::int64_t q) { return Rational::from_ints(p, q); }

Rational rmax(std::initializer_list<Rational> xs) { return std::max(xs); }

// Exponent profiles written out by hand.
Rational new_exp(int k, const Rational& t) {
  return Rational(1) + r(1, k + 1) + t * (Rational(1) - r(1, k * (k + 1)));
}

Rational bz_exp(int k, const Rational& t) {
  return rmax({Rational(k + 1), t, Rational(k) + t * r(1, 2)});
}

// True when the new exponent is strictly below every comparator at t.
bool new_wins(int k, const Rational& t) {
  const Rational e = exponent(BoundId::kMunschNew, k, t);
  for (BoundId id : prior_bounds_for_comparison())
    if (!(e < exponent(id, k, t))) return false;
  return true;
}

}  // namespace

TEST_CASE("bound names round trip") {
  for (BoundId id : all_bounds()) CHECK(parse_bound(bound_name(id)) == id);
  CHECK(bound_name(BoundId::kBaierZhao) == "baier-zhao");
  CHECK_FALSE(parse_bound("nonsense").has_value());
}

TEST_CASE("exponent examples") {
  CHECK(exponent(BoundId::kMunschNew, 3, Rational(4)) == r(59, 12));
  CHECK(exponent(BoundId::kBaierZhao, 3, Rational(4)) == Rational(5));
  for (BoundId id : all_bounds())
    for (int k = 2; k <= 6; ++k)
      CHECK(exponent(id, k, Rational(0)).sign() >= 0);
}

TEST_CASE("hand-written profiles match the library") {
  for (int k = 2; k <= 12; ++k)
    for (int i = 0; i <= 4 * k; ++i) {
      const Rational t = Rational(k) + r(i, 4);
      CHECK(exponent(BoundId::kMunschNew, k, t) == new_exp(k, t));
      CHECK(exponent(BoundId::kBaierZhao, k, t) == bz_exp(k, t));
      CHECK(exponent(BoundId::kZhaoConjecture, k, t) == rmax({Rational(k + 1), t}));
    }
}

TEST_CASE("evaluate examples") {
  CHECK(evaluate(BoundId::kTrivial, 3, 10, 1e5, 0).value == doctest::Approx(1.01e6));
  CHECK(evaluate(BoundId::kZhaoConjecture, 3, 10, 1e6, 0).value ==
        doctest::Approx(1.01e6));
  CHECK(evaluate(BoundId::kMunschNew, 3, 10, 1e6, 0).value ==
        doctest::Approx(std::pow(10.0, 6.75)));
  CHECK_FALSE(evaluate(BoundId::kMunschNew, 3, 10, 1e6, 0).out_of_range);
  CHECK(evaluate(BoundId::kMunschNew, 3, 10, 1e7, 0).out_of_range);
  CHECK_THROWS_AS(evaluate(BoundId::kTrivial, 3, 0, 1e5, 0), std::invalid_argument);
}

TEST_CASE("range check is exact") {
  CHECK(new_bound_in_range(3, 10, 1000));
  CHECK(new_bound_in_range(3, 10, 1000000));
  CHECK_FALSE(new_bound_in_range(3, 10, 999));
  CHECK_FALSE(new_bound_in_range(3, 10, 1000001));
}

TEST_CASE("new versus Baier-Zhao crossover") {
  const CrossoverResult c = crossover(BoundId::kMunschNew, BoundId::kBaierZhao, 3);
  CHECK_FALSE(c.identical);
  CHECK(std::find(c.crossings.begin(), c.crossings.end(), r(21, 5)) != c.crossings.end());
  CHECK(c.crossings.back() == r(21, 5));
  for (int k = 3; k <= 12; ++k) {
    const Rational printed =
        Rational(2 * k - 2) + r(2 * (k - 2), k * k + k - 2);
    CHECK(new_vs_baier_zhao_endpoint_printed(k) == printed);
    CHECK(new_vs_baier_zhao_endpoint_solved(k) == printed);
    CHECK(new_exp(k, printed) == bz_exp(k, printed));
  }
}

TEST_CASE("identical profiles are reported as identical") {
  for (int k = 2; k <= 5; ++k) {
    const CrossoverResult c = crossover(BoundId::kTrivial, BoundId::kTrivial, k);
    CHECK(c.identical);
    CHECK(c.crossings.empty());
  }
}

TEST_CASE("crossover signs agree with pointwise comparison") {
  for (int k = 2; k <= 6; ++k)
    for (BoundId a : all_bounds())
      for (BoundId b : all_bounds()) {
        const CrossoverResult c = crossover(a, b, k);
        for (const SignedInterval& iv : c.intervals) {
          const Rational mid = (iv.lo + iv.hi) * r(1, 2);
          const Rational diff = exponent(a, k, mid) - exponent(b, k, mid);
          CHECK(diff.sign() == iv.sign);
        }
      }
}

TEST_CASE("improvement interval is empty at k = 3 and opens from k = 4") {
  const auto others = prior_bounds_for_comparison();
  CHECK(improvement_intervals(BoundId::kMunschNew, others, 3).empty());
  for (int k = 4; k <= 12; ++k) {
    const auto iv = improvement_intervals(BoundId::kMunschNew, others, k);
    CHECK_FALSE(iv.empty());
    for (const OpenInterval& o : iv) {
      CHECK(o.lo < o.hi);
      CHECK(new_wins(k, (o.lo + o.hi) * r(1, 2)));
    }
  }
  const auto four = improvement_intervals(BoundId::kMunschNew, others, 4);
  REQUIRE(four.size() == 1);
  CHECK(four[0].lo == r(17, 3));
  CHECK(four[0].hi == r(56, 9));
}

TEST_CASE("sampling finds no win at k = 3 and wins only inside the intervals") {
  for (int k = 3; k <= 6; ++k) {
    const auto iv = improvement_intervals(BoundId::kMunschNew,
                                          prior_bounds_for_comparison(), k);
    for (int i = 0; i <= 1000 * k; ++i) {
      const Rational t = Rational(k) + r(i, 1000);
      bool inside = false;
      for (const auto& o : iv) inside = inside || (o.lo < t && t < o.hi);
      CAPTURE(t.to_string());
      CHECK(new_wins(k, t) == inside);
    }
  }
}

TEST_CASE("dominant bound examples") {
  const Dominant d = dominant_bound(3, Rational(3) + r(1, 100), all_bounds());
  CHECK(d.exponent == Rational(4));
  CHECK(dominant_bound(3, Rational(6), all_bounds()).exponent ==
        exponent(BoundId::kTrivial, 3, Rational(6)));
  const Dominant mid = dominant_bound(4, r(6, 1), prior_bounds_for_comparison());
  CHECK(mid.exponent < exponent(BoundId::kBaierZhao, 4, Rational(6)));
  const std::vector<BoundId> with_new{BoundId::kTrivial, BoundId::kBaierZhao,
                                      BoundId::kHalupczokDelta,
                                      BoundId::kHalupczokAk,
                                      BoundId::kHalupczok2k, BoundId::kMunschNew};
  CHECK(dominant_bound(4, Rational(6), with_new).id == BoundId::kMunschNew);
}

TEST_CASE("regime map tiles the range") {
  const auto segs = regime_map(4, all_bounds(), Rational(4), Rational(8));
  REQUIRE_FALSE(segs.empty());
  CHECK(segs.front().lo == Rational(4));
  CHECK(segs.back().hi == Rational(8));
  for (std::size_t i = 1; i < segs.size(); ++i) CHECK(segs[i].lo == segs[i - 1].hi);
  for (const auto& s : segs) {
    const Rational mid = (s.lo + s.hi) * r(1, 2);
    CHECK(s.expression.at(mid) == dominant_bound(4, mid, all_bounds()).exponent);
  }
  CHECK(regime_map_csv(4, segs).rfind("k,theta_lo,theta_hi,winner_id,exponent_expression\n", 0) == 0);
}

TEST_CASE("numeric values track the exponents") {
  for (BoundId id : proven_bounds())
    for (int k = 2; k <= 4; ++k)
      for (int i = 0; i <= 2 * k; ++i) {
        const Rational t = Rational(k) + r(i, 2);
        const double Q = 1e4;
        const double N = std::pow(Q, t.to_double());
        if (!std::isfinite(N) || N > 1e300) continue;
        const BoundValue v = evaluate(id, k, Q, N, 0);
        const double got = std::log(v.dominant_term) / std::log(Q);
        CAPTURE(bound_name(id));
        CHECK(std::abs(got - exponent(id, k, t).to_double()) < 0.05);
        CHECK(v.value >= v.dominant_term * (1 - 1e-12));
      }
}
