#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "powersieve/budget.h"
#include "powersieve/rational.h"

namespace powersieve {

// One fraction a/q^k. For q = 1 the single point 0 is stored as a = q = 1
// with value 0/1.
struct FareyPoint {
  std::int64_t a = 0;
  std::int64_t q = 0;
  int k = 1;
  // Reduced value num/den; den = q^k except for the point 0.
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational value() const { return Rational::from_ints(num, den); }
  friend bool operator==(const FareyPoint&, const FareyPoint&) = default;
};

// Exact order on values, by 128-bit cross-multiplication.
bool value_less(const FareyPoint& x, const FareyPoint& y);

// All points a/q^k with q_min <= q <= q_max, gcd(a, q) = 1, 1 <= a < q^k,
// sorted ascending by value. Immutable once built.
class FareyFamily {
 public:
  FareyFamily() = default;
  FareyFamily(int k, std::int64_t q_min, std::int64_t q_max,
              std::vector<FareyPoint> points);

  int k() const { return k_; }
  std::int64_t q_min() const { return q_min_; }
  std::int64_t q_max() const { return q_max_; }
  const std::vector<FareyPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const FareyPoint& operator[](std::size_t i) const { return points_[i]; }

  // Index of x in the sorted point list, matched on (a, q, k).
  std::optional<std::size_t> index_of(const FareyPoint& x) const;

  // True when x -> -x (mod 1) maps the family onto itself. Holds for every
  // enumerated family.
  bool symmetric() const;
  // True when the family is a union of complete reduced residue systems
  // mod q^k, one per q in [q_min, q_max] (what enumerate() produces).
  bool complete() const { return complete_; }

  // Builds a family from arbitrary points (tests, hand-built instances).
  static FareyFamily from_points(int k, std::vector<FareyPoint> points);

 private:
  int k_ = 1;
  std::int64_t q_min_ = 1;
  std::int64_t q_max_ = 1;
  std::vector<FareyPoint> points_;
  bool complete_ = false;
  friend FareyFamily enumerate(int, std::int64_t, std::int64_t, const Budgets&);
};

struct SpacingReport {
  Rational min_gap;  // 1 for a single-point family (the whole circle)
  std::int64_t max_close_count = 0;
  FareyPoint argmax_point;
};

// Point a/q^k with validation of gcd(a, q) = 1 and 1 <= a < q^k.
FareyPoint make_point(std::int64_t a, std::int64_t q, int k);

// Sum over q in [q_min, q_max] of q^(k-1) * phi(q).
std::uint64_t predicted_cardinality(int k, std::int64_t q_min,
                                    std::int64_t q_max);

// Throws ResourceLimitError when the predicted cardinality or q_max^k
// exceeds the budget; std::invalid_argument on a bad range.
FareyFamily enumerate(int k, std::int64_t q_min, std::int64_t q_max,
                      const Budgets& budgets = {});

// Minimum circle distance over adjacent pairs, wraparound included.
// Throws std::domain_error for fewer than two points.
Rational min_spacing(const FareyFamily& family);

// #{y : ||x - y|| < threshold}, y = x included.
std::int64_t close_count(const FareyFamily& family, const FareyPoint& x,
                         const Rational& threshold);

// M(n) = max over x of close_count(x, 1/(2n)) by a two-pointer sweep over
// the circle. Ties resolve to the smallest value.
SpacingReport max_close_count(const FareyFamily& family, std::int64_t n);

// Same quantity by the full double loop; an independent oracle.
std::int64_t brute_force_max_close_count(const FareyFamily& family,
                                         std::int64_t n,
                                         const Budgets& budgets = {},
                                         unsigned workers = 1);

// CSV rows k,q,a,value with a header line.
std::string family_csv(const FareyFamily& family);
std::string spacing_report_json(const SpacingReport& report);

}  // namespace powersieve
