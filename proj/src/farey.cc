#include "powersieve/farey.h"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "powersieve/arith.h"
#include "powersieve/errors.h"
#include "powersieve/parallel.h"

namespace powersieve {
namespace {

// Circular forward offset from x to y as a numerator over x.den * y.den.
i128 forward_offset_num(const FareyPoint& x, const FareyPoint& y, bool wrap) {
  const i128 d = static_cast<i128>(y.num) * x.den -
                 static_cast<i128>(x.num) * y.den;
  return wrap ? d + static_cast<i128>(x.den) * y.den : d;
}

i128 common_den(const FareyPoint& x, const FareyPoint& y) {
  return static_cast<i128>(x.den) * y.den;
}

// offset_num / den < 1/(2n)
bool below_half_width(i128 offset_num, i128 den, std::int64_t n) {
  return offset_num * (2 * static_cast<i128>(n)) < den;
}

void check_n(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (n > (std::int64_t{1} << 62))
    throw std::invalid_argument("n exceeds 2^62");
}

}  // namespace

bool value_less(const FareyPoint& x, const FareyPoint& y) {
  return static_cast<i128>(x.num) * y.den < static_cast<i128>(y.num) * x.den;
}

FareyPoint make_point(std::int64_t a, std::int64_t q, int k) {
  if (q < 1 || k < 1) throw std::invalid_argument("point: need q >= 1, k >= 1");
  if (q == 1) {
    if (a != 1) throw std::invalid_argument("point: q = 1 admits only a = 1");
    return FareyPoint{1, 1, k, 0, 1};
  }
  const auto m = checked_pow(static_cast<std::uint64_t>(q), k,
                             std::uint64_t{1} << 62);
  if (!m) throw std::invalid_argument("point: q^k too large");
  if (a < 1 || static_cast<std::uint64_t>(a) >= *m)
    throw std::invalid_argument("point: need 1 <= a < q^k");
  if (std::gcd(a, q) != 1) throw std::invalid_argument("point: gcd(a, q) != 1");
  return FareyPoint{a, q, k, a, static_cast<std::int64_t>(*m)};
}

FareyFamily::FareyFamily(int k, std::int64_t q_min, std::int64_t q_max,
                         std::vector<FareyPoint> points)
    : k_(k), q_min_(q_min), q_max_(q_max), points_(std::move(points)) {
  std::sort(points_.begin(), points_.end(), value_less);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!value_less(points_[i - 1], points_[i]))
      throw std::logic_error("family: two points share a circle value");
  }
}

FareyFamily FareyFamily::from_points(int k, std::vector<FareyPoint> points) {
  std::int64_t lo = 1, hi = 1;
  if (!points.empty()) {
    lo = points.front().q;
    hi = points.front().q;
    for (const auto& p : points) {
      lo = std::min(lo, p.q);
      hi = std::max(hi, p.q);
    }
  }
  return FareyFamily(k, lo, hi, std::move(points));
}

std::optional<std::size_t> FareyFamily::index_of(const FareyPoint& x) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), x, value_less);
  if (it == points_.end() || it->a != x.a || it->q != x.q || it->k != x.k)
    return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

bool FareyFamily::symmetric() const {
  const std::size_t s = points_.size();
  std::size_t lo = 0;
  if (s > 0 && points_[0].num == 0) lo = 1;
  for (std::size_t i = lo, j = s; i < s; ++i) {
    --j;
    // points_[i] + points_[j] must equal 1
    if (static_cast<i128>(points_[i].num) * points_[j].den +
            static_cast<i128>(points_[j].num) * points_[i].den !=
        static_cast<i128>(points_[i].den) * points_[j].den)
      return false;
  }
  return true;
}

std::uint64_t predicted_cardinality(int k, std::int64_t q_min,
                                    std::int64_t q_max) {
  std::uint64_t total = 0;
  for (std::int64_t q = q_min; q <= q_max; ++q) {
    const auto p = checked_pow(static_cast<std::uint64_t>(q), k - 1);
    const std::uint64_t phi = euler_phi(static_cast<std::uint64_t>(q));
    if (!p || *p > UINT64_MAX / phi || total > UINT64_MAX - *p * phi)
      return UINT64_MAX;
    total += *p * phi;
  }
  return total;
}

FareyFamily enumerate(int k, std::int64_t q_min, std::int64_t q_max,
                      const Budgets& budgets) {
  if (k < 1) throw std::invalid_argument("enumerate: k must be >= 1");
  if (q_min < 1 || q_min > q_max)
    throw std::invalid_argument("enumerate: need 1 <= q_min <= q_max");
  const std::uint64_t predicted = predicted_cardinality(k, q_min, q_max);
  if (predicted > budgets.max_family_size) {
    throw ResourceLimitError("enumerate: predicted family size " +
                                 std::to_string(predicted) +
                                 " exceeds budget " +
                                 std::to_string(budgets.max_family_size),
                             predicted);
  }
  const auto top = checked_pow(static_cast<std::uint64_t>(q_max), k,
                               budgets.max_power_denominator);
  if (!top) {
    throw ResourceLimitError(
        "enumerate: q_max^k exceeds the exact-arithmetic limit " +
            std::to_string(budgets.max_power_denominator),
        predicted);
  }

  std::vector<FareyPoint> points;
  points.reserve(predicted);
  for (std::int64_t q = q_min; q <= q_max; ++q) {
    if (q == 1) {
      points.push_back(FareyPoint{1, 1, k, 0, 1});
      continue;
    }
    const auto m = static_cast<std::int64_t>(
        *checked_pow(static_cast<std::uint64_t>(q), k));
    for (std::int64_t a = 1; a < m; ++a) {
      if (std::gcd(a, q) == 1) points.push_back(FareyPoint{a, q, k, a, m});
    }
  }
  if (points.size() != predicted)
    throw std::logic_error("enumerate: cardinality mismatch");
  FareyFamily family(k, q_min, q_max, std::move(points));
  family.complete_ = true;
  return family;
}

Rational min_spacing(const FareyFamily& family) {
  const auto& pts = family.points();
  if (pts.size() < 2)
    throw std::domain_error("min_spacing: family needs at least two points");
  i128 best_num = -1, best_den = 1;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::size_t j = (i + 1) % pts.size();
    i128 num = forward_offset_num(pts[i], pts[j], j == 0);
    i128 den = common_den(pts[i], pts[j]);
    // Adjacent gaps sum to 1, so only the wraparound or a lone pair can
    // exceed 1/2; use the circle distance.
    if (2 * num > den) num = den - num;
    if (best_num < 0 || num * best_den < best_num * den) {
      best_num = num;
      best_den = den;
    }
  }
  return Rational::from_ints(static_cast<std::int64_t>(best_num),
                             static_cast<std::int64_t>(best_den));
}

std::int64_t close_count(const FareyFamily& family, const FareyPoint& x,
                         const Rational& threshold) {
  if (threshold.sign() <= 0)
    throw std::invalid_argument("close_count: threshold must be positive");
  const auto idx = family.index_of(x);
  if (!idx) throw std::invalid_argument("close_count: point not in family");
  const auto& pts = family.points();
  const std::size_t s = pts.size();
  const Rational half = Rational::from_ints(1, 2);
  if (threshold > half) return static_cast<std::int64_t>(s);

  const Rational xv = x.value();
  const std::size_t i = *idx;
  // Forward: offsets from x to pts[i + c] increase with c.
  auto fwd_offset = [&](std::size_t c) {
    const std::size_t j = (i + c) % s;
    Rational d = pts[j].value() - xv;
    if (i + c >= s) d = d + Rational(1);
    return d;
  };
  auto bwd_offset = [&](std::size_t c) {
    const std::size_t j = (i + s - c) % s;
    Rational d = xv - pts[j].value();
    if (c > i) d = d + Rational(1);
    return d;
  };
  // Largest c in [0, s) with offset(c) < threshold; offset(0) = 0.
  auto count_below = [&](auto offset) {
    std::size_t lo = 0, hi = s;  // offset(lo) < t, first failing in (lo, hi]
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (offset(mid) < threshold)
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  };
  const std::size_t forward = count_below(fwd_offset) + 1;
  const std::size_t backward = count_below(bwd_offset);
  return static_cast<std::int64_t>(std::min(s, forward + backward));
}

SpacingReport max_close_count(const FareyFamily& family, std::int64_t n) {
  check_n(n);
  const auto& pts = family.points();
  const std::size_t s = pts.size();
  if (s == 0) throw std::domain_error("max_close_count: empty family");

  SpacingReport report;
  report.min_gap = s >= 2 ? min_spacing(family) : Rational(1);

  // Unrolled index u >= i covers pts[u mod s] shifted by +1 past the end.
  auto fwd_ok = [&](std::size_t i, std::size_t u) {
    const FareyPoint& y = pts[u % s];
    return below_half_width(forward_offset_num(pts[i], y, u >= s),
                            common_den(pts[i], y), n);
  };
  // Backward steps c = i - u for u in (i - s, i].
  auto bwd_ok = [&](std::size_t i, std::size_t c) {
    const FareyPoint& y = pts[(i + s - c) % s];
    return below_half_width(forward_offset_num(y, pts[i], c > i),
                            common_den(pts[i], y), n);
  };

  // Both windows only move right as i advances.
  std::size_t end = 0;         // first failing unrolled index, forward
  std::size_t back_start = 0;  // first passing index in (i, i + s], shifted
  std::int64_t best = -1;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < s; ++i) {
    end = std::max(end, i + 1);
    while (end < i + s && fwd_ok(i, end)) ++end;
    back_start = std::max(back_start, i + 1);
    while (back_start < i + s && !bwd_ok(i, i + s - back_start)) ++back_start;
    const std::size_t forward = end - i;
    const std::size_t backward = i + s - back_start;
    const auto count =
        static_cast<std::int64_t>(std::min(s, forward + backward));
    if (count > best) {
      best = count;
      best_i = i;
    }
  }
  report.max_close_count = best;
  report.argmax_point = pts[best_i];
  return report;
}

std::int64_t brute_force_max_close_count(const FareyFamily& family,
                                         std::int64_t n,
                                         const Budgets& budgets,
                                         unsigned workers) {
  check_n(n);
  const auto& pts = family.points();
  const std::size_t s = pts.size();
  if (s == 0) throw std::domain_error("brute_force: empty family");
  const std::uint64_t pairs = static_cast<std::uint64_t>(s) * s;
  if (pairs > budgets.max_pair_checks) {
    throw ResourceLimitError("brute_force: " + std::to_string(pairs) +
                                 " pair checks exceed budget",
                             pairs);
  }
  const i128 two_n = 2 * static_cast<i128>(n);
  std::vector<std::int64_t> chunk_best(std::max(1u, workers), 0);
  parallel_chunks(s, workers, [&](std::size_t b, std::size_t e, unsigned c) {
    std::int64_t local = 0;
    for (std::size_t i = b; i < e; ++i) {
      std::int64_t count = 0;
      for (std::size_t j = 0; j < s; ++j) {
        const i128 den = static_cast<i128>(pts[i].den) * pts[j].den;
        i128 diff = static_cast<i128>(pts[i].num) * pts[j].den -
                    static_cast<i128>(pts[j].num) * pts[i].den;
        if (diff < 0) diff = -diff;
        const i128 dist = std::min(diff, den - diff);
        if (dist * two_n < den) ++count;
      }
      local = std::max(local, count);
    }
    chunk_best[c] = local;
  });
  return *std::max_element(chunk_best.begin(), chunk_best.end());
}

std::string family_csv(const FareyFamily& family) {
  std::ostringstream out;
  out << "k,q,a,value\n";
  for (const auto& p : family.points()) {
    out << p.k << ',' << p.q << ',' << p.a << ',' << p.num << '/' << p.den
        << '\n';
  }
  return out.str();
}

std::string spacing_report_json(const SpacingReport& report) {
  nlohmann::ordered_json j;
  j["min_gap"] = report.min_gap.to_string();
  j["m_value"] = report.max_close_count;
  j["argmax"] = {{"k", report.argmax_point.k},
                 {"q", report.argmax_point.q},
                 {"a", report.argmax_point.a}};
  return j.dump(2);
}

}  // namespace powersieve
