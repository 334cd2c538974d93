#include "powersieve/partition.h"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "powersieve/arith.h"
#include "powersieve/parallel.h"

namespace powersieve {
namespace {

std::int64_t interval_of(const FareyPoint& x, std::int64_t n) {
  return static_cast<std::int64_t>(static_cast<i128>(x.num) * n / x.den);
}

// y - x >= 1/n for x <= y.
bool gap_at_least(const FareyPoint& x, const FareyPoint& y, std::int64_t n) {
  const i128 diff = static_cast<i128>(y.num) * x.den -
                    static_cast<i128>(x.num) * y.den;
  return diff * n >= static_cast<i128>(x.den) * y.den;
}

// 1 - (last - first) >= 1/n.
bool wrap_gap_at_least(const FareyPoint& first, const FareyPoint& last,
                       std::int64_t n) {
  const i128 dd = static_cast<i128>(first.den) * last.den;
  const i128 diff = static_cast<i128>(first.num) * last.den -
                    static_cast<i128>(last.num) * first.den + dd;
  return diff * n >= dd;
}

}  // namespace

namespace {

// Literal grid: even intervals form one class, odd intervals two classes
// cut at the largest circular gap; for odd n the interval-0 pick moves to
// the odd class without interval 1.
std::vector<std::vector<FareyPoint>> color_unit_width(
    const std::vector<std::pair<std::int64_t, FareyPoint>>& picks,
    std::int64_t n) {
  std::vector<FareyPoint> even;
  std::vector<std::pair<std::int64_t, FareyPoint>> odd;
  std::optional<FareyPoint> first_pick;
  bool last_picked = false;
  for (const auto& [interval, x] : picks) {
    if (interval % 2 == 1) {
      odd.emplace_back(interval, x);
    } else if (interval == 0) {
      first_pick = x;
    } else {
      even.push_back(x);
    }
    if (interval == n - 1) last_picked = true;
  }
  const bool edge_clash = first_pick && n % 2 == 1 && n > 1 && last_picked;
  if (first_pick && !edge_clash) even.push_back(*first_pick);

  std::vector<FareyPoint> odd_a, odd_b;
  bool a_has_one = false;
  if (!odd.empty()) {
    std::size_t start = 0;
    std::int64_t widest = -1;
    for (std::size_t i = 0; i < odd.size(); ++i) {
      const std::int64_t prev = odd[(i + odd.size() - 1) % odd.size()].first;
      const std::int64_t gap = (odd[i].first - prev + n) % n;
      if (gap > widest) {
        widest = gap;
        start = i;
      }
    }
    const std::size_t half = (odd.size() + 1) / 2;
    for (std::size_t t = 0; t < odd.size(); ++t) {
      const auto& [interval, x] = odd[(start + t) % odd.size()];
      if (t < half) {
        odd_a.push_back(x);
        a_has_one = a_has_one || interval == 1;
      } else {
        odd_b.push_back(x);
      }
    }
  }
  if (edge_clash) (a_has_one ? odd_b : odd_a).push_back(*first_pick);
  return {std::move(even), std::move(odd_a), std::move(odd_b)};
}

// Colour of half-width interval j out of L: any three cyclically
// consecutive intervals get distinct colours.
int half_width_color(std::int64_t j, std::int64_t L) {
  if (L <= 2) return static_cast<int>(j);
  const std::int64_t r = L % 3;
  const std::int64_t tail = r == 0 ? 0 : (r == 1 ? 4 : 8);
  if (j < L - tail) return static_cast<int>(j % 3);
  return static_cast<int>((j - (L - tail)) % 4);
}

}  // namespace

SpacedPartition build_partition(const FareyFamily& family, std::int64_t n,
                                PartitionGrid grid) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  SpacedPartition p;
  p.family = family;
  p.n = n;
  p.grid = grid;
  if (family.empty()) return p;

  const std::int64_t intervals = grid == PartitionGrid::kHalfWidth ? 2 * n : n;
  // Occupied intervals in ascending order, each with its points ascending.
  struct Bucket {
    std::int64_t interval;
    std::vector<std::size_t> points;
  };
  std::vector<Bucket> buckets;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const std::int64_t j = interval_of(family[i], intervals);
    if (buckets.empty() || buckets.back().interval != j)
      buckets.push_back({j, {}});
    buckets.back().points.push_back(i);
  }
  std::size_t sweeps = 0;
  for (const auto& b : buckets) sweeps = std::max(sweeps, b.points.size());

  for (std::size_t s = 0; s < sweeps; ++s) {
    std::vector<std::pair<std::int64_t, FareyPoint>> picks;
    for (const auto& b : buckets)
      if (b.points.size() > s) picks.emplace_back(b.interval, family[b.points[s]]);

    std::vector<std::vector<FareyPoint>> classes;
    if (grid == PartitionGrid::kUnitWidth) {
      classes = color_unit_width(picks, n);
    } else {
      classes.resize(4);
      for (const auto& [interval, x] : picks)
        classes[half_width_color(interval, intervals)].push_back(x);
    }
    for (auto& cls : classes) {
      if (cls.empty()) continue;
      std::sort(cls.begin(), cls.end(), value_less);
      p.classes.push_back(std::move(cls));
    }
  }
  p.repetitions = static_cast<std::int64_t>(sweeps);
  return p;
}

PartitionCertificate verify_partition(const SpacedPartition& p) {
  PartitionCertificate cert;
  const FareyFamily& family = p.family;

  std::vector<char> used(family.size(), 0);
  for (const auto& cls : p.classes) {
    for (const FareyPoint& x : cls) {
      const auto idx = family.index_of(x);
      if (!idx) {
        cert.covers = false;
        cert.failure = "point not in family";
        cert.violating_point = x;
        break;
      }
      if (used[*idx]) {
        cert.covers = false;
        cert.failure = "point assigned twice";
        cert.violating_point = x;
        break;
      }
      used[*idx] = 1;
    }
    if (!cert.covers) break;
  }
  if (cert.covers) {
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (!used[i]) {
        cert.covers = false;
        cert.failure = "point not assigned";
        cert.violating_point = family[i];
        break;
      }
    }
  }

  for (const auto& cls : p.classes) {
    std::vector<FareyPoint> sorted = cls;
    std::sort(sorted.begin(), sorted.end(), value_less);
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
      if (!gap_at_least(sorted[i], sorted[i + 1], p.n)) {
        cert.violating_pair = std::make_pair(sorted[i], sorted[i + 1]);
        break;
      }
    }
    if (!cert.violating_pair && sorted.size() >= 2 &&
        !wrap_gap_at_least(sorted.front(), sorted.back(), p.n)) {
      cert.violating_pair = std::make_pair(sorted.back(), sorted.front());
    }
    if (cert.violating_pair) {
      cert.spaced = false;
      if (cert.failure.empty()) cert.failure = "class not 1/n-spaced";
      break;
    }
  }

  if (!family.empty()) {
    cert.m_value = max_close_count(family, p.n).max_close_count;
    if (p.repetitions > cert.m_value) {
      cert.repetitions_within_m = false;
      if (cert.failure.empty()) cert.failure = "repetitions exceed M";
    }
  }
  return cert;
}

double covering_bound(const SpacedPartition& p) {
  const PartitionCertificate cert = verify_partition(p);
  if (!cert.covers || !cert.spaced)
    throw std::invalid_argument("partition failed verification: " +
                                cert.failure);
  return 2.0 * static_cast<double>(p.n) * static_cast<double>(p.classes.size());
}

bool AssembledPartition::pass() const {
  return std::all_of(blocks.begin(), blocks.end(), [](const PartitionBlock& b) {
    return b.certificate.pass();
  });
}

std::vector<std::pair<std::int64_t, std::int64_t>> dyadic_blocks(
    std::int64_t q_min, std::int64_t q_max) {
  if (q_min < 1 || q_max < q_min)
    throw std::invalid_argument("need 1 <= q_min <= q_max");
  if (q_max <= 2 * q_min) return {{q_min, q_max}};
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t hi = q_max; hi >= q_min && hi >= 1;) {
    // (hi/2, hi] in integers, with hi = floor(q_max / 2^j).
    const std::int64_t lo = std::max(q_min, hi / 2 + 1);
    out.emplace_back(lo, hi);
    hi = hi / 2;
  }
  return out;
}

AssembledPartition assemble_partition(int k, std::int64_t q_min,
                                      std::int64_t q_max, std::int64_t n,
                                      PartitionGrid grid,
                                      const Budgets& budgets,
                                      unsigned workers) {
  AssembledPartition out;
  out.n = n;
  const auto ranges = dyadic_blocks(q_min, q_max);
  out.blocks.resize(ranges.size());
  parallel_chunks(ranges.size(), workers,
                  [&](std::size_t begin, std::size_t end, unsigned) {
                    for (std::size_t i = begin; i < end; ++i) {
                      PartitionBlock& b = out.blocks[i];
                      b.q_lo = ranges[i].first;
                      b.q_hi = ranges[i].second;
                      b.partition = build_partition(
                          enumerate(k, b.q_lo, b.q_hi, budgets), n, grid);
                      b.certificate = verify_partition(b.partition);
                    }
                  });
  for (const auto& b : out.blocks) out.total_classes += b.partition.classes.size();
  out.covering_bound =
      2.0 * static_cast<double>(n) * static_cast<double>(out.total_classes);
  return out;
}

std::string partition_json(const AssembledPartition& assembled) {
  nlohmann::ordered_json j;
  j["n"] = assembled.n;
  j["blocks"] = nlohmann::ordered_json::array();
  for (const auto& b : assembled.blocks) {
    nlohmann::ordered_json block;
    block["q_lo"] = b.q_lo;
    block["q_hi"] = b.q_hi;
    block["classes"] = b.partition.classes.size();
    block["repetitions"] = b.partition.repetitions;
    block["m_value"] = b.certificate.m_value;
    block["certified"] = b.certificate.pass();
    j["blocks"].push_back(block);
  }
  j["covering_bound"] = assembled.covering_bound;
  return j.dump(2);
}

}  // namespace powersieve
