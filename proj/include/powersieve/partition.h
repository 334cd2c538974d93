#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "powersieve/budget.h"
#include "powersieve/farey.h"

namespace powersieve {

// Interval grid swept by build_partition.
enum class PartitionGrid {
  // 2n intervals of width 1/(2n). Each holds at most M(n) points, so the
  // sweep count never exceeds M(n). Up to four classes per sweep.
  kHalfWidth,
  // n intervals of width 1/n. Up to three classes per sweep, but one
  // interval can hold up to 2 M(n) - 1 points.
  kUnitWidth,
};

// Family split into classes that are each 1/n-spaced modulo 1.
struct SpacedPartition {
  FareyFamily family;
  std::int64_t n = 1;
  PartitionGrid grid = PartitionGrid::kHalfWidth;
  std::vector<std::vector<FareyPoint>> classes;
  std::int64_t repetitions = 0;  // sweeps used
};

// Sweeps the grid, taking the smallest unassigned point of every occupied
// interval once per sweep; the picks of one sweep are split into classes
// by interval index. On the half-width grid, intervals whose cyclic
// indices differ by less than 3 get different classes.
SpacedPartition build_partition(const FareyFamily& family, std::int64_t n,
                                PartitionGrid grid = PartitionGrid::kHalfWidth);

struct PartitionCertificate {
  bool covers = true;      // disjoint classes whose union is the family
  bool spaced = true;      // every class is 1/n-spaced
  bool repetitions_within_m = true;
  std::int64_t m_value = 0;  // M(n) of the family
  std::string failure;       // empty on pass
  std::optional<std::pair<FareyPoint, FareyPoint>> violating_pair;
  std::optional<FareyPoint> violating_point;

  bool pass() const { return covers && spaced && repetitions_within_m; }
};

// Exact check of all three properties; reports the first failure found.
PartitionCertificate verify_partition(const SpacedPartition& p);

// 2 n (number of classes), an upper bound for Delta*(family, n). Throws
// std::invalid_argument unless the classes cover the family and are
// 1/n-spaced.
double covering_bound(const SpacedPartition& p);

struct PartitionBlock {
  std::int64_t q_lo = 0, q_hi = 0;
  SpacedPartition partition;
  PartitionCertificate certificate;
};

struct AssembledPartition {
  std::int64_t n = 1;
  std::vector<PartitionBlock> blocks;
  std::size_t total_classes = 0;
  double covering_bound = 0.0;

  bool pass() const;
};

// q-ranges for assembly. A range with q_max <= 2 q_min is one block;
// otherwise blocks (q_max/2^{j+1}, q_max/2^j] clipped to [q_min, q_max],
// largest q first.
std::vector<std::pair<std::int64_t, std::int64_t>> dyadic_blocks(
    std::int64_t q_min, std::int64_t q_max);

// Builds and verifies one partition per block and sums the class counts.
AssembledPartition assemble_partition(int k, std::int64_t q_min,
                                      std::int64_t q_max, std::int64_t n,
                                      PartitionGrid grid = PartitionGrid::kHalfWidth,
                                      const Budgets& budgets = {},
                                      unsigned workers = 1);

// {n, blocks: [{q_lo, q_hi, classes, repetitions, m_value, certified}],
//  covering_bound}
std::string partition_json(const AssembledPartition& assembled);

}  // namespace powersieve
