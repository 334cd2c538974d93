#include <doctest.h>

#include <set>
#include <stdexcept>

#include "oracles.h"
#include "powersieve/partition.h"
#include "powersieve/sieve_operator.h"

using namespace powersieve;

namespace {

// Exact 1/n spacing of one class, checked over all pairs.
bool class_spaced(const std::vector<FareyPoint>& cls, std::int64_t n) {
  for (std::size_t i = 0; i < cls.size(); ++i)
    for (std::size_t j = i + 1; j < cls.size(); ++j) {
      const auto g = oracle::circle_gap({cls[i].num, cls[i].den}, {cls[j].num, cls[j].den});
      if (static_cast<__int128>(g.num) * n < g.den) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("single point gives one class and one sweep") {
  const SpacedPartition p = build_partition(enumerate(1, 1, 1), 10);
  CHECK(p.classes.size() == 1);
  CHECK(p.repetitions == 1);
  CHECK(verify_partition(p).pass());
  CHECK(covering_bound(p) == doctest::Approx(20.0));
  CHECK(delta_star(enumerate(1, 1, 1), 10, 0).value <= 20.0);
}

TEST_CASE("n beyond the spacing floor needs one sweep") {
  const FareyFamily f = enumerate(2, 2, 4);
  const SpacedPartition p = build_partition(f, oracle::ipow(8, 4));
  CHECK(p.repetitions == 1);
  CHECK(p.classes.size() <= 4);
  CHECK(verify_partition(p).pass());
}

TEST_CASE("k = 2, q in [2, 4], n = 50") {
  const FareyFamily f = enumerate(2, 2, 4);
  const SpacedPartition p = build_partition(f, 50);
  const PartitionCertificate c = verify_partition(p);
  CHECK(c.pass());
  CHECK(c.m_value == 2);
  CHECK(p.repetitions <= 2);
  for (const auto& cls : p.classes) CHECK(class_spaced(cls, 50));
  const double cover = covering_bound(build_partition(f, 10));
  CHECK(cover >= delta_star(f, 10, 0).value);
}

TEST_CASE("merged close points are rejected with the offending pair") {
  const FareyPoint a = make_point(7, 4, 2);
  const FareyPoint b = make_point(4, 3, 2);
  SpacedPartition p;
  p.family = FareyFamily::from_points(2, {a, b});
  p.n = 100;
  p.classes = {{a, b}};
  p.repetitions = 1;
  const PartitionCertificate c = verify_partition(p);
  CHECK_FALSE(c.pass());
  CHECK_FALSE(c.spaced);
  REQUIRE(c.violating_pair.has_value());
  const std::set<Rational> got{c.violating_pair->first.value(),
                               c.violating_pair->second.value()};
  CHECK(got == std::set<Rational>{a.value(), b.value()});
  CHECK_THROWS_AS(covering_bound(p), std::invalid_argument);
}

TEST_CASE("a missing point breaks coverage") {
  const FareyFamily f = enumerate(2, 2, 3);
  SpacedPartition p = build_partition(f, 5);
  for (auto& cls : p.classes)
    if (!cls.empty()) {
      cls.pop_back();
      break;
    }
  const PartitionCertificate c = verify_partition(p);
  CHECK_FALSE(c.covers);
  CHECK(c.violating_point.has_value());
}

TEST_CASE("empty family passes trivially") {
  const SpacedPartition p = build_partition(FareyFamily(), 5);
  CHECK(p.classes.empty());
  CHECK(verify_partition(p).pass());
}

TEST_CASE("two antipodal points") {
  const FareyFamily f = FareyFamily::from_points(1, {make_point(1, 1, 1), make_point(1, 2, 1)});
  SpacedPartition p;
  p.family = f;
  p.n = 2;
  p.classes = {f.points()};
  p.repetitions = 1;
  REQUIRE(verify_partition(p).pass());
  CHECK(covering_bound(p) == doctest::Approx(4.0));
  CHECK(delta_star(f, 2, 0).value <= 4.0);
}

TEST_CASE("half-width partitions certify with sweeps bounded by M") {
  for (int k = 1; k <= 3; ++k)
    for (std::int64_t q = 2; q <= 6; ++q) {
      const FareyFamily f = enumerate(k, q, 2 * q);
      for (std::int64_t n = 1; n <= oracle::ipow(2 * q, 2 * k); n = n * 5 / 2 + 1) {
        const SpacedPartition p = build_partition(f, n);
        const PartitionCertificate c = verify_partition(p);
        CAPTURE(k);
        CAPTURE(q);
        CAPTURE(n);
        CHECK(c.pass());
        CHECK(p.repetitions <= c.m_value);
        CHECK(p.classes.size() <= static_cast<std::size_t>(4 * p.repetitions));
      }
    }
}

TEST_CASE("unit-width partitions stay spaced but may exceed M") {
  const FareyFamily f = enumerate(2, 4, 8);
  const SpacedPartition p = build_partition(f, 16, PartitionGrid::kUnitWidth);
  const PartitionCertificate c = verify_partition(p);
  CHECK(c.covers);
  CHECK(c.spaced);
  CHECK(c.m_value == 8);
  CHECK(p.repetitions == 9);
  CHECK_FALSE(c.repetitions_within_m);
}

TEST_CASE("dyadic blocks") {
  using Blocks = std::vector<std::pair<std::int64_t, std::int64_t>>;
  CHECK(dyadic_blocks(4, 8) == Blocks{{4, 8}});
  CHECK(dyadic_blocks(1, 8) == Blocks{{5, 8}, {3, 4}, {2, 2}, {1, 1}});
  const AssembledPartition a = assemble_partition(2, 1, 8, 40);
  CHECK(a.pass());
  std::size_t points = 0, classes = 0;
  for (const auto& b : a.blocks) {
    points += b.partition.family.size();
    classes += b.partition.classes.size();
  }
  CHECK(points == enumerate(2, 1, 8).size());
  CHECK(classes == a.total_classes);
  CHECK(a.covering_bound == doctest::Approx(2.0 * 40 * classes));
  CHECK(partition_json(a).find("\"covering_bound\"") != std::string::npos);
}
