#pragma once

#include <cstdint>

namespace powersieve {

// Size and work limits shared by every module. Defaults are desk-scale;
// from_env() applies POWERSIEVE_BUDGET_* overrides.
struct Budgets {
  std::uint64_t max_family_size = 2'000'000;
  // Largest q^k allowed; keeps all exact cross-products inside 128 bits.
  std::uint64_t max_power_denominator = std::uint64_t{1} << 31;
  // Pair checks allowed for the O(|S|^2) oracles.
  std::uint64_t max_pair_checks = 400'000'000;
  // x-range length allowed for box counting.
  std::uint64_t max_box_width = 50'000'000;
  // Largest matrix handed to the dense Hermitian eigensolver.
  std::uint64_t max_dense_eigen = 400;
  // Bytes for a materialized Gram matrix.
  std::uint64_t max_matrix_bytes = std::uint64_t{256} << 20;
  // Operator dimension for iterative solves.
  std::uint64_t max_operator_dim = std::uint64_t{1} << 22;

  static Budgets from_env();
};

}  // namespace powersieve
