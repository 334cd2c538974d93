#include "powersieve/budget.h"

#include <cstdlib>
#include <string>

namespace powersieve {
namespace {

void override_from(const char* name, std::uint64_t& field) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  try {
    field = std::stoull(raw);
  } catch (const std::exception&) {
    // Malformed overrides are ignored; the default stays in force.
  }
}

}  // namespace

Budgets Budgets::from_env() {
  Budgets b;
  override_from("POWERSIEVE_BUDGET_FAMILY", b.max_family_size);
  override_from("POWERSIEVE_BUDGET_POWER_DENOMINATOR", b.max_power_denominator);
  override_from("POWERSIEVE_BUDGET_PAIRS", b.max_pair_checks);
  override_from("POWERSIEVE_BUDGET_BOX", b.max_box_width);
  override_from("POWERSIEVE_BUDGET_DENSE", b.max_dense_eigen);
  override_from("POWERSIEVE_BUDGET_MATRIX_BYTES", b.max_matrix_bytes);
  override_from("POWERSIEVE_BUDGET_OPERATOR_DIM", b.max_operator_dim);
  return b;
}

}  // namespace powersieve
