#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "powersieve/budget.h"
#include "powersieve/farey.h"

namespace powersieve {

// f(x) = coefficients[0] + coefficients[1] x + ... modulo m.
struct PolySpec {
  std::vector<std::int64_t> coefficients;
  std::int64_t modulus = 1;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  std::int64_t leading() const { return coefficients.back(); }
  // f(x) mod m in [0, m), Horner with reduction at every step.
  std::int64_t eval_mod(std::int64_t x) const;
  // Throws std::invalid_argument unless degree >= 2 and the leading
  // coefficient is coprime to m.
  void validate() const;

  // a * x^k mod m.
  static PolySpec monomial(std::int64_t a, int k, std::int64_t m);
};

// Box [K+1, K+H] x [L+1, L+R].
struct BoxSpec {
  std::int64_t K = 0;
  std::int64_t H = 1;
  std::int64_t L = 0;
  std::int64_t R = 1;
};

struct BoxCount {
  std::int64_t count = 0;
  double bound_value = 0.0;
  double ratio = 0.0;
};

// k(k+1)/2, or the older admissible k(k+1) when `legacy` is set.
// Throws std::invalid_argument for k < 2.
std::int64_t j_constant(int k, bool legacy = false);

// H((R/m)^{1/j} + (R/H^k)^{1/(2j)}) with the epsilon dropped.
double box_bound(int k, std::int64_t m, std::int64_t H, std::int64_t R,
                 bool legacy_j = false);

// #{(x, y) in the box : f(x) = y (mod m)}; per x the residue class of f(x)
// is counted in closed form inside the y-window.
BoxCount count_box_solutions(const PolySpec& poly, const BoxSpec& box,
                             const Budgets& budgets = {});

// Histogram of f(x) mod m over the x-range, then a pass over the y-range.
std::int64_t count_box_solutions_hashed(const PolySpec& poly,
                                        const BoxSpec& box,
                                        const Budgets& budgets = {});

// Every (x, y) pair tested directly; O(H R).
std::int64_t count_box_solutions_naive(const PolySpec& poly,
                                       const BoxSpec& box,
                                       const Budgets& budgets = {});

// Pairs (b, r), q_min <= r <= q_max, 1 <= b < r^k, with
// ||a/q^k - b/r^k|| < 1/(2n), found through the congruence
// z = a r^k (mod q^k) with 2n|z| < q^k r^k. With require_coprime the pair
// must also satisfy gcd(b, r) = 1.
std::int64_t count_close_pairs_via_congruence(const FareyPoint& x,
                                              std::int64_t q_min,
                                              std::int64_t q_max,
                                              std::int64_t n,
                                              bool require_coprime);

struct BoxSurveyRow {
  int k = 0;
  std::int64_t m = 0;
  BoxSpec box;
  BoxCount result;
};

// Random monomial/polynomial instances with m <= max_modulus.
std::vector<BoxSurveyRow> box_survey(int k, int instances,
                                     std::int64_t max_modulus,
                                     std::uint64_t seed);
std::string box_survey_csv(const std::vector<BoxSurveyRow>& rows);

}  // namespace powersieve
