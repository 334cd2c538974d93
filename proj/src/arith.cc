#include "powersieve/arith.h"

#include <algorithm>

namespace powersieve {

std::optional<std::uint64_t> checked_pow(std::uint64_t q, int k,
                                         std::uint64_t limit) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) {
    if (q != 0 && r > limit / q) return std::nullopt;
    r *= q;
  }
  if (r > limit) return std::nullopt;
  return r;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

int mobius(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 pos_mod(i128 a, i128 b) {
  i128 r = a % b;
  return r < 0 ? r + b : r;
}

}  // namespace powersieve
