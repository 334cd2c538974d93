#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace powersieve {

using i128 = __int128;

// q^k, or nullopt when the result exceeds `limit`.
std::optional<std::uint64_t> checked_pow(std::uint64_t q, int k,
                                         std::uint64_t limit = UINT64_MAX);

std::uint64_t euler_phi(std::uint64_t n);
int mobius(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);

// Floor division and non-negative remainder for signed 128-bit values.
i128 floor_div(i128 a, i128 b);
i128 pos_mod(i128 a, i128 b);

}  // namespace powersieve
