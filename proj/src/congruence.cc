#include "powersieve/congruence.h"

#include <cmath>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "powersieve/arith.h"
#include "powersieve/errors.h"

namespace powersieve {
namespace {

void check_box(const PolySpec& poly, const BoxSpec& box,
               const Budgets& budgets) {
  poly.validate();
  if (box.H < 1 || box.H > poly.modulus || box.R < 1 || box.R > poly.modulus)
    throw std::invalid_argument("box: need 1 <= H, R <= m");
  if (static_cast<std::uint64_t>(box.H) > budgets.max_box_width) {
    throw ResourceLimitError("box: H = " + std::to_string(box.H) +
                                 " exceeds budget",
                             static_cast<std::uint64_t>(box.H));
  }
}

// Number of y in [lo, hi] with y = r (mod m).
std::int64_t residue_hits(i128 lo, i128 hi, i128 r, i128 m) {
  return static_cast<std::int64_t>(floor_div(hi - r, m) -
                                   floor_div(lo - 1 - r, m));
}

}  // namespace

std::int64_t PolySpec::eval_mod(std::int64_t x) const {
  const i128 m = modulus;
  const i128 xr = pos_mod(x, m);
  i128 acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
    acc = pos_mod(acc * xr + pos_mod(*it, m), m);
  return static_cast<std::int64_t>(acc);
}

void PolySpec::validate() const {
  if (modulus < 1) throw std::invalid_argument("poly: modulus must be >= 1");
  if (modulus > (std::int64_t{1} << 62))
    throw std::invalid_argument("poly: modulus exceeds 2^62");
  if (degree() < 2) throw std::invalid_argument("poly: degree must be >= 2");
  if (std::gcd(leading(), modulus) != 1)
    throw std::invalid_argument(
        "poly: leading coefficient shares a factor with the modulus");
}

PolySpec PolySpec::monomial(std::int64_t a, int k, std::int64_t m) {
  PolySpec p;
  p.coefficients.assign(static_cast<std::size_t>(k) + 1, 0);
  p.coefficients.back() = a;
  p.modulus = m;
  return p;
}

std::int64_t j_constant(int k, bool legacy) {
  if (k < 2) throw std::invalid_argument("j_constant: k must be >= 2");
  const std::int64_t kk = k;
  return legacy ? kk * (kk + 1) : kk * (kk + 1) / 2;
}

double box_bound(int k, std::int64_t m, std::int64_t H, std::int64_t R,
                 bool legacy_j) {
  const double j = static_cast<double>(j_constant(k, legacy_j));
  const double h = static_cast<double>(H);
  const double r = static_cast<double>(R);
  const double first = std::pow(r / static_cast<double>(m), 1.0 / j);
  const double second = std::exp((std::log(r) - k * std::log(h)) / (2.0 * j));
  return h * (first + second);
}

BoxCount count_box_solutions(const PolySpec& poly, const BoxSpec& box,
                             const Budgets& budgets) {
  check_box(poly, box, budgets);
  const i128 m = poly.modulus;
  const i128 lo = static_cast<i128>(box.L) + 1;
  const i128 hi = static_cast<i128>(box.L) + box.R;
  std::int64_t count = 0;
  for (std::int64_t x = box.K + 1; x <= box.K + box.H; ++x)
    count += residue_hits(lo, hi, poly.eval_mod(x), m);
  BoxCount out;
  out.count = count;
  out.bound_value = box_bound(poly.degree(), poly.modulus, box.H, box.R);
  out.ratio = static_cast<double>(count) / out.bound_value;
  return out;
}

std::int64_t count_box_solutions_hashed(const PolySpec& poly,
                                        const BoxSpec& box,
                                        const Budgets& budgets) {
  check_box(poly, box, budgets);
  std::unordered_map<std::int64_t, std::int64_t> hits;
  hits.reserve(static_cast<std::size_t>(box.H) * 2);
  for (std::int64_t x = box.K + 1; x <= box.K + box.H; ++x)
    ++hits[poly.eval_mod(x)];
  std::int64_t count = 0;
  for (std::int64_t y = box.L + 1; y <= box.L + box.R; ++y) {
    auto it = hits.find(static_cast<std::int64_t>(pos_mod(y, poly.modulus)));
    if (it != hits.end()) count += it->second;
  }
  return count;
}

std::int64_t count_box_solutions_naive(const PolySpec& poly,
                                       const BoxSpec& box,
                                       const Budgets& budgets) {
  check_box(poly, box, budgets);
  const std::uint64_t work = static_cast<std::uint64_t>(box.H) *
                             static_cast<std::uint64_t>(box.R);
  if (work > budgets.max_pair_checks)
    throw ResourceLimitError("box: naive double loop over budget", work);
  std::int64_t count = 0;
  for (std::int64_t x = box.K + 1; x <= box.K + box.H; ++x) {
    const i128 fx = poly.eval_mod(x);
    for (std::int64_t y = box.L + 1; y <= box.L + box.R; ++y) {
      if (pos_mod(fx - y, poly.modulus) == 0) ++count;
    }
  }
  return count;
}

std::int64_t count_close_pairs_via_congruence(const FareyPoint& x,
                                              std::int64_t q_min,
                                              std::int64_t q_max,
                                              std::int64_t n,
                                              bool require_coprime) {
  if (std::gcd(x.a, x.q) != 1)
    throw std::invalid_argument("congruence: gcd(a, q) != 1");
  if (n < 1) throw std::invalid_argument("congruence: n must be >= 1");
  if (q_min < 1 || q_min > q_max)
    throw std::invalid_argument("congruence: bad r-range");

  // The point 0 (q = 1) is represented as 0/1, i.e. a = 0 modulo 1.
  const i128 a = x.q == 1 ? 0 : x.a;
  const i128 m = x.q == 1 ? 1 : x.den;
  const i128 two_n = 2 * static_cast<i128>(n);
  std::int64_t total = 0;
  for (std::int64_t r = q_min; r <= q_max; ++r) {
    const auto rk64 = checked_pow(static_cast<std::uint64_t>(r), x.k,
                                  std::uint64_t{1} << 40);
    if (!rk64) throw std::invalid_argument("congruence: r^k too large");
    const i128 rk = static_cast<i128>(*rk64);
    const i128 window = m * rk;  // need 2n|z| < window
    const i128 t = pos_mod(a * rk, m);
    // Smallest z = t + j m with 2n z > -window, i.e. z > -window / 2n.
    const i128 z_lo = floor_div(-window, two_n) + 1;
    i128 z = t + m * floor_div(z_lo - t + m - 1, m);
    for (; z * two_n < window; z += m) {
      const i128 b = (a * rk - z) / m;  // exact by construction
      const i128 b_red = pos_mod(b, rk);
      // b = 0 is admissible only at r = 1, where it is the point 0.
      if (r > 1 && b_red == 0) continue;
      if (require_coprime &&
          std::gcd(static_cast<std::int64_t>(b_red), r) != 1)
        continue;
      ++total;
    }
  }
  return total;
}

std::vector<BoxSurveyRow> box_survey(int k, int instances,
                                     std::int64_t max_modulus,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<BoxSurveyRow> rows;
  rows.reserve(static_cast<std::size_t>(instances));
  std::uniform_int_distribution<std::int64_t> mod_dist(2, max_modulus);
  while (static_cast<int>(rows.size()) < instances) {
    const std::int64_t m = mod_dist(rng);
    std::uniform_int_distribution<std::int64_t> coef(1, m - 1 > 0 ? m - 1 : 1);
    const std::int64_t lead = coef(rng);
    if (std::gcd(lead, m) != 1) continue;
    PolySpec poly = PolySpec::monomial(lead, k, m);
    for (int i = 0; i < k; ++i) poly.coefficients[i] = coef(rng) - 1;
    std::uniform_int_distribution<std::int64_t> side(1, m);
    std::uniform_int_distribution<std::int64_t> shift(-m, m);
    BoxSpec box{shift(rng), side(rng), shift(rng), side(rng)};
    rows.push_back({k, m, box, count_box_solutions(poly, box)});
  }
  return rows;
}

std::string box_survey_csv(const std::vector<BoxSurveyRow>& rows) {
  std::ostringstream out;
  out << "k,m,H,R,K,L,count,bound,ratio\n";
  out << std::setprecision(10);
  for (const auto& r : rows) {
    out << r.k << ',' << r.m << ',' << r.box.H << ',' << r.box.R << ','
        << r.box.K << ',' << r.box.L << ',' << r.result.count << ','
        << r.result.bound_value << ',' << r.result.ratio << '\n';
  }
  return out.str();
}

}  // namespace powersieve
