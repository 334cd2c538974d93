#pragma once

#include <optional>
#include <string>
#include <vector>

#include "powersieve/rational.h"

namespace powersieve {

enum class BoundId {
  kTrivial,
  kZhaoConjecture,
  kZhao,
  kBaierZhao,
  kHalupczokDelta,
  kHalupczokAk,
  kHalupczok2k,
  kMunschNew,
};

// Every id, in the fixed order used for tie-breaking.
const std::vector<BoundId>& all_bounds();
// All proven bounds (everything except the conjecture).
std::vector<BoundId> proven_bounds();
// The earlier bounds the new one is ranked against: trivial, Baier-Zhao and
// the three Halupczok forms.
std::vector<BoundId> prior_bounds_for_comparison();

std::string bound_name(BoundId id);  // e.g. "baier-zhao"
std::optional<BoundId> parse_bound(const std::string& name);

struct BoundOptions {
  // Zhao: use N^{1 - 1/kappa} in place of the printed N^{1 - kappa}.
  bool zhao_variant = false;
  // Halupczok refinement: combine Q^{k+1} with the min-term by max (true)
  // or by addition (false).
  bool halupczok_max_reading = true;
};

struct BoundValue {
  double value = 0.0;
  // Largest single power term of the active branch, without the Q^eps,
  // (QN)^eps or log log factors.
  double dominant_term = 0.0;
  // Set for the new bound outside N^{1/2k} <= Q <= N^{1/k}.
  bool out_of_range = false;
};

// kappa = 2^{k-1}, delta = 1/(2k(k-1)), omega = 1/((k-1)(k-2)+2).
Rational kappa(int k);
Rational halupczok_delta(int k);
Rational halupczok_omega(int k);

// Numeric value of the formula. Throws std::invalid_argument unless
// k >= 2, Q >= 1, N >= 1, eps >= 0.
BoundValue evaluate(BoundId id, int k, double Q, double N, double eps,
                    const BoundOptions& options = {});

// Exact range test Q^k <= N <= Q^{2k} for integer Q, N.
bool new_bound_in_range(int k, std::int64_t Q, std::int64_t N);

// Affine function a + b * theta.
struct Affine {
  Rational a;
  Rational b;
  Rational at(const Rational& theta) const { return a + b * theta; }
  std::string to_string() const;
  friend bool operator==(const Affine&, const Affine&) = default;
};

// Piecewise-linear exponent built from affine atoms with nested max/min.
class ExponentExpr {
 public:
  enum class Kind { kAtom, kMax, kMin };

  static ExponentExpr atom(Rational a, Rational b);
  static ExponentExpr max(std::vector<ExponentExpr> children);
  static ExponentExpr min(std::vector<ExponentExpr> children);

  Rational at(const Rational& theta) const;
  // The atom that attains the value at theta.
  const Affine& active(const Rational& theta) const;
  void collect_atoms(std::vector<Affine>& out) const;

 private:
  Kind kind_ = Kind::kAtom;
  Affine affine_;
  std::vector<ExponentExpr> children_;
};

// Exponent e(theta) with bound ~ Q^{e(theta)} when N = Q^theta, eps = 0;
// log log factors are dropped.
ExponentExpr exponent_expr(BoundId id, int k, const BoundOptions& options = {});
Rational exponent(BoundId id, int k, const Rational& theta,
                  const BoundOptions& options = {});

struct SignedInterval {
  Rational lo, hi;
  int sign = 0;  // sign of e_A - e_B on (lo, hi)
};

struct CrossoverResult {
  bool identical = false;
  std::vector<Rational> crossings;
  std::vector<SignedInterval> intervals;
};

// Exact sign changes of e_A - e_B on [lo, hi] (default [k, 2k]).
CrossoverResult crossover(BoundId a, BoundId b, int k,
                          const BoundOptions& options = {});
CrossoverResult crossover(BoundId a, BoundId b, int k, const Rational& lo,
                          const Rational& hi, const BoundOptions& options = {});

// 2k(k^2 - 2)/(k^2 + k - 2) and 2k - 2 + 2(k - 2)/(k^2 + k - 2).
Rational new_vs_baier_zhao_endpoint_solved(int k);
Rational new_vs_baier_zhao_endpoint_printed(int k);

struct Dominant {
  BoundId id;
  Rational exponent;
};

// Smallest exponent among `ids` at theta; ties go to the earlier id.
Dominant dominant_bound(int k, const Rational& theta,
                        const std::vector<BoundId>& ids,
                        const BoundOptions& options = {});

struct RegimeSegment {
  Rational lo, hi;
  BoundId winner;
  Affine expression;
};

// Winner on each maximal sub-interval of [lo, hi].
std::vector<RegimeSegment> regime_map(int k, const std::vector<BoundId>& ids,
                                      const Rational& lo, const Rational& hi,
                                      const BoundOptions& options = {});
std::string regime_map_csv(int k, const std::vector<RegimeSegment>& segments);

struct OpenInterval {
  Rational lo, hi;
};

// Maximal open intervals in [k, 2k] where `candidate` has a strictly
// smaller exponent than every id in `others`.
std::vector<OpenInterval> improvement_intervals(
    BoundId candidate, const std::vector<BoundId>& others, int k,
    const BoundOptions& options = {});

}  // namespace powersieve
