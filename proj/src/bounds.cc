#include "powersieve/bounds.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "powersieve/arith.h"

namespace powersieve {
namespace {

struct NamedBound {
  BoundId id;
  const char* name;
};

constexpr NamedBound kNames[] = {
    {BoundId::kTrivial, "trivial"},
    {BoundId::kZhaoConjecture, "zhao-conjecture"},
    {BoundId::kZhao, "zhao"},
    {BoundId::kBaierZhao, "baier-zhao"},
    {BoundId::kHalupczokDelta, "halupczok-delta"},
    {BoundId::kHalupczokAk, "halupczok-ak"},
    {BoundId::kHalupczok2k, "halupczok-2k"},
    {BoundId::kMunschNew, "munsch-new"},
};

Rational frac(std::int64_t p, std::int64_t q) { return Rational::from_ints(p, q); }

// 1/(k(k-1)), the saving in the A_k form.
Rational ak_eta(int k) { return frac(1, static_cast<std::int64_t>(k) * (k - 1)); }

void check_k(int k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
}

double max_of(std::initializer_list<double> xs) { return std::max(xs); }

struct Terms {
  double sum = 0.0;
  double largest = 0.0;
};

Terms terms(std::initializer_list<double> xs) {
  Terms t;
  for (double x : xs) {
    t.sum += x;
    t.largest = std::max(t.largest, x);
  }
  return t;
}

// Breakpoints on [lo, hi] such that every expression is affine on each
// closed sub-interval and every pairwise difference keeps its sign on each
// open sub-interval.
std::vector<Rational> refine(const std::vector<const ExponentExpr*>& exprs,
                             const Rational& lo, const Rational& hi) {
  std::vector<Affine> atoms;
  for (const ExponentExpr* e : exprs) e->collect_atoms(atoms);
  std::vector<Rational> points{lo, hi};
  auto add_root = [&](const Affine& f, const Affine& g) {
    if (f.b == g.b) return;
    const Rational t = (g.a - f.a) / (f.b - g.b);
    if (lo < t && t < hi) points.push_back(t);
  };
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i + 1; j < atoms.size(); ++j)
      add_root(atoms[i], atoms[j]);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  // Pairwise crossings inside each piece.
  std::vector<Rational> extra;
  for (std::size_t s = 0; s + 1 < points.size(); ++s) {
    const Rational mid = (points[s] + points[s + 1]) / Rational(2);
    for (std::size_t i = 0; i < exprs.size(); ++i)
      for (std::size_t j = i + 1; j < exprs.size(); ++j) {
        const Affine& f = exprs[i]->active(mid);
        const Affine& g = exprs[j]->active(mid);
        if (f.b == g.b) continue;
        const Rational t = (g.a - f.a) / (f.b - g.b);
        if (points[s] < t && t < points[s + 1]) extra.push_back(t);
      }
  }
  points.insert(points.end(), extra.begin(), extra.end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

}  // namespace

const std::vector<BoundId>& all_bounds() {
  static const std::vector<BoundId> ids = [] {
    std::vector<BoundId> v;
    for (const auto& n : kNames) v.push_back(n.id);
    return v;
  }();
  return ids;
}

std::vector<BoundId> proven_bounds() {
  std::vector<BoundId> v;
  for (BoundId id : all_bounds())
    if (id != BoundId::kZhaoConjecture) v.push_back(id);
  return v;
}

std::vector<BoundId> prior_bounds_for_comparison() {
  return {BoundId::kTrivial, BoundId::kBaierZhao, BoundId::kHalupczokDelta,
          BoundId::kHalupczokAk, BoundId::kHalupczok2k};
}

std::string bound_name(BoundId id) {
  for (const auto& n : kNames)
    if (n.id == id) return n.name;
  return "unknown";
}

std::optional<BoundId> parse_bound(const std::string& name) {
  for (const auto& n : kNames)
    if (name == n.name) return n.id;
  return std::nullopt;
}

Rational kappa(int k) {
  check_k(k);
  return Rational(std::int64_t{1} << (k - 1));
}

Rational halupczok_delta(int k) {
  check_k(k);
  return frac(1, 2 * static_cast<std::int64_t>(k) * (k - 1));
}

Rational halupczok_omega(int k) {
  check_k(k);
  return frac(1, static_cast<std::int64_t>(k - 1) * (k - 2) + 2);
}

BoundValue evaluate(BoundId id, int k, double Q, double N, double eps,
                    const BoundOptions& options) {
  check_k(k);
  if (!(Q >= 1.0) || !(N >= 1.0) || !(eps >= 0.0))
    throw std::invalid_argument("need Q >= 1, N >= 1, eps >= 0");
  const double kd = k;
  const double qk = std::pow(Q, kd);
  const double qk1 = qk * Q;
  const double qn_eps = std::pow(Q * N, eps);
  BoundValue out;

  auto a_k = [&]() {
    const double eta = ak_eta(k).to_double();
    return terms({qk1, std::pow(Q, 1.0 - eta) * N,
                  std::pow(Q, 1.0 + 1.0 / (kd - 1.0)) * std::pow(N, 1.0 - eta)});
  };

  switch (id) {
    case BoundId::kTrivial: {
      const Terms a = terms({std::pow(Q, 2 * kd), N});
      const Terms b = terms({qk1, Q * N});
      const Terms& best = a.sum <= b.sum ? a : b;
      out.value = best.sum;
      out.dominant_term = best.largest;
      break;
    }
    case BoundId::kZhaoConjecture: {
      const Terms t = terms({qk1, N});
      out.value = std::pow(Q, eps) * t.sum;
      out.dominant_term = t.largest;
      break;
    }
    case BoundId::kZhao: {
      const double kap = kappa(k).to_double();
      const double n_exp = options.zhao_variant ? 1.0 - 1.0 / kap : 1.0 - kap;
      const double t2 = N * std::pow(Q, (kap - 1.0) / kap);
      const double t3 = std::pow(N, n_exp) * std::pow(Q, (kap + kd) / kap);
      out.value = qk1 + (t2 + t3) * std::pow(N, eps);
      out.dominant_term = max_of({qk1, t2, t3});
      break;
    }
    case BoundId::kBaierZhao: {
      const Terms t = terms({qk1, N, std::sqrt(N) * qk});
      const double loglog = std::log(std::log(10.0 * N * Q));
      const double head = qk1 + N + std::pow(N, 0.5 + eps) * qk;
      out.value = head * std::pow(loglog, kd + 1.0);
      out.dominant_term = t.largest;
      break;
    }
    case BoundId::kHalupczokDelta: {
      const double d = halupczok_delta(k).to_double();
      const Terms t = terms({qk1, std::pow(Q, 1.0 - d) * N,
                             std::pow(Q, 1.0 + kd * d) * std::pow(N, 1.0 - d)});
      out.value = qn_eps * t.sum;
      out.dominant_term = t.largest;
      break;
    }
    case BoundId::kHalupczokAk: {
      const Terms t = a_k();
      out.value = qn_eps * t.sum;
      out.dominant_term = t.largest;
      break;
    }
    case BoundId::kHalupczok2k: {
      const double w = halupczok_omega(k).to_double();
      const Terms ak = a_k();
      const double alt =
          std::pow(N, 1.0 - w) * std::pow(Q, 1.0 + (2.0 * kd - 1.0) * w);
      const double inner = std::min(ak.sum, alt);
      const double inner_dom = ak.sum <= alt ? ak.largest : alt;
      const double combined =
          options.halupczok_max_reading ? std::max(qk1, inner) : qk1 + inner;
      out.value = std::pow(Q, eps) * combined;
      out.dominant_term = std::max(qk1, inner_dom);
      break;
    }
    case BoundId::kMunschNew: {
      const double t = std::pow(Q, 1.0 + 1.0 / (kd + 1.0)) *
                       std::pow(N, 1.0 - 1.0 / (kd * (kd + 1.0)));
      out.value = qn_eps * t;
      out.dominant_term = t;
      // Q^k <= N <= Q^{2k}, with a relative slack for rounding in pow.
      const double slack = 1e-12;
      out.out_of_range =
          qk > N * (1.0 + slack) || N > qk * qk * (1.0 + slack);
      break;
    }
  }
  return out;
}

bool new_bound_in_range(int k, std::int64_t Q, std::int64_t N) {
  check_k(k);
  if (Q < 1 || N < 1) return false;
  BigInt qk;
  mpz_ui_pow_ui(qk.get_mpz_t(), static_cast<unsigned long>(Q),
                static_cast<unsigned long>(k));
  const BigInt n(static_cast<long>(N));
  return qk <= n && n <= qk * qk;
}

std::string Affine::to_string() const {
  std::ostringstream os;
  if (b.is_zero()) {
    os << a.to_string();
    return os.str();
  }
  const std::string slope = b == Rational(1) ? "theta" : b.abs().to_string() + "*theta";
  if (a.is_zero()) {
    os << (b.sign() < 0 ? "-" : "") << slope;
  } else {
    os << a.to_string() << (b.sign() < 0 ? " - " : " + ")
       << (b == Rational(-1) ? "theta" : slope);
  }
  return os.str();
}

ExponentExpr ExponentExpr::atom(Rational a, Rational b) {
  ExponentExpr e;
  e.kind_ = Kind::kAtom;
  e.affine_ = Affine{std::move(a), std::move(b)};
  return e;
}

ExponentExpr ExponentExpr::max(std::vector<ExponentExpr> children) {
  ExponentExpr e;
  e.kind_ = Kind::kMax;
  e.children_ = std::move(children);
  return e;
}

ExponentExpr ExponentExpr::min(std::vector<ExponentExpr> children) {
  ExponentExpr e;
  e.kind_ = Kind::kMin;
  e.children_ = std::move(children);
  return e;
}

Rational ExponentExpr::at(const Rational& theta) const {
  return active(theta).at(theta);
}

const Affine& ExponentExpr::active(const Rational& theta) const {
  if (kind_ == Kind::kAtom) return affine_;
  const Affine* best = &children_.front().active(theta);
  Rational best_value = best->at(theta);
  for (std::size_t i = 1; i < children_.size(); ++i) {
    const Affine& cand = children_[i].active(theta);
    const Rational v = cand.at(theta);
    if (kind_ == Kind::kMax ? v > best_value : v < best_value) {
      best = &cand;
      best_value = v;
    }
  }
  return *best;
}

void ExponentExpr::collect_atoms(std::vector<Affine>& out) const {
  if (kind_ == Kind::kAtom) {
    out.push_back(affine_);
    return;
  }
  for (const auto& c : children_) c.collect_atoms(out);
}

ExponentExpr exponent_expr(BoundId id, int k, const BoundOptions& options) {
  check_k(k);
  using E = ExponentExpr;
  const Rational kr(k);
  const Rational one(1);
  auto floor_term = [&] { return E::atom(kr + one, 0); };
  auto ak_expr = [&] {
    const Rational eta = ak_eta(k);
    return E::max({floor_term(), E::atom(one - eta, one),
                   E::atom(one + frac(1, k - 1), one - eta)});
  };

  switch (id) {
    case BoundId::kTrivial:
      return E::min({E::max({E::atom(2 * kr, 0), E::atom(0, one)}),
                     E::max({E::atom(kr + one, 0), E::atom(one, one)})});
    case BoundId::kZhaoConjecture:
      return E::max({floor_term(), E::atom(0, one)});
    case BoundId::kZhao: {
      const Rational kap = kappa(k);
      const Rational slope = options.zhao_variant ? one - one / kap : one - kap;
      return E::max({floor_term(), E::atom((kap - one) / kap, one),
                     E::atom((kap + kr) / kap, slope)});
    }
    case BoundId::kBaierZhao:
      return E::max({floor_term(), E::atom(0, one), E::atom(kr, frac(1, 2))});
    case BoundId::kHalupczokDelta: {
      const Rational d = halupczok_delta(k);
      return E::max({floor_term(), E::atom(one - d, one),
                     E::atom(one + kr * d, one - d)});
    }
    case BoundId::kHalupczokAk:
      return ak_expr();
    case BoundId::kHalupczok2k: {
      // The max and additive readings share this exponent.
      const Rational w = halupczok_omega(k);
      return E::max({floor_term(),
                     E::min({ak_expr(), E::atom(one + (2 * kr - one) * w,
                                                one - w)})});
    }
    case BoundId::kMunschNew:
      return E::atom(one + frac(1, k + 1),
                     one - frac(1, static_cast<std::int64_t>(k) * (k + 1)));
  }
  throw std::invalid_argument("unknown bound id");
}

Rational exponent(BoundId id, int k, const Rational& theta,
                  const BoundOptions& options) {
  return exponent_expr(id, k, options).at(theta);
}

CrossoverResult crossover(BoundId a, BoundId b, int k,
                          const BoundOptions& options) {
  return crossover(a, b, k, Rational(k), Rational(2 * k), options);
}

CrossoverResult crossover(BoundId a, BoundId b, int k, const Rational& lo,
                          const Rational& hi, const BoundOptions& options) {
  if (hi < lo) throw std::invalid_argument("empty theta range");
  const ExponentExpr ea = exponent_expr(a, k, options);
  const ExponentExpr eb = exponent_expr(b, k, options);
  CrossoverResult result;
  const std::vector<Rational> points = refine({&ea, &eb}, lo, hi);

  auto sign_at = [&](const Rational& t) { return (ea.at(t) - eb.at(t)).sign(); };
  if (points.size() == 1) {
    result.intervals.push_back({lo, hi, sign_at(lo)});
  }
  for (std::size_t s = 0; s + 1 < points.size(); ++s) {
    const int sign = sign_at((points[s] + points[s + 1]) / Rational(2));
    if (!result.intervals.empty() && result.intervals.back().sign == sign) {
      result.intervals.back().hi = points[s + 1];
    } else {
      result.intervals.push_back({points[s], points[s + 1], sign});
    }
  }
  result.identical =
      result.intervals.size() == 1 && result.intervals.front().sign == 0 &&
      sign_at(lo) == 0 && sign_at(hi) == 0;
  for (std::size_t i = 0; i + 1 < result.intervals.size(); ++i)
    result.crossings.push_back(result.intervals[i].hi);
  return result;
}

Rational new_vs_baier_zhao_endpoint_solved(int k) {
  const std::int64_t kk = k;
  return frac(2 * kk * (kk * kk - 2), kk * kk + kk - 2);
}

Rational new_vs_baier_zhao_endpoint_printed(int k) {
  const std::int64_t kk = k;
  return Rational(2 * kk - 2) + frac(2 * (kk - 2), kk * kk + kk - 2);
}

Dominant dominant_bound(int k, const Rational& theta,
                        const std::vector<BoundId>& ids,
                        const BoundOptions& options) {
  if (ids.empty()) throw std::invalid_argument("no bounds selected");
  std::optional<Dominant> best;
  for (BoundId id : all_bounds()) {
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) continue;
    const Rational e = exponent(id, k, theta, options);
    if (!best || e < best->exponent) best = Dominant{id, e};
  }
  return *best;
}

std::vector<RegimeSegment> regime_map(int k, const std::vector<BoundId>& ids,
                                      const Rational& lo, const Rational& hi,
                                      const BoundOptions& options) {
  if (hi < lo) throw std::invalid_argument("empty theta range");
  std::vector<ExponentExpr> exprs;
  for (BoundId id : ids) exprs.push_back(exponent_expr(id, k, options));
  std::vector<const ExponentExpr*> ptrs;
  for (const auto& e : exprs) ptrs.push_back(&e);
  const std::vector<Rational> points = refine(ptrs, lo, hi);

  std::vector<RegimeSegment> segments;
  auto segment_at = [&](const Rational& a, const Rational& b,
                        const Rational& probe) {
    const Dominant d = dominant_bound(k, probe, ids, options);
    return RegimeSegment{a, b, d.id, exponent_expr(d.id, k, options).active(probe)};
  };
  if (points.size() == 1) {
    segments.push_back(segment_at(lo, hi, lo));
    return segments;
  }
  for (std::size_t s = 0; s + 1 < points.size(); ++s) {
    RegimeSegment seg = segment_at(points[s], points[s + 1],
                                   (points[s] + points[s + 1]) / Rational(2));
    if (!segments.empty() && segments.back().winner == seg.winner &&
        segments.back().expression == seg.expression) {
      segments.back().hi = seg.hi;
    } else {
      segments.push_back(std::move(seg));
    }
  }
  return segments;
}

std::string regime_map_csv(int k, const std::vector<RegimeSegment>& segments) {
  std::ostringstream os;
  os << "k,theta_lo,theta_hi,winner_id,exponent_expression\n";
  for (const auto& s : segments)
    os << k << ',' << s.lo.to_string() << ',' << s.hi.to_string() << ','
       << bound_name(s.winner) << ",\"" << s.expression.to_string() << "\"\n";
  return os.str();
}

std::vector<OpenInterval> improvement_intervals(
    BoundId candidate, const std::vector<BoundId>& others, int k,
    const BoundOptions& options) {
  const Rational lo(k), hi(2 * k);
  std::vector<ExponentExpr> exprs{exponent_expr(candidate, k, options)};
  for (BoundId id : others) exprs.push_back(exponent_expr(id, k, options));
  std::vector<const ExponentExpr*> ptrs;
  for (const auto& e : exprs) ptrs.push_back(&e);
  const std::vector<Rational> points = refine(ptrs, lo, hi);

  auto wins_at = [&](const Rational& t) {
    const Rational mine = exprs.front().at(t);
    for (std::size_t i = 1; i < exprs.size(); ++i)
      if (!(mine < exprs[i].at(t))) return false;
    return true;
  };
  std::vector<OpenInterval> out;
  bool open = false;
  for (std::size_t s = 0; s + 1 < points.size(); ++s) {
    const bool wins = wins_at((points[s] + points[s + 1]) / Rational(2));
    if (wins && open && wins_at(points[s])) {
      out.back().hi = points[s + 1];
    } else if (wins) {
      out.push_back({points[s], points[s + 1]});
    }
    open = wins;
  }
  return out;
}

}  // namespace powersieve
