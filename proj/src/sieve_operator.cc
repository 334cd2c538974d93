#include "powersieve/sieve_operator.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "powersieve/arith.h"
#include "powersieve/errors.h"

namespace powersieve {
namespace {

constexpr double kPi = std::numbers::pi;

// (c * d) reduced into [-1, 1) modulo 2, for d = p/q with q > 0.
double reduce_mod2(const BigInt& c, const Rational& d) {
  const BigInt two_den = 2 * d.den();
  BigInt r;
  const BigInt prod = c * d.num();
  mpz_fdiv_r(r.get_mpz_t(), prod.get_mpz_t(), two_den.get_mpz_t());
  if (r >= d.den()) r -= two_den;
  return mpq_class(r, d.den()).get_d();
}

// Same on 128-bit data: (c * p / den) reduced into [-1, 1) modulo 2.
double reduce_mod2(i128 c, i128 p, i128 den) {
  const i128 two_den = 2 * den;
  i128 r = pos_mod(pos_mod(c, two_den) * pos_mod(p, two_den), two_den);
  if (r >= den) r -= two_den;
  return static_cast<double>(r) / static_cast<double>(den);
}

void check_n(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("N must be >= 1");
}

// ---------------------------------------------------------------------------
// Gram operators.

class DenseKernelOperator : public SymmetricOperator {
 public:
  DenseKernelOperator(const FareyFamily& family, std::int64_t n)
      : matrix_(family.size(), family.size()) {
    const auto& pts = family.points();
    const auto s = static_cast<Eigen::Index>(pts.size());
    for (Eigen::Index i = 0; i < s; ++i) {
      matrix_(i, i) = static_cast<double>(n);
      for (Eigen::Index j = 0; j < i; ++j) {
        const double v = real_kernel(pts[i], pts[j], n);
        matrix_(i, j) = v;
        matrix_(j, i) = v;
      }
    }
  }
  std::size_t dim() const override {
    return static_cast<std::size_t>(matrix_.rows());
  }
  void apply(const Eigen::MatrixXd& in, Eigen::MatrixXd& out) const override {
    out.noalias() = matrix_ * in;
  }
  std::string name() const override { return "dense-kernel"; }

 private:
  Eigen::MatrixXd matrix_;
};

class KernelOnTheFlyOperator : public SymmetricOperator {
 public:
  KernelOnTheFlyOperator(const FareyFamily& family, std::int64_t n)
      : family_(family), n_(n) {}
  std::size_t dim() const override { return family_.size(); }
  void apply(const Eigen::MatrixXd& in, Eigen::MatrixXd& out) const override {
    const auto& pts = family_.points();
    const auto s = static_cast<Eigen::Index>(pts.size());
    out.setZero(s, in.cols());
    const double diag = static_cast<double>(n_);
    for (Eigen::Index i = 0; i < s; ++i) {
      out.row(i) += diag * in.row(i);
      for (Eigen::Index j = 0; j < i; ++j) {
        const double v = real_kernel(pts[i], pts[j], n_);
        out.row(i) += v * in.row(j);
        out.row(j) += v * in.row(i);
      }
    }
  }
  std::string name() const override { return "kernel-on-the-fly"; }

 private:
  const FareyFamily& family_;
  std::int64_t n_;
};

// FFTW planning and plan destruction are not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

Eigen::MatrixXd toeplitz_matrix(const std::vector<double>& symbol) {
  const auto n = static_cast<Eigen::Index>(symbol.size());
  Eigen::MatrixXd t(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      t(i, j) = symbol[static_cast<std::size_t>(std::abs(i - j))];
  return t;
}

// Symmetric Toeplitz matrix applied through a circulant embedding of
// length 2N.
class ToeplitzFftOperator : public SymmetricOperator {
 public:
  explicit ToeplitzFftOperator(const std::vector<double>& symbol)
      : n_(symbol.size()), len_(2 * symbol.size()) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    real_ = fftw_alloc_real(len_);
    spec_ = fftw_alloc_complex(len_ / 2 + 1);
    forward_ = fftw_plan_dft_r2c_1d(static_cast<int>(len_), real_, spec_,
                                    FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_1d(static_cast<int>(len_), spec_, real_,
                                     FFTW_ESTIMATE);
    for (std::size_t i = 0; i < len_; ++i) real_[i] = 0.0;
    for (std::size_t i = 0; i < n_; ++i) real_[i] = symbol[i];
    for (std::size_t i = 1; i < n_; ++i) real_[len_ - i] = symbol[i];
    fftw_execute(forward_);
    eig_.resize(len_ / 2 + 1);
    for (std::size_t i = 0; i < eig_.size(); ++i) eig_[i] = spec_[i][0];
  }
  ~ToeplitzFftOperator() override {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(real_);
    fftw_free(spec_);
  }
  ToeplitzFftOperator(const ToeplitzFftOperator&) = delete;
  ToeplitzFftOperator& operator=(const ToeplitzFftOperator&) = delete;

  std::size_t dim() const override { return n_; }
  void apply(const Eigen::MatrixXd& in, Eigen::MatrixXd& out) const override {
    out.resize(static_cast<Eigen::Index>(n_), in.cols());
    const double scale = 1.0 / static_cast<double>(len_);
    for (Eigen::Index c = 0; c < in.cols(); ++c) {
      for (std::size_t i = 0; i < n_; ++i)
        real_[i] = in(static_cast<Eigen::Index>(i), c);
      for (std::size_t i = n_; i < len_; ++i) real_[i] = 0.0;
      fftw_execute(forward_);
      for (std::size_t i = 0; i < eig_.size(); ++i) {
        spec_[i][0] *= eig_[i];
        spec_[i][1] *= eig_[i];
      }
      fftw_execute(backward_);
      for (std::size_t i = 0; i < n_; ++i)
        out(static_cast<Eigen::Index>(i), c) = real_[i] * scale;
    }
  }
  std::string name() const override { return "toeplitz-fft"; }

 private:
  std::size_t n_, len_;
  double* real_;
  fftw_complex* spec_;
  fftw_plan forward_, backward_;
  std::vector<double> eig_;
};

// K = U^* A A^* U with A(x, n) = e(x n), n = 1..N, and U = diag(e(x c)),
// c = (N + 1) / 2. A^* is applied per denominator q^k as one length-q^k
// DFT whose output is periodic in n; A by folding n modulo q^k followed by
// the inverse-direction DFT. Cost per vector is O(N * #denominators).
class FoldedDftOperator : public SymmetricOperator {
 public:
  FoldedDftOperator(const FareyFamily& family, std::int64_t n)
      : n_(n), size_(family.size()) {
    const auto& pts = family.points();
    phase_.resize(size_);
    for (std::size_t i = 0; i < size_; ++i) {
      phase_[i] = std::polar(
          1.0, kPi * reduce_mod2(static_cast<i128>(n) + 1, pts[i].num,
                                 pts[i].den));
      auto it = std::find_if(groups_.begin(), groups_.end(), [&](const Group& g) {
        return g.modulus == pts[i].den;
      });
      if (it == groups_.end()) {
        groups_.push_back(Group{pts[i].den, {}, {}, nullptr, nullptr, nullptr});
        it = groups_.end() - 1;
      }
      it->members.push_back(i);
      it->residues.push_back(pts[i].num);
    }
    std::lock_guard<std::mutex> lock(planner_mutex());
    for (auto& g : groups_) {
      const auto m = static_cast<std::size_t>(g.modulus);
      g.buffer = fftw_alloc_complex(m);
      g.forward = fftw_plan_dft_1d(static_cast<int>(m), g.buffer, g.buffer,
                                   FFTW_FORWARD, FFTW_ESTIMATE);
      g.backward = fftw_plan_dft_1d(static_cast<int>(m), g.buffer, g.buffer,
                                    FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    line_.resize(static_cast<std::size_t>(n));
  }
  ~FoldedDftOperator() override {
    std::lock_guard<std::mutex> lock(planner_mutex());
    for (auto& g : groups_) {
      fftw_destroy_plan(g.forward);
      fftw_destroy_plan(g.backward);
      fftw_free(g.buffer);
    }
  }
  FoldedDftOperator(const FoldedDftOperator&) = delete;
  FoldedDftOperator& operator=(const FoldedDftOperator&) = delete;

  std::size_t dim() const override { return size_; }
  void apply(const Eigen::MatrixXd& in, Eigen::MatrixXd& out) const override {
    out.resize(static_cast<Eigen::Index>(size_), in.cols());
    for (Eigen::Index c = 0; c < in.cols(); ++c) {
      std::fill(line_.begin(), line_.end(), Complex(0.0, 0.0));
      // line(n) = sum_x e(-x n) u_x v_x
      for (auto& g : groups_) {
        const auto m = static_cast<std::size_t>(g.modulus);
        auto* buf = reinterpret_cast<Complex*>(g.buffer);
        std::fill(buf, buf + m, Complex(0.0, 0.0));
        for (std::size_t t = 0; t < g.members.size(); ++t) {
          const std::size_t i = g.members[t];
          buf[g.residues[t]] = phase_[i] * in(static_cast<Eigen::Index>(i), c);
        }
        fftw_execute(g.forward);
        std::size_t r = 1 % m;
        for (std::size_t j = 0; j < line_.size(); ++j) {
          line_[j] += buf[r];
          if (++r == m) r = 0;
        }
      }
      // (A line)(x) = sum_n line(n) e(x n), then undo the phase.
      for (auto& g : groups_) {
        const auto m = static_cast<std::size_t>(g.modulus);
        auto* buf = reinterpret_cast<Complex*>(g.buffer);
        std::fill(buf, buf + m, Complex(0.0, 0.0));
        std::size_t r = 1 % m;
        for (std::size_t j = 0; j < line_.size(); ++j) {
          buf[r] += line_[j];
          if (++r == m) r = 0;
        }
        fftw_execute(g.backward);
        for (std::size_t t = 0; t < g.members.size(); ++t) {
          const std::size_t i = g.members[t];
          out(static_cast<Eigen::Index>(i), c) =
              (std::conj(phase_[i]) * buf[g.residues[t]]).real();
        }
      }
    }
  }
  std::string name() const override { return "folded-dft"; }

  static double cost(const FareyFamily& family, std::int64_t n) {
    std::vector<std::int64_t> mods;
    for (const auto& p : family.points())
      if (std::find(mods.begin(), mods.end(), p.den) == mods.end())
        mods.push_back(p.den);
    double total = 0.0;
    for (const auto m : mods) {
      const auto md = static_cast<double>(m);
      total += 8.0 * static_cast<double>(n) + 10.0 * md * std::log2(md + 2.0);
    }
    return total;
  }

 private:
  struct Group {
    std::int64_t modulus;
    std::vector<std::size_t> members;
    std::vector<std::int64_t> residues;
    fftw_complex* buffer;
    fftw_plan forward;
    fftw_plan backward;
  };
  std::int64_t n_;
  std::size_t size_;
  std::vector<Complex> phase_;
  std::vector<Group> groups_;
  mutable std::vector<Complex> line_;
};

std::vector<double> real_symbol(const FareyFamily& family, std::int64_t n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  if (family.complete()) {
    const auto exact = dual_symbol_ramanujan(family, n);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = static_cast<double>(exact[i]);
  } else {
    const auto direct = dual_symbol_direct(family, n);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = direct[i].real();
  }
  return out;
}

}  // namespace

double ComplexSequence::energy() const {
  double total = 0.0;
  for (const auto& v : values) total += std::norm(v);
  return total;
}

Complex kernel_entry(const Rational& x, const Rational& y, std::int64_t n,
                     std::int64_t m) {
  check_n(n);
  const Rational d = x - y;
  if (d.den() == 1) return Complex(static_cast<double>(n), 0.0);
  const double num_angle = reduce_mod2(BigInt(static_cast<long>(n)), d);
  const double den_angle = reduce_mod2(BigInt(1), d);
  const double magnitude =
      std::sin(kPi * num_angle) / std::sin(kPi * den_angle);
  const BigInt c = 2 * BigInt(static_cast<long>(m)) +
                   BigInt(static_cast<long>(n)) + 1;
  const double phase = reduce_mod2(c, d);
  return std::polar(1.0, kPi * phase) * magnitude;
}

Complex kernel_entry_naive(const Rational& x, const Rational& y,
                           std::int64_t n, std::int64_t m) {
  check_n(n);
  const Rational d = x - y;
  Complex total(0.0, 0.0);
  for (std::int64_t t = m + 1; t <= m + n; ++t) {
    const double angle = reduce_mod2(BigInt(static_cast<long>(2 * t)), d);
    total += std::polar(1.0, kPi * angle);
  }
  return total;
}

double real_kernel(const FareyPoint& x, const FareyPoint& y, std::int64_t n) {
  const i128 p = static_cast<i128>(x.num) * y.den -
                 static_cast<i128>(y.num) * x.den;
  if (p == 0) return static_cast<double>(n);
  const i128 den = static_cast<i128>(x.den) * y.den;
  const double top = std::sin(kPi * reduce_mod2(n, p, den));
  const double bottom =
      std::sin(kPi * (static_cast<double>(p) / static_cast<double>(den)));
  return top / bottom;
}

Eigen::MatrixXcd gram_matrix(const FareyFamily& family, std::int64_t n,
                             std::int64_t m) {
  check_n(n);
  const auto& pts = family.points();
  const auto s = static_cast<Eigen::Index>(pts.size());
  std::vector<Rational> values;
  values.reserve(pts.size());
  for (const auto& p : pts) values.push_back(p.value());
  Eigen::MatrixXcd g(s, s);
  for (Eigen::Index i = 0; i < s; ++i) {
    g(i, i) = Complex(static_cast<double>(n), 0.0);
    for (Eigen::Index j = 0; j < i; ++j) {
      const Complex v = kernel_entry(values[static_cast<std::size_t>(i)],
                                     values[static_cast<std::size_t>(j)], n, m);
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
  }
  return g;
}

double lhs_energy(const FareyFamily& family, const ComplexSequence& seq) {
  double total = 0.0;
  for (const auto& x : family.points()) {
    Complex acc(0.0, 0.0);
    const i128 den = x.den;
    for (std::int64_t i = 0; i < seq.length(); ++i) {
      const i128 t = seq.offset + 1 + i;
      const i128 r = pos_mod(static_cast<i128>(x.num) * pos_mod(t, den), den);
      const double angle =
          2.0 * kPi * static_cast<double>(r) / static_cast<double>(den);
      acc += seq.values[static_cast<std::size_t>(i)] * std::polar(1.0, angle);
    }
    total += std::norm(acc);
  }
  return total;
}

double ratio_for_sequence(const FareyFamily& family,
                          const ComplexSequence& seq) {
  const double energy = seq.energy();
  if (!(energy > 0.0))
    throw std::invalid_argument("ratio_for_sequence: zero sequence");
  return lhs_energy(family, seq) / energy;
}

std::vector<Complex> dual_symbol_direct(const FareyFamily& family,
                                        std::int64_t n) {
  check_n(n);
  std::vector<Complex> symbol(static_cast<std::size_t>(n), Complex(0.0, 0.0));
  for (const auto& x : family.points()) {
    const i128 den = x.den;
    for (std::int64_t d = 0; d < n; ++d) {
      const i128 r = pos_mod(static_cast<i128>(x.num) * d, den);
      symbol[static_cast<std::size_t>(d)] += std::polar(
          1.0, 2.0 * kPi * static_cast<double>(r) / static_cast<double>(den));
    }
  }
  return symbol;
}

std::vector<std::int64_t> dual_symbol_ramanujan(const FareyFamily& family,
                                                std::int64_t n) {
  check_n(n);
  if (!family.complete())
    throw std::invalid_argument(
        "dual_symbol_ramanujan: family is not a union of residue systems");
  std::vector<std::int64_t> symbol(static_cast<std::size_t>(n), 0);
  for (std::int64_t q = family.q_min(); q <= family.q_max(); ++q) {
    if (q == 1) {
      for (auto& v : symbol) v += 1;
      continue;
    }
    const auto m = static_cast<std::int64_t>(
        *checked_pow(static_cast<std::uint64_t>(q), family.k()));
    // Terms mu(t) * (m / t) over squarefree t | q.
    std::vector<std::pair<std::int64_t, std::int64_t>> terms;
    for (const auto t : divisors(static_cast<std::uint64_t>(q))) {
      const int mu = mobius(t);
      if (mu != 0)
        terms.emplace_back(m / static_cast<std::int64_t>(t), mu);
    }
    for (std::int64_t d = 0; d < n; ++d) {
      std::int64_t c = 0;
      for (const auto& [e, mu] : terms)
        if (d % e == 0) c += mu * e;
      symbol[static_cast<std::size_t>(d)] += c;
    }
  }
  return symbol;
}

std::string backend_name(GramBackend backend) {
  switch (backend) {
    case GramBackend::kAuto: return "auto";
    case GramBackend::kDenseKernel: return "dense-kernel";
    case GramBackend::kKernelOnTheFly: return "kernel-on-the-fly";
    case GramBackend::kToeplitz: return "toeplitz";
    case GramBackend::kFoldedDft: return "folded-dft";
  }
  return "unknown";
}

std::unique_ptr<SymmetricOperator> make_gram_operator(
    const FareyFamily& family, std::int64_t n,
    const DeltaStarOptions& options) {
  check_n(n);
  const auto s = static_cast<double>(family.size());
  const auto nd = static_cast<double>(n);
  const Budgets& budgets = options.budgets;
  const bool toeplitz_ok = family.symmetric();
  const bool dense_kernel_ok = s * s * 8.0 <= budgets.max_matrix_bytes;
  const bool dense_toeplitz = nd * nd * 8.0 <= budgets.max_matrix_bytes &&
                              n <= 2048;
  std::uint64_t modulus_total = 0;
  for (std::int64_t q = family.q_min(); q <= family.q_max(); ++q) {
    const auto m = checked_pow(static_cast<std::uint64_t>(q), family.k());
    modulus_total += m ? *m : budgets.max_operator_dim + 1;
  }
  const bool folded_ok =
      modulus_total <= budgets.max_operator_dim &&
      static_cast<std::uint64_t>(n) <= budgets.max_operator_dim;

  GramBackend choice = options.backend;
  if (choice == GramBackend::kAuto) {
    // Per-application cost plus a per-dimension overhead of the solver.
    const double cost_dense = dense_kernel_ok ? s * s + 50.0 * s : INFINITY;
    const double cost_fly = 40.0 * s * s + 50.0 * s;
    double cost_toep = INFINITY;
    if (toeplitz_ok) {
      cost_toep = dense_toeplitz ? nd * nd + 50.0 * nd
                                 : 30.0 * nd * std::log2(2.0 * nd) + 50.0 * nd;
    }
    const double cost_fold =
        folded_ok ? FoldedDftOperator::cost(family, n) + 50.0 * s : INFINITY;
    choice = GramBackend::kKernelOnTheFly;
    double best = cost_fly;
    if (cost_dense < best) {
      best = cost_dense;
      choice = GramBackend::kDenseKernel;
    }
    if (cost_fold < best) {
      best = cost_fold;
      choice = GramBackend::kFoldedDft;
    }
    if (cost_toep < best) choice = GramBackend::kToeplitz;
  }

  switch (choice) {
    case GramBackend::kDenseKernel:
      if (!dense_kernel_ok) {
        throw ResourceLimitError("gram: dense kernel matrix over byte budget",
                                 family.size() * family.size());
      }
      return std::make_unique<DenseKernelOperator>(family, n);
    case GramBackend::kKernelOnTheFly:
      return std::make_unique<KernelOnTheFlyOperator>(family, n);
    case GramBackend::kFoldedDft:
      if (!folded_ok)
        throw ResourceLimitError("gram: folded DFT buffers over budget",
                                 modulus_total);
      return std::make_unique<FoldedDftOperator>(family, n);
    case GramBackend::kToeplitz: {
      if (!toeplitz_ok)
        throw std::invalid_argument(
            "gram: Toeplitz backend needs a family symmetric under x -> -x");
      if (static_cast<std::uint64_t>(n) > budgets.max_operator_dim)
        throw ResourceLimitError("gram: Toeplitz dimension over budget",
                                 static_cast<std::uint64_t>(n));
      const auto symbol = real_symbol(family, n);
      if (dense_toeplitz)
        return std::make_unique<DenseSymmetricOperator>(
            toeplitz_matrix(symbol), "toeplitz-dense");
      return std::make_unique<ToeplitzFftOperator>(symbol);
    }
    case GramBackend::kAuto:
      break;
  }
  throw std::logic_error("gram: unresolved backend");
}

EigenEstimate delta_star(const FareyFamily& family, std::int64_t n,
                         std::int64_t m, const DeltaStarOptions& options) {
  check_n(n);
  (void)m;
  if (family.empty()) return EigenEstimate{0.0, 0.0, 0.0, 0, "empty", "none"};
  auto op = make_gram_operator(family, n, options);
  EigenEstimate est = top_eigenvalue(*op, options.eigen);
  est.backend = op->name();
  return est;
}

double delta_star_dense(const FareyFamily& family, std::int64_t n,
                        std::int64_t m, const Budgets& budgets) {
  if (family.size() > budgets.max_dense_eigen) {
    throw ResourceLimitError("dense oracle: family of " +
                                 std::to_string(family.size()) +
                                 " points over budget",
                             family.size());
  }
  if (family.empty()) return 0.0;
  const Eigen::MatrixXcd g = gram_matrix(family, n, m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

std::string delta_star_json(const DeltaStarRecord& r) {
  nlohmann::ordered_json j;
  j["k"] = r.k;
  j["q_min"] = r.q_min;
  j["q_max"] = r.q_max;
  j["N"] = r.n;
  j["M"] = r.m;
  j["family_size"] = r.family_size;
  j["delta_star"] = r.estimate.value;
  j["residual"] = r.estimate.residual;
  j["iterations"] = r.estimate.iterations;
  j["min_spacing"] = r.min_spacing;
  return j.dump(2);
}

}  // namespace powersieve
