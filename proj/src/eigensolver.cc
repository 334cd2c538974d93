#include "powersieve/eigensolver.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "powersieve/errors.h"

namespace powersieve {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// splitmix64 mapped to [-1, 1).
double hashed_unit(std::uint64_t i) {
  std::uint64_t z = i + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-52 - 1.0;
}

// Column 0 is all-ones plus a small deterministic ripple; further columns
// are fixed pseudo-random vectors.
MatrixXd start_block(std::size_t n, int b, std::uint64_t seed) {
  MatrixXd x(n, b);
  for (std::size_t i = 0; i < n; ++i)
    x(i, 0) = 1.0 + 0.01 * std::sin(static_cast<double>(i) + 1.0);
  for (int c = 1; c < b; ++c)
    for (std::size_t i = 0; i < n; ++i)
      x(i, c) = hashed_unit(seed * 0xd1b54a32d192ed03ULL +
                            static_cast<std::uint64_t>(c) * n + i);
  return x;
}

// Orthonormalizes the columns of w (and applies the same transform to aw
// when given), dropping directions that are numerically dependent.
// Returns the number of retained columns.
int orthonormalize(MatrixXd& w, MatrixXd* aw) {
  if (w.cols() == 0) return 0;
  for (int pass = 0; pass < 2; ++pass) {
    MatrixXd gram = w.transpose() * w;
    gram = 0.5 * (gram + gram.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(gram);
    const VectorXd& ev = es.eigenvalues();
    const double top = ev.maxCoeff();
    if (!(top > 0.0)) {
      w.resize(w.rows(), 0);
      if (aw) aw->resize(aw->rows(), 0);
      return 0;
    }
    std::vector<int> keep;
    for (int i = static_cast<int>(ev.size()) - 1; i >= 0; --i)
      if (ev(i) > top * 1e-14) keep.push_back(i);
    MatrixXd t(gram.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c)
      t.col(static_cast<Eigen::Index>(c)) =
          es.eigenvectors().col(keep[c]) / std::sqrt(ev(keep[c]));
    w = w * t;
    if (aw) *aw = *aw * t;
  }
  return static_cast<int>(w.cols());
}

// Removes the span of the orthonormal columns of q from w (twice).
void project_out(const MatrixXd& q, MatrixXd& w, MatrixXd* aw,
                 const MatrixXd* aq) {
  if (q.cols() == 0 || w.cols() == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    const MatrixXd c = q.transpose() * w;
    w.noalias() -= q * c;
    if (aw && aq) aw->noalias() -= *aq * c;
  }
}

EigenEstimate dense_solve(const SymmetricOperator& op) {
  const auto n = static_cast<Eigen::Index>(op.dim());
  MatrixXd full;
  op.apply(MatrixXd::Identity(n, n), full);
  full = 0.5 * (full + full.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(full);
  const Eigen::Index top = n - 1;
  const double value = es.eigenvalues()(top);
  const VectorXd v = es.eigenvectors().col(top);
  MatrixXd av;
  op.apply(v, av);
  EigenEstimate est;
  est.value = value;
  est.residual = (av.col(0) - value * v).norm();
  est.relative_residual = value > 0 ? est.residual / value : est.residual;
  est.iterations = 1;
  est.method = "dense";
  est.backend = op.name();
  return est;
}

}  // namespace

EigenEstimate top_eigenvalue(const SymmetricOperator& op,
                             const EigenOptions& options) {
  if (op.dim() == 0) return EigenEstimate{0.0, 0.0, 0.0, 0, "empty", op.name()};
  if (op.dim() <= options.dense_cutoff) return dense_solve(op);
  return options.method == EigenMethod::kPower ? power_iteration(op, options)
                                               : lobpcg(op, options);
}

EigenEstimate power_iteration(const SymmetricOperator& op,
                              const EigenOptions& options) {
  const std::size_t n = op.dim();
  MatrixXd v = start_block(n, 1, options.seed);
  v /= v.norm();
  MatrixXd av;
  double value = 0.0, residual = INFINITY;
  for (int it = 1; it <= options.max_iterations; ++it) {
    op.apply(v, av);
    value = v.col(0).dot(av.col(0));
    residual = (av.col(0) - value * v.col(0)).norm();
    if (value > 0 && residual <= options.tolerance * value) {
      return EigenEstimate{value, residual, residual / value, it, "power",
                           op.name()};
    }
    const double norm = av.norm();
    if (norm == 0.0) {
      return EigenEstimate{0.0, 0.0, 0.0, it, "power", op.name()};
    }
    v = av / norm;
  }
  throw ConvergenceError("power iteration did not converge", value, residual,
                         options.max_iterations);
}

EigenEstimate lobpcg(const SymmetricOperator& op, const EigenOptions& options) {
  const std::size_t n = op.dim();
  int b = static_cast<int>(
      std::min<std::size_t>(std::max(1, options.block_size), n / 3));
  if (b < 1) return dense_solve(op);

  MatrixXd x = start_block(n, b, options.seed);
  b = orthonormalize(x, nullptr);
  MatrixXd ax;
  op.apply(x, ax);
  MatrixXd p(n, 0), ap(n, 0);

  double value = 0.0, residual = INFINITY;
  for (int it = 1; it <= options.max_iterations; ++it) {
    // Rayleigh-Ritz on the current block.
    MatrixXd t = x.transpose() * ax;
    t = 0.5 * (t + t.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> small(t);
    MatrixXd rot = small.eigenvectors().rowwise().reverse();
    VectorXd theta = small.eigenvalues().reverse();
    x = x * rot;
    ax = ax * rot;

    MatrixXd r = ax - x * theta.asDiagonal();
    value = theta(0);
    residual = r.col(0).norm();
    if (value > 0 && residual <= options.tolerance * value) {
      // Confirm against a fresh product so tracked drift cannot fake it.
      MatrixXd fresh;
      op.apply(x.col(0), fresh);
      const double check = (fresh.col(0) - value * x.col(0)).norm();
      if (check <= options.tolerance * value) {
        return EigenEstimate{value, check, check / value, it, "lobpcg",
                             op.name()};
      }
      op.apply(x, ax);
      if (p.cols() > 0) op.apply(p, ap);
      continue;
    }
    if (value <= 0 && residual == 0.0) {
      return EigenEstimate{0.0, 0.0, 0.0, it, "lobpcg", op.name()};
    }

    // New search directions: residuals orthogonal to X and P.
    MatrixXd w = r;
    project_out(x, w, nullptr, nullptr);
    project_out(p, w, nullptr, nullptr);
    if (orthonormalize(w, nullptr) == 0 && p.cols() == 0) break;
    MatrixXd aw;
    op.apply(w, aw);

    const Eigen::Index np = p.cols(), nw = w.cols();
    MatrixXd s(n, b + np + nw), as(n, b + np + nw);
    s << x, p, w;
    as << ax, ap, aw;
    MatrixXd big = s.transpose() * as;
    big = 0.5 * (big + big.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> rr(big);
    const Eigen::Index dim = big.rows();
    MatrixXd c(dim, b);
    for (int j = 0; j < b; ++j) c.col(j) = rr.eigenvectors().col(dim - 1 - j);

    MatrixXd x_new = s * c;
    MatrixXd ax_new = as * c;
    const MatrixXd c_rest = c.bottomRows(np + nw);
    p = s.rightCols(np + nw) * c_rest;
    ap = as.rightCols(np + nw) * c_rest;
    x = std::move(x_new);
    ax = std::move(ax_new);
    b = orthonormalize(x, &ax);
    if (b == 0) break;
    project_out(x, p, &ap, &ax);
    orthonormalize(p, &ap);

    // Periodic refresh against drift in the tracked products.
    if (it % 50 == 0) {
      op.apply(x, ax);
      if (p.cols() > 0) op.apply(p, ap);
    }
  }
  throw ConvergenceError("lobpcg did not converge", value, residual,
                         options.max_iterations);
}

}  // namespace powersieve
