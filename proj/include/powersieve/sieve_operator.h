#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "powersieve/budget.h"
#include "powersieve/eigensolver.h"
#include "powersieve/farey.h"
#include "powersieve/rational.h"

namespace powersieve {

using Complex = std::complex<double>;

// Coefficients a_{M+1}, ..., a_{M+N}.
struct ComplexSequence {
  std::int64_t offset = 0;  // M
  std::vector<Complex> values;

  std::int64_t length() const {
    return static_cast<std::int64_t>(values.size());
  }
  double energy() const;  // sum |a_n|^2
};

// sum_{n=M+1}^{M+N} e((x - y) n), evaluated as
// e(d (2M + N + 1) / 2) sin(pi N d) / sin(pi d) with every angle reduced
// exactly before conversion to double. Equals N when x = y (mod 1).
Complex kernel_entry(const Rational& x, const Rational& y, std::int64_t n,
                     std::int64_t m);

// Same sum by direct accumulation; reference for tests.
Complex kernel_entry_naive(const Rational& x, const Rational& y,
                           std::int64_t n, std::int64_t m);

// Real symmetric form sin(pi N d) / sin(pi d), d = x - y with both points
// in [0, 1). The Gram matrix is diag(u) K diag(u)^* with |u_i| = 1, so both
// share their spectrum.
double real_kernel(const FareyPoint& x, const FareyPoint& y, std::int64_t n);

// Full Hermitian Gram matrix G(x, y) built from kernel_entry.
Eigen::MatrixXcd gram_matrix(const FareyFamily& family, std::int64_t n,
                             std::int64_t m);

// sum_x |sum_n a_n e(x n)|^2 by direct evaluation.
double lhs_energy(const FareyFamily& family, const ComplexSequence& seq);

// lhs_energy / sum |a_n|^2. Throws std::invalid_argument on a zero sequence.
double ratio_for_sequence(const FareyFamily& family,
                          const ComplexSequence& seq);

// Toeplitz symbol c(d) = sum_x e(x d), d = 0..N-1, for the N x N dual Gram
// matrix T(n, m) = c(m - n). Computed directly from the points.
std::vector<Complex> dual_symbol_direct(const FareyFamily& family,
                                        std::int64_t n);

// Same symbol for a complete family through Ramanujan sums
// c_{q^k}(d) = sum_{e | gcd(q^k, d)} mu(q^k / e) e; exact integers.
std::vector<std::int64_t> dual_symbol_ramanujan(const FareyFamily& family,
                                                std::int64_t n);

enum class GramBackend {
  kAuto,
  kDenseKernel,
  kKernelOnTheFly,
  kToeplitz,
  kFoldedDft,
};

std::string backend_name(GramBackend backend);

struct DeltaStarOptions {
  EigenOptions eigen;
  GramBackend backend = GramBackend::kAuto;
  Budgets budgets;
};

// Operator whose top eigenvalue is Delta*; chosen per the options.
std::unique_ptr<SymmetricOperator> make_gram_operator(
    const FareyFamily& family, std::int64_t n, const DeltaStarOptions& options);

// Delta*(family, N): largest eigenvalue of the Gram matrix, i.e. the least
// constant in sum_x |sum_n a_n e(x n)|^2 <= Delta sum |a_n|^2. M does not
// change the spectrum; it is validated and recorded only.
EigenEstimate delta_star(const FareyFamily& family, std::int64_t n,
                         std::int64_t m, const DeltaStarOptions& options = {});

// Dense Hermitian eigendecomposition of gram_matrix(); oracle for
// delta_star. Throws ResourceLimitError above budgets.max_dense_eigen.
double delta_star_dense(const FareyFamily& family, std::int64_t n,
                        std::int64_t m, const Budgets& budgets = {});

struct DeltaStarRecord {
  int k = 0;
  std::int64_t q_min = 0, q_max = 0, n = 0, m = 0;
  std::size_t family_size = 0;
  EigenEstimate estimate;
  std::string min_spacing;
};
std::string delta_star_json(const DeltaStarRecord& record);

}  // namespace powersieve
