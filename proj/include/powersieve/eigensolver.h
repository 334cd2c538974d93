#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <string>

namespace powersieve {

// Real symmetric positive semidefinite operator applied to blocks of
// column vectors.
class SymmetricOperator {
 public:
  virtual ~SymmetricOperator() = default;
  virtual std::size_t dim() const = 0;
  // out = A * in; `out` is resized by the callee.
  virtual void apply(const Eigen::MatrixXd& in, Eigen::MatrixXd& out) const = 0;
  virtual std::string name() const = 0;
};

// Explicit symmetric matrix.
class DenseSymmetricOperator : public SymmetricOperator {
 public:
  explicit DenseSymmetricOperator(Eigen::MatrixXd matrix,
                                  std::string name = "dense")
      : matrix_(std::move(matrix)), name_(std::move(name)) {}
  std::size_t dim() const override {
    return static_cast<std::size_t>(matrix_.rows());
  }
  void apply(const Eigen::MatrixXd& in, Eigen::MatrixXd& out) const override {
    out.noalias() = matrix_ * in;
  }
  std::string name() const override { return name_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

 private:
  Eigen::MatrixXd matrix_;
  std::string name_;
};

enum class EigenMethod { kLobpcg, kPower };

struct EigenOptions {
  EigenMethod method = EigenMethod::kLobpcg;
  // Convergence when ||A v - lambda v|| <= tolerance * lambda.
  double tolerance = 1e-10;
  int max_iterations = 20000;
  int block_size = 8;
  // Below this dimension the operator is materialized and solved densely.
  std::size_t dense_cutoff = 48;
  // Mixed into the pseudo-random start columns.
  std::uint64_t seed = 0;
};

struct EigenEstimate {
  double value = 0.0;
  // ||A v - lambda v|| / ||v||.
  double residual = 0.0;
  // residual / value.
  double relative_residual = 0.0;
  int iterations = 0;
  std::string method;
  std::string backend;
};

// Largest eigenvalue of a symmetric PSD operator. Deterministic start
// block (all-ones plus a fixed perturbation). Throws ConvergenceError with
// the best estimate when max_iterations is reached.
EigenEstimate top_eigenvalue(const SymmetricOperator& op,
                             const EigenOptions& options = {});

EigenEstimate power_iteration(const SymmetricOperator& op,
                              const EigenOptions& options);
EigenEstimate lobpcg(const SymmetricOperator& op, const EigenOptions& options);

}  // namespace powersieve
