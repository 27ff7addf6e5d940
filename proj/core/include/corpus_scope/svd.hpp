#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Core>

namespace corpus_scope::linalg {

/// Matrix-free operator: y = A x and y = A^T x. `apply` receives x of length
/// cols and must fill y (already sized rows); `apply_transpose` the reverse.
struct LinearOperator {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& y)> apply;
  std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& y)> apply_transpose;
};

struct TruncatedSvd {
  Eigen::VectorXd values;  // descending
  Eigen::MatrixXd left;    // rows x d
  Eigen::MatrixXd right;   // cols x d
  int iterations = 0;      // Lanczos steps (0 for the dense path)
  int restarts = 0;
  bool dense = false;
};

struct LanczosOptions {
  double tolerance = 1e-10;   // on Ritz residual norms, relative to ||A||
  int max_iterations = 1000;  // Lanczos steps across all restarts
  int basis_size = 0;         // 0: max(2d + 10, 20), capped by min(rows, cols)
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

/// Top-d singular triplets by Golub-Kahan-Lanczos bidiagonalization with full
/// reorthogonalization and thick restarts. When d >= min(rows, cols) the
/// operator is materialized and handed to dense_svd(). Throws
/// ConvergenceError after max_iterations steps.
TruncatedSvd lanczos_svd(const LinearOperator& op, int d, const LanczosOptions& options = {});

/// Top-d singular triplets of a dense matrix (divide and conquer SVD).
TruncatedSvd dense_svd(const Eigen::MatrixXd& a, int d);

/// Flips each triplet so the largest-magnitude entry of its left vector is
/// positive (first such entry on exact ties).
void canonicalize_signs(TruncatedSvd& svd);

}  // namespace corpus_scope::linalg
