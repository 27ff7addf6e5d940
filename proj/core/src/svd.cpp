#include "corpus_scope/svd.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/SVD>
#include <fmt/format.h>

#include "corpus_scope/error.hpp"

namespace corpus_scope::linalg {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Uniform in [-1, 1) from raw 64-bit draws, independent of the standard
// library's distribution implementations.
VectorXd random_vector(Index n, std::mt19937_64& rng) {
  VectorXd v(n);
  for (Index i = 0; i < n; ++i) {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    v(i) = 2.0 * unit - 1.0;
  }
  return v;
}

// Two passes of classical Gram-Schmidt against the first `count` columns.
// Projection coefficients are accumulated into `coeffs` when given.
void orthogonalize(VectorXd& w, const MatrixXd& basis, Index count, double* coeffs = nullptr) {
  if (count == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    const VectorXd c = basis.leftCols(count).transpose() * w;
    w.noalias() -= basis.leftCols(count) * c;
    if (coeffs) {
      for (Index i = 0; i < count; ++i) coeffs[i] += c(i);
    }
  }
}

// A random unit vector orthogonal to the first `count` columns of `basis`.
VectorXd fresh_direction(const MatrixXd& basis, Index count, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    VectorXd v = random_vector(basis.rows(), rng);
    orthogonalize(v, basis, count);
    const double norm = v.norm();
    if (norm > 1e-8) return v / norm;
  }
  throw ConvergenceError("could not extend an exhausted Krylov basis", 0);
}

TruncatedSvd materialize(const LinearOperator& op, int d) {
  MatrixXd a(op.rows, op.cols);
  VectorXd e = VectorXd::Zero(op.cols);
  VectorXd col(op.rows);
  for (Index j = 0; j < op.cols; ++j) {
    e(j) = 1.0;
    op.apply(e, col);
    a.col(j) = col;
    e(j) = 0.0;
  }
  return dense_svd(a, d);
}

}  // namespace

void canonicalize_signs(TruncatedSvd& svd) {
  for (Index k = 0; k < svd.left.cols(); ++k) {
    Index arg = 0;
    double best = -1.0;
    for (Index i = 0; i < svd.left.rows(); ++i) {
      const double mag = std::abs(svd.left(i, k));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    if (svd.left.rows() > 0 && svd.left(arg, k) < 0) {
      svd.left.col(k) *= -1.0;
      svd.right.col(k) *= -1.0;
    }
  }
}

TruncatedSvd dense_svd(const MatrixXd& a, int d) {
  const Index r = std::min(a.rows(), a.cols());
  if (d < 1 || d > r) throw ConfigError(fmt::format("cannot take {} singular triplets of a {}x{} matrix", d, a.rows(), a.cols()));
  Eigen::BDCSVD<MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  TruncatedSvd out;
  out.values = svd.singularValues().head(d);
  out.left = svd.matrixU().leftCols(d);
  out.right = svd.matrixV().leftCols(d);
  out.dense = true;
  canonicalize_signs(out);
  return out;
}

TruncatedSvd lanczos_svd(const LinearOperator& op, int d, const LanczosOptions& options) {
  const Index rank_cap = std::min(op.rows, op.cols);
  if (d < 1 || d > rank_cap) {
    throw ConfigError(fmt::format("cannot take {} singular triplets of a {}x{} operator", d,
                                  op.rows, op.cols));
  }
  if (d >= rank_cap) return materialize(op, d);

  Index m = options.basis_size > 0 ? options.basis_size : std::max<Index>(2 * d + 10, 20);
  m = std::clamp<Index>(m, d + 1, rank_cap);

  std::mt19937_64 rng(options.seed);
  MatrixXd V = MatrixXd::Zero(op.cols, m);
  MatrixXd U = MatrixXd::Zero(op.rows, m);
  MatrixXd B = MatrixXd::Zero(m, m);
  VectorXd w(op.rows);
  VectorXd f(op.cols);

  V.col(0) = random_vector(op.cols, rng).normalized();
  Index kept = 0;
  double anorm = 0.0;  // running estimate of ||A||
  int steps = 0;
  int restarts = 0;

  while (true) {
    double beta = 0.0;
    for (Index j = kept; j < m; ++j) {
      if (steps >= options.max_iterations) {
        throw ConvergenceError(
            fmt::format("truncated SVD did not converge within {} Lanczos steps", steps), steps);
      }
      ++steps;

      op.apply(V.col(j), w);
      // Column j of B collects the projections onto earlier left vectors;
      // these are the bidiagonal entry and, after a restart, the arrowhead.
      std::vector<double> coeffs(static_cast<std::size_t>(j), 0.0);
      orthogonalize(w, U, j, coeffs.data());
      for (Index i = 0; i < j; ++i) B(i, j) = coeffs[static_cast<std::size_t>(i)];
      double alpha = w.norm();
      anorm = std::max(anorm, alpha);
      if (alpha <= 1e-13 * anorm) {
        U.col(j) = fresh_direction(U, j, rng);
        alpha = 0.0;
      } else {
        U.col(j) = w / alpha;
      }
      B(j, j) = alpha;

      op.apply_transpose(U.col(j), f);
      f.noalias() -= alpha * V.col(j);
      orthogonalize(f, V, j + 1);
      beta = f.norm();
      anorm = std::max(anorm, beta);
      if (j + 1 < m) {
        if (beta <= 1e-13 * anorm) {
          V.col(j + 1) = fresh_direction(V, j + 1, rng);
        } else {
          V.col(j + 1) = f / beta;
        }
      }
    }

    Eigen::JacobiSVD<MatrixXd> small(B, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const VectorXd& sigma = small.singularValues();
    const MatrixXd& P = small.matrixU();
    const MatrixXd& Q = small.matrixV();
    anorm = std::max(anorm, sigma(0));

    bool converged = true;
    const double threshold = options.tolerance * anorm;
    for (Index i = 0; i < d; ++i) {
      if (beta * std::abs(P(m - 1, i)) > threshold) {
        converged = false;
        break;
      }
    }

    if (converged) {
      TruncatedSvd out;
      out.values = sigma.head(d);
      out.left = U * P.leftCols(d);
      out.right = V * Q.leftCols(d);
      out.iterations = steps;
      out.restarts = restarts;
      canonicalize_signs(out);
      return out;
    }

    // Thick restart: keep the leading Ritz vectors, continue from the residual.
    const Index keep = std::clamp<Index>(d + (m - d) / 2, d, m - 1);
    const MatrixXd new_u = U * P.leftCols(keep);
    const MatrixXd new_v = V * Q.leftCols(keep);
    U.leftCols(keep) = new_u;
    V.leftCols(keep) = new_v;
    B.setZero();
    for (Index i = 0; i < keep; ++i) B(i, i) = sigma(i);
    if (beta <= 1e-13 * anorm) {
      V.col(keep) = fresh_direction(V, keep, rng);
    } else {
      f /= beta;
      orthogonalize(f, V, keep);
      V.col(keep) = f.normalized();
    }
    kept = keep;
    ++restarts;
  }
}

}  // namespace corpus_scope::linalg
