#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "corpus_scope/dtm.hpp"
#include "corpus_scope/svd.hpp"

// Correspondence analysis of a document-term matrix.
//
// With P = X / n, row masses a = P 1 and column masses b = P^T 1, the
// standardized residual matrix
//     S = D_a^{-1/2} (P - a b^T) D_b^{-1/2}
// is factored as S = U D_lambda V^T. Row principal coordinates are
// D_a^{-1/2} U D_lambda, column principal coordinates D_b^{-1/2} V D_lambda.
namespace corpus_scope::lsa {

enum class SvdMethod { Auto, Lanczos, Dense };

struct CaOptions {
  SvdMethod method = SvdMethod::Auto;
  Eigen::Index dense_threshold = 64;  // Auto uses the dense solver when min(n, p) <= this
  linalg::LanczosOptions lanczos{};
  unsigned threads = 1;
};

inline constexpr int kDefaultDims = 2;

struct CAModel {
  std::vector<std::string> row_ids;    // documents kept for the fit
  std::vector<std::string> col_terms;  // terms kept for the fit
  std::vector<std::string> dropped_rows;
  std::vector<std::string> dropped_cols;

  Eigen::VectorXd row_masses;
  Eigen::VectorXd col_masses;
  Eigen::VectorXd singular_values;  // descending, length retained_dims
  Eigen::MatrixXd row_standard;     // n x d, D_a^{-1/2} U
  Eigen::MatrixXd col_standard;     // p x d, D_b^{-1/2} V
  Eigen::MatrixXd row_coords;       // n x d principal coordinates
  Eigen::MatrixXd col_coords;       // p x d principal coordinates
  int retained_dims = 0;
  double total_inertia = 0;

  bool used_dense_solver = false;
  int solver_iterations = 0;

  /// Share of total inertia carried by each retained dimension.
  Eigen::VectorXd explained_inertia() const;
  /// Row index of a document id, or -1.
  Eigen::Index row_index(const std::string& doc_id) const;
};

/// Drops empty rows and columns (listed in the model), then fits. Throws
/// ConfigError when dims is outside [1, min(n, p) - 1] after dropping and
/// ConvergenceError when the iterative solver fails.
CAModel fit_ca(const text::SparseDTM& dtm, int dims = kDefaultDims, const CaOptions& options = {});

/// Sum over all cells of (p_ij - a_i b_j)^2 / (a_i b_j), i.e. chi^2 / n.
/// Throws DegenerateMarginError if any row or column marginal is zero.
double total_inertia(const text::SparseDTM& dtm);

/// Explicit standardized residual matrix S (dense, for small problems and checks).
Eigen::MatrixXd standardized_residuals(const text::SparseDTM& dtm);

/// Matrix-free S and S^T over the sparse counts (parallel over rows/columns).
linalg::LinearOperator residual_operator(const text::SparseDTM& dtm, unsigned threads = 1);

struct SupplementaryPoints {
  std::vector<std::string> labels;
  Eigen::MatrixXd coords;  // one row per label, principal coordinates
  std::vector<double> masses;
  std::vector<std::string> skipped;  // labels whose group was empty
};

/// Each label is placed at the mass-weighted barycenter of its member rows'
/// standard coordinates, scaled by the singular values. Throws NotFoundError
/// for a row id absent from the model.
SupplementaryPoints project_supplementary(
    const CAModel& model, const std::map<std::string, std::vector<std::string>>& groups);

struct RankedDocument {
  std::string doc_id;
  double score = 0;
};

/// Score = Euclidean norm of the row principal coordinates over retained
/// dimensions; descending, ties by ascending id.
std::vector<RankedDocument> representative_documents(const CAModel& model, std::size_t top_n);

}  // namespace corpus_scope::lsa
