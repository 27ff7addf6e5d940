#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "corpus_scope/vocabulary.hpp"

namespace corpus_scope::text {

/// Document-term count matrix in compressed-row form with a compressed-column
/// companion. Row i is a document, column j a vocabulary term; all marginals
/// are exact integer sums of the stored counts.
class SparseDTM {
 public:
  using Count = std::uint64_t;

  struct Triplet {
    std::size_t row;
    std::size_t col;
    Count count;
  };

  SparseDTM() = default;

  /// Duplicate (row, col) triplets are summed; zero counts are not stored.
  SparseDTM(std::vector<std::string> row_ids, std::vector<std::string> col_terms,
            std::vector<Triplet> triplets);

  /// Convenience for small matrices given row-major; ids and terms are
  /// generated as "d0.." and "t0..".
  static SparseDTM from_dense(const std::vector<std::vector<Count>>& rows);

  std::size_t n_rows() const noexcept { return row_ids_.size(); }
  std::size_t n_cols() const noexcept { return col_terms_.size(); }
  std::size_t nonzeros() const noexcept { return values_.size(); }

  const std::vector<std::string>& row_ids() const noexcept { return row_ids_; }
  const std::vector<std::string>& col_terms() const noexcept { return col_terms_; }

  const std::vector<Count>& row_sums() const noexcept { return row_sums_; }
  const std::vector<Count>& col_sums() const noexcept { return col_sums_; }
  Count total() const noexcept { return total_; }

  Count at(std::size_t row, std::size_t col) const;

  // Compressed-row view.
  std::span<const std::size_t> row_offsets() const noexcept { return row_offsets_; }
  std::span<const std::size_t> col_indices() const noexcept { return col_indices_; }
  std::span<const Count> values() const noexcept { return values_; }

  // Compressed-column view.
  std::span<const std::size_t> col_offsets() const noexcept { return col_offsets_; }
  std::span<const std::size_t> row_indices() const noexcept { return row_indices_; }
  std::span<const Count> col_values() const noexcept { return col_values_; }

  Eigen::MatrixXd to_dense() const;

  /// Copy restricted to rows and columns with positive marginals.
  SparseDTM without_empty_lines(std::vector<std::string>* dropped_rows = nullptr,
                                std::vector<std::string>* dropped_cols = nullptr) const;

 private:
  std::vector<std::string> row_ids_;
  std::vector<std::string> col_terms_;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::size_t> col_indices_;
  std::vector<Count> values_;
  std::vector<std::size_t> col_offsets_{0};
  std::vector<std::size_t> row_indices_;
  std::vector<Count> col_values_;
  std::vector<Count> row_sums_;
  std::vector<Count> col_sums_;
  Count total_ = 0;
};

/// Counts vocabulary terms per document; out-of-vocabulary tokens are ignored
/// and documents without in-vocabulary tokens become all-zero rows.
SparseDTM build_dtm(const std::vector<TokenSequence>& sequences, const Vocabulary& vocab);

/// MatrixMarket "coordinate integer general", 1-based indices, row-major order.
std::string to_matrix_market(const SparseDTM& dtm);

/// Sidecar index: axis,index,label with axis in {doc, term} and 1-based index
/// matching the MatrixMarket file.
std::string to_index_csv(const SparseDTM& dtm);

}  // namespace corpus_scope::text
