#include "corpus_scope/dtm.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "corpus_scope/csv.hpp"
#include "corpus_scope/error.hpp"

namespace corpus_scope::text {

SparseDTM::SparseDTM(std::vector<std::string> row_ids, std::vector<std::string> col_terms,
                     std::vector<Triplet> triplets)
    : row_ids_(std::move(row_ids)), col_terms_(std::move(col_terms)) {
  const std::size_t n = row_ids_.size();
  const std::size_t p = col_terms_.size();
  for (const auto& t : triplets) {
    if (t.row >= n || t.col >= p) throw ConfigError("DTM triplet index out of range");
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  row_sums_.assign(n, 0);
  col_sums_.assign(p, 0);
  row_offsets_.assign(n + 1, 0);
  for (std::size_t k = 0; k < triplets.size();) {
    const std::size_t r = triplets[k].row;
    const std::size_t c = triplets[k].col;
    Count sum = 0;
    while (k < triplets.size() && triplets[k].row == r && triplets[k].col == c) {
      sum += triplets[k].count;
      ++k;
    }
    if (sum == 0) continue;
    col_indices_.push_back(c);
    values_.push_back(sum);
    ++row_offsets_[r + 1];
    row_sums_[r] += sum;
    col_sums_[c] += sum;
    total_ += sum;
  }
  for (std::size_t i = 0; i < n; ++i) row_offsets_[i + 1] += row_offsets_[i];

  col_offsets_.assign(p + 1, 0);
  for (std::size_t c : col_indices_) ++col_offsets_[c + 1];
  for (std::size_t j = 0; j < p; ++j) col_offsets_[j + 1] += col_offsets_[j];
  row_indices_.resize(values_.size());
  col_values_.resize(values_.size());
  std::vector<std::size_t> cursor(col_offsets_.begin(), col_offsets_.end() - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      const std::size_t slot = cursor[col_indices_[k]]++;
      row_indices_[slot] = i;
      col_values_[slot] = values_[k];
    }
  }
}

SparseDTM SparseDTM::from_dense(const std::vector<std::vector<Count>>& rows) {
  const std::size_t p = rows.empty() ? 0 : rows.front().size();
  std::vector<std::string> ids;
  std::vector<std::string> terms;
  std::vector<Triplet> triplets;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != p) throw ConfigError("ragged dense matrix");
    ids.push_back(fmt::format("d{}", i));
    for (std::size_t j = 0; j < p; ++j) {
      if (rows[i][j] != 0) triplets.push_back({i, j, rows[i][j]});
    }
  }
  for (std::size_t j = 0; j < p; ++j) terms.push_back(fmt::format("t{}", j));
  return SparseDTM(std::move(ids), std::move(terms), std::move(triplets));
}

SparseDTM::Count SparseDTM::at(std::size_t row, std::size_t col) const {
  if (row >= n_rows() || col >= n_cols()) throw ConfigError("DTM index out of range");
  auto first = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[row]);
  auto last = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[row + 1]);
  auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0;
  return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

Eigen::MatrixXd SparseDTM::to_dense() const {
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_rows()),
                                                static_cast<Eigen::Index>(n_cols()));
  for (std::size_t i = 0; i < n_rows(); ++i) {
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col_indices_[k])) =
          static_cast<double>(values_[k]);
    }
  }
  return dense;
}

SparseDTM SparseDTM::without_empty_lines(std::vector<std::string>* dropped_rows,
                                         std::vector<std::string>* dropped_cols) const {
  constexpr std::size_t kGone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> row_map(n_rows(), kGone);
  std::vector<std::size_t> col_map(n_cols(), kGone);
  std::vector<std::string> ids;
  std::vector<std::string> terms;
  for (std::size_t i = 0; i < n_rows(); ++i) {
    if (row_sums_[i] > 0) {
      row_map[i] = ids.size();
      ids.push_back(row_ids_[i]);
    } else if (dropped_rows) {
      dropped_rows->push_back(row_ids_[i]);
    }
  }
  for (std::size_t j = 0; j < n_cols(); ++j) {
    if (col_sums_[j] > 0) {
      col_map[j] = terms.size();
      terms.push_back(col_terms_[j]);
    } else if (dropped_cols) {
      dropped_cols->push_back(col_terms_[j]);
    }
  }
  std::vector<Triplet> triplets;
  triplets.reserve(values_.size());
  for (std::size_t i = 0; i < n_rows(); ++i) {
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      triplets.push_back({row_map[i], col_map[col_indices_[k]], values_[k]});
    }
  }
  return SparseDTM(std::move(ids), std::move(terms), std::move(triplets));
}

SparseDTM build_dtm(const std::vector<TokenSequence>& sequences, const Vocabulary& vocab) {
  if (vocab.empty()) throw ConfigError("cannot build a DTM over an empty vocabulary");
  std::vector<std::string> ids;
  ids.reserve(sequences.size());
  std::vector<SparseDTM::Triplet> triplets;
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    ids.push_back(sequences[i].doc_id);
    std::map<std::size_t, SparseDTM::Count> row;
    for (const auto& t : sequences[i].tokens) {
      if (auto j = vocab.index_of(t)) ++row[*j];
    }
    for (const auto& [j, c] : row) triplets.push_back({i, j, c});
  }
  return SparseDTM(std::move(ids), vocab.terms(), std::move(triplets));
}

std::string to_matrix_market(const SparseDTM& dtm) {
  std::string out = "%%MatrixMarket matrix coordinate integer general\n";
  out += fmt::format("{} {} {}\n", dtm.n_rows(), dtm.n_cols(), dtm.nonzeros());
  const auto offsets = dtm.row_offsets();
  const auto cols = dtm.col_indices();
  const auto vals = dtm.values();
  for (std::size_t i = 0; i < dtm.n_rows(); ++i) {
    for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k) {
      out += fmt::format("{} {} {}\n", i + 1, cols[k] + 1, vals[k]);
    }
  }
  return out;
}

std::string to_index_csv(const SparseDTM& dtm) {
  std::string out = "axis,index,label\n";
  for (std::size_t i = 0; i < dtm.n_rows(); ++i) {
    csv::append_row(out, {"doc", fmt::format("{}", i + 1), dtm.row_ids()[i]});
  }
  for (std::size_t j = 0; j < dtm.n_cols(); ++j) {
    csv::append_row(out, {"term", fmt::format("{}", j + 1), dtm.col_terms()[j]});
  }
  return out;
}

}  // namespace corpus_scope::text
