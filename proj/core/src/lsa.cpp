#include "corpus_scope/lsa.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include <fmt/format.h>

#include "corpus_scope/error.hpp"
#include "corpus_scope/parallel.hpp"

namespace corpus_scope::lsa {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Masses {
  VectorXd rows;
  VectorXd cols;
};

Masses masses_of(const text::SparseDTM& dtm) {
  const double n = static_cast<double>(dtm.total());
  Masses m{VectorXd(static_cast<Index>(dtm.n_rows())), VectorXd(static_cast<Index>(dtm.n_cols()))};
  for (std::size_t i = 0; i < dtm.n_rows(); ++i) {
    if (dtm.row_sums()[i] == 0) {
      throw DegenerateMarginError("document '" + dtm.row_ids()[i] + "' has zero marginal");
    }
    m.rows(static_cast<Index>(i)) = static_cast<double>(dtm.row_sums()[i]) / n;
  }
  for (std::size_t j = 0; j < dtm.n_cols(); ++j) {
    if (dtm.col_sums()[j] == 0) {
      throw DegenerateMarginError("term '" + dtm.col_terms()[j] + "' has zero marginal");
    }
    m.cols(static_cast<Index>(j)) = static_cast<double>(dtm.col_sums()[j]) / n;
  }
  return m;
}

}  // namespace

Eigen::VectorXd CAModel::explained_inertia() const {
  if (total_inertia <= 0) return VectorXd::Zero(singular_values.size());
  return singular_values.array().square() / total_inertia;
}

Eigen::Index CAModel::row_index(const std::string& doc_id) const {
  auto it = std::find(row_ids.begin(), row_ids.end(), doc_id);
  return it == row_ids.end() ? -1 : static_cast<Index>(it - row_ids.begin());
}

double total_inertia(const text::SparseDTM& dtm) {
  if (dtm.n_rows() == 0 || dtm.n_cols() == 0) throw DegenerateMarginError("empty matrix");
  const Masses m = masses_of(dtm);
  const double n = static_cast<double>(dtm.total());
  const auto offsets = dtm.row_offsets();
  const auto cols = dtm.col_indices();
  const auto vals = dtm.values();

  double inertia = 0.0;
  for (std::size_t i = 0; i < dtm.n_rows(); ++i) {
    const double a = m.rows(static_cast<Index>(i));
    std::size_t k = offsets[i];
    double row_sum = 0.0;
    for (std::size_t j = 0; j < dtm.n_cols(); ++j) {
      double p = 0.0;
      if (k < offsets[i + 1] && cols[k] == j) {
        p = static_cast<double>(vals[k]) / n;
        ++k;
      }
      const double expected = a * m.cols(static_cast<Index>(j));
      const double diff = p - expected;
      row_sum += diff * diff / expected;
    }
    inertia += row_sum;
  }
  return inertia;
}

Eigen::MatrixXd standardized_residuals(const text::SparseDTM& dtm) {
  const Masses m = masses_of(dtm);
  const double n = static_cast<double>(dtm.total());
  const auto rows = static_cast<Index>(dtm.n_rows());
  const auto cols = static_cast<Index>(dtm.n_cols());
  MatrixXd s(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const double expected = m.rows(i) * m.cols(j);
      s(i, j) = -expected / std::sqrt(expected);
    }
  }
  const auto offsets = dtm.row_offsets();
  const auto idx = dtm.col_indices();
  const auto vals = dtm.values();
  for (std::size_t i = 0; i < dtm.n_rows(); ++i) {
    for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k) {
      const auto r = static_cast<Index>(i);
      const auto c = static_cast<Index>(idx[k]);
      const double expected = m.rows(r) * m.cols(c);
      s(r, c) = (static_cast<double>(vals[k]) / n - expected) / std::sqrt(expected);
    }
  }
  return s;
}

linalg::LinearOperator residual_operator(const text::SparseDTM& dtm, unsigned threads) {
  const Masses m = masses_of(dtm);
  struct State {
    const text::SparseDTM* dtm;
    VectorXd a, b, sqrt_a, sqrt_b;
    double n;
    unsigned threads;
  };
  auto st = std::make_shared<State>(State{&dtm, m.rows, m.cols, m.rows.cwiseSqrt(),
                                          m.cols.cwiseSqrt(), static_cast<double>(dtm.total()),
                                          threads});

  linalg::LinearOperator op;
  op.rows = static_cast<Index>(dtm.n_rows());
  op.cols = static_cast<Index>(dtm.n_cols());

  // S x = D_a^{-1/2} (P D_b^{-1/2} x - a (sqrt(b) . x))
  op.apply = [st](const VectorXd& x, VectorXd& y) {
    const double shift = st->sqrt_b.dot(x);
    const auto offsets = st->dtm->row_offsets();
    const auto cols = st->dtm->col_indices();
    const auto vals = st->dtm->values();
    parallel_chunks(st->dtm->n_rows(), st->threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        double acc = 0.0;
        for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k) {
          const auto j = static_cast<Index>(cols[k]);
          acc += static_cast<double>(vals[k]) * x(j) / st->sqrt_b(j);
        }
        const auto r = static_cast<Index>(i);
        y(r) = (acc / st->n - st->a(r) * shift) / st->sqrt_a(r);
      }
    });
  };
  // S^T u = D_b^{-1/2} (P^T D_a^{-1/2} u - b (sqrt(a) . u))
  op.apply_transpose = [st](const VectorXd& u, VectorXd& y) {
    const double shift = st->sqrt_a.dot(u);
    const auto offsets = st->dtm->col_offsets();
    const auto rows = st->dtm->row_indices();
    const auto vals = st->dtm->col_values();
    parallel_chunks(st->dtm->n_cols(), st->threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t j = begin; j < end; ++j) {
        double acc = 0.0;
        for (std::size_t k = offsets[j]; k < offsets[j + 1]; ++k) {
          const auto i = static_cast<Index>(rows[k]);
          acc += static_cast<double>(vals[k]) * u(i) / st->sqrt_a(i);
        }
        const auto c = static_cast<Index>(j);
        y(c) = (acc / st->n - st->b(c) * shift) / st->sqrt_b(c);
      }
    });
  };
  return op;
}

CAModel fit_ca(const text::SparseDTM& input, int dims, const CaOptions& options) {
  CAModel model;
  const text::SparseDTM dtm = input.without_empty_lines(&model.dropped_rows, &model.dropped_cols);
  const auto n = static_cast<Index>(dtm.n_rows());
  const auto p = static_cast<Index>(dtm.n_cols());
  const Index max_dims = std::min(n, p) - 1;
  if (max_dims < 1) {
    throw ConfigError(fmt::format(
        "correspondence analysis needs at least 2 non-empty rows and columns, got {}x{}", n, p));
  }
  if (dims < 1 || dims > max_dims) {
    throw ConfigError(fmt::format("CA dims must lie in [1, {}], got {}", max_dims, dims));
  }

  const Masses m = masses_of(dtm);
  model.row_ids = dtm.row_ids();
  model.col_terms = dtm.col_terms();
  model.row_masses = m.rows;
  model.col_masses = m.cols;
  model.total_inertia = total_inertia(dtm);
  model.retained_dims = dims;

  bool dense = options.method == SvdMethod::Dense ||
               (options.method == SvdMethod::Auto && std::min(n, p) <= options.dense_threshold);
  linalg::TruncatedSvd svd = dense ? linalg::dense_svd(standardized_residuals(dtm), dims)
                                   : linalg::lanczos_svd(residual_operator(dtm, options.threads),
                                                         dims, options.lanczos);
  model.used_dense_solver = svd.dense;
  model.solver_iterations = svd.iterations;
  model.singular_values = svd.values;

  const VectorXd inv_sqrt_a = m.rows.cwiseSqrt().cwiseInverse();
  const VectorXd inv_sqrt_b = m.cols.cwiseSqrt().cwiseInverse();
  model.row_standard = inv_sqrt_a.asDiagonal() * svd.left;
  model.col_standard = inv_sqrt_b.asDiagonal() * svd.right;
  model.row_coords = model.row_standard * svd.values.asDiagonal();
  model.col_coords = model.col_standard * svd.values.asDiagonal();
  return model;
}

SupplementaryPoints project_supplementary(
    const CAModel& model, const std::map<std::string, std::vector<std::string>>& groups) {
  SupplementaryPoints out;
  std::vector<VectorXd> points;
  for (const auto& [label, members] : groups) {
    VectorXd acc = VectorXd::Zero(model.retained_dims);
    double mass = 0.0;
    for (const auto& id : members) {
      const Index r = model.row_index(id);
      if (r < 0) throw NotFoundError("row '" + id + "' is not part of the fitted model");
      acc += model.row_masses(r) * model.row_standard.row(r).transpose();
      mass += model.row_masses(r);
    }
    if (members.empty() || mass <= 0) {
      out.skipped.push_back(label);
      continue;
    }
    out.labels.push_back(label);
    out.masses.push_back(mass);
    points.push_back((acc / mass).cwiseProduct(model.singular_values));
  }
  out.coords.resize(static_cast<Index>(points.size()), model.retained_dims);
  for (std::size_t k = 0; k < points.size(); ++k) {
    out.coords.row(static_cast<Index>(k)) = points[k].transpose();
  }
  return out;
}

std::vector<RankedDocument> representative_documents(const CAModel& model, std::size_t top_n) {
  std::vector<RankedDocument> ranked;
  ranked.reserve(model.row_ids.size());
  for (std::size_t i = 0; i < model.row_ids.size(); ++i) {
    ranked.push_back({model.row_ids[i], model.row_coords.row(static_cast<Index>(i)).norm()});
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedDocument& a, const RankedDocument& b) {
    return a.score != b.score ? a.score > b.score : a.doc_id < b.doc_id;
  });
  if (ranked.size() > top_n) ranked.resize(top_n);
  return ranked;
}

}  // namespace corpus_scope::lsa
