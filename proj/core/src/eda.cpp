#include "corpus_scope/eda.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <Eigen/Dense>
#include <boost/math/distributions/fisher_f.hpp>
#include <fmt/format.h>

#include "corpus_scope/error.hpp"

namespace corpus_scope::eda {

YearSeries::YearSeries(std::vector<YearCount> points) : points_(std::move(points)) {
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i].year <= points_[i - 1].year) {
      throw ConfigError("year series must be strictly increasing in year");
    }
  }
}

YearCounts counts_per_year(const Corpus& corpus) {
  std::map<int, std::uint64_t> counts;
  std::size_t missing = 0;
  for (const auto& d : corpus.documents()) {
    if (d.year) {
      ++counts[*d.year];
    } else {
      ++missing;
    }
  }
  if (counts.empty()) throw EmptyCorpusError("no document carries a publication year");
  std::vector<YearCount> points;
  points.reserve(counts.size());
  for (const auto& [year, n] : counts) points.push_back({year, n});
  return {YearSeries(std::move(points)), missing};
}

double QuadraticFit::evaluate(double x) const {
  const double t = x - x_center;
  return (c2 * t + c1) * t + c0;
}

QuadraticFit fit_quadratic(const YearSeries& series, XEncoding encoding) {
  const auto& pts = series.points();
  const auto n = static_cast<Eigen::Index>(pts.size());
  if (n < 4) {
    throw InsufficientDataError(
        fmt::format("quadratic trend needs at least 4 points, got {}", pts.size()));
  }

  QuadraticFit fit;
  fit.encoding = encoding;
  fit.n_points = pts.size();
  fit.first_year = pts.front().year;
  fit.last_year = pts.back().year;
  if (encoding == XEncoding::CenteredYear) {
    double sum = 0;
    for (const auto& p : pts) sum += p.year;
    fit.x_center = sum / static_cast<double>(n);
  }

  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = pts[static_cast<std::size_t>(i)].year - fit.x_center;
    design(i, 0) = 1.0;
    design(i, 1) = t;
    design(i, 2) = t * t;
    y(i) = static_cast<double>(pts[static_cast<std::size_t>(i)].count);
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 3) throw DegenerateDesignError("quadratic design matrix is rank deficient");
  const Eigen::VectorXd coef = qr.solve(y);
  fit.c0 = coef(0);
  fit.c1 = coef(1);
  fit.c2 = coef(2);

  const double m = fit.x_center;
  fit.a2 = fit.c2;
  fit.a1 = fit.c1 - 2.0 * fit.c2 * m;
  fit.a0 = fit.c2 * m * m - fit.c1 * m + fit.c0;

  const double mean_y = y.mean();
  const Eigen::VectorXd residual = y - design * coef;
  const double sse = residual.squaredNorm();
  const double sst = (y.array() - mean_y).square().sum();

  const double df_model = 2.0;
  const double df_resid = static_cast<double>(n - 3);
  if (sst == 0.0) {
    fit.degenerate = true;
    fit.r_squared = 1.0;
    fit.f_statistic = 0.0;
    fit.p_value = 1.0;
    return fit;
  }
  fit.r_squared = std::clamp(1.0 - sse / sst, 0.0, 1.0);
  const double ssr = std::max(sst - sse, 0.0);
  if (sse <= sst * 1e-15) {
    fit.f_statistic = std::numeric_limits<double>::infinity();
    fit.p_value = 0.0;
    return fit;
  }
  fit.f_statistic = (ssr / df_model) / (sse / df_resid);
  boost::math::fisher_f_distribution<double> dist(df_model, df_resid);
  fit.p_value = std::clamp(boost::math::cdf(boost::math::complement(dist, fit.f_statistic)), 0.0, 1.0);
  return fit;
}

Forecast forecast(const QuadraticFit& fit, int year, bool allow_extrapolation) {
  if (!allow_extrapolation &&
      (year < fit.first_year - kForecastWindow || year > fit.last_year + kForecastWindow)) {
    throw ExtrapolationError(fmt::format("year {} is more than {} years outside the fitted range {}-{}",
                                         year, kForecastWindow, fit.first_year, fit.last_year));
  }
  Forecast out;
  out.year = year;
  out.value = fit.evaluate(year);
  if (out.value < 0) {
    out.value = 0;
    out.clamped = true;
  }
  return out;
}

std::vector<TermFrequency> top_terms(const text::SparseDTM& dtm, const text::Vocabulary& vocab,
                                     std::size_t k) {
  if (k == 0) throw ConfigError("top_terms needs k >= 1");
  if (dtm.n_cols() != vocab.size()) throw ConfigError("DTM and vocabulary disagree in size");

  std::vector<std::size_t> order(dtm.n_cols());
  std::iota(order.begin(), order.end(), 0);
  const auto& freq = dtm.col_sums();
  const auto& terms = vocab.terms();
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return freq[a] != freq[b] ? freq[a] > freq[b] : terms[a] < terms[b];
  });
  if (order.size() > k) order.resize(k);

  std::vector<TermFrequency> out;
  out.reserve(order.size());
  std::uint64_t running = 0;
  const double total = static_cast<double>(dtm.total());
  for (std::size_t j : order) {
    running += freq[j];
    out.push_back({terms[j], freq[j], total > 0 ? static_cast<double>(running) / total : 0.0});
  }
  return out;
}

std::vector<int> largest_remainder_percentages(const std::vector<std::uint64_t>& counts) {
  const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  std::vector<int> out(counts.size(), 0);
  if (total == 0) return out;

  std::vector<std::uint64_t> remainder(counts.size());
  int assigned = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const std::uint64_t scaled = counts[i] * 100;
    out[i] = static_cast<int>(scaled / total);
    remainder[i] = scaled % total;
    assigned += out[i];
  }
  std::vector<std::size_t> order(counts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t r = 0; assigned < 100 && r < order.size(); ++r, ++assigned) ++out[order[r]];
  return out;
}

std::vector<TypeShare> type_shares(const Corpus& corpus) {
  if (corpus.empty()) throw EmptyCorpusError("type shares of an empty corpus");
  std::map<DocType, std::uint64_t> counts;
  for (const auto& d : corpus.documents()) ++counts[d.doc_type];

  std::vector<TypeShare> out;
  std::vector<std::uint64_t> raw;
  for (DocType t : kAllDocTypes) {
    auto it = counts.find(t);
    if (it == counts.end()) continue;
    out.push_back({t, it->second, 100.0 * static_cast<double>(it->second) / corpus.size(), 0});
    raw.push_back(it->second);
  }
  const auto rounded = largest_remainder_percentages(raw);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].percent = rounded[i];
  return out;
}

}  // namespace corpus_scope::eda
