#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "corpus_scope/document.hpp"
#include "corpus_scope/dtm.hpp"
#include "corpus_scope/vocabulary.hpp"

// Exploratory statistics: publications per year, a quadratic trend with
// forecast, frequent terms and publication-type shares.
namespace corpus_scope::eda {

struct YearCount {
  int year = 0;
  std::uint64_t count = 0;

  friend bool operator==(const YearCount&, const YearCount&) = default;
};

/// Points strictly increasing in year.
class YearSeries {
 public:
  YearSeries() = default;
  /// Throws ConfigError unless years are strictly increasing.
  explicit YearSeries(std::vector<YearCount> points);

  const std::vector<YearCount>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

  friend bool operator==(const YearSeries&, const YearSeries&) = default;

 private:
  std::vector<YearCount> points_;
};

struct YearCounts {
  YearSeries series;
  std::size_t missing_year = 0;  // documents excluded for lack of a year
};

/// Throws EmptyCorpusError when no document carries a year.
YearCounts counts_per_year(const Corpus& corpus);

enum class XEncoding { RawYear, CenteredYear };

/// y(x) = a2 x^2 + a1 x + a0 over raw calendar years, plus the coefficients
/// actually solved for under `encoding`.
struct QuadraticFit {
  double a2 = 0, a1 = 0, a0 = 0;
  // Coefficients in the solved encoding: y = c2 t^2 + c1 t + c0 with
  // t = x - x_center (x_center == 0 for RawYear).
  double c2 = 0, c1 = 0, c0 = 0;
  double x_center = 0;
  XEncoding encoding = XEncoding::CenteredYear;

  double r_squared = 0;
  double f_statistic = 0;
  double p_value = 1;
  bool degenerate = false;  // zero variance in y: R^2 reported as 1

  std::size_t n_points = 0;
  int first_year = 0;
  int last_year = 0;

  /// Model value at x, evaluated in the solved encoding.
  double evaluate(double x) const;
};

/// Ordinary least squares on [1, t, t^2]. Overall-regression F-test with
/// (2, n-3) degrees of freedom. Throws InsufficientDataError below 4 points,
/// DegenerateDesignError when the design is rank deficient.
QuadraticFit fit_quadratic(const YearSeries& series,
                           XEncoding encoding = XEncoding::CenteredYear);

inline constexpr int kForecastWindow = 10;

struct Forecast {
  int year = 0;
  double value = 0;
  bool clamped = false;  // model value was negative and reported as 0
};

/// Throws ExtrapolationError when `year` lies more than kForecastWindow years
/// outside the fitted range, unless `allow_extrapolation` is set.
Forecast forecast(const QuadraticFit& fit, int year, bool allow_extrapolation = false);

struct TermFrequency {
  std::string term;
  std::uint64_t frequency = 0;
  double cumulative_share = 0;  // running frequency sum / DTM grand total
};

/// Descending frequency, ties by ascending term; k larger than the vocabulary
/// returns every term.
std::vector<TermFrequency> top_terms(const text::SparseDTM& dtm, const text::Vocabulary& vocab,
                                     std::size_t k);

struct TypeShare {
  DocType type = DocType::Other;
  std::uint64_t count = 0;
  double exact_percent = 0;
  int percent = 0;  // largest-remainder rounding; sums to exactly 100
};

/// Types that occur in the corpus, in DocType declaration order.
/// Throws EmptyCorpusError on an empty corpus.
std::vector<TypeShare> type_shares(const Corpus& corpus);

/// Rounds non-negative counts to integer percentages summing to 100 using the
/// largest-remainder method; remainder ties go to the earlier entry.
std::vector<int> largest_remainder_percentages(const std::vector<std::uint64_t>& counts);

}  // namespace corpus_scope::eda
