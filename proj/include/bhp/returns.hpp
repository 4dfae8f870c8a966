#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bhp {

// Malformed or inconsistent input data. `row()` is the 1-based line number in
// the source file (header is line 1), or 0 when not tied to a file row.
class DataError : public std::runtime_error {
 public:
  DataError(const std::string& what, std::size_t row = 0)
      : std::runtime_error(what), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

using Date = std::chrono::year_month_day;

Date parse_iso_date(std::string_view text);
std::string format_iso_date(const Date& date);

struct PriceObservation {
  Date date;
  double close;
};

// Strictly increasing dates, positive closes, at least two observations.
class PriceSeries {
 public:
  explicit PriceSeries(std::vector<PriceObservation> observations);

  const std::vector<PriceObservation>& observations() const { return observations_; }
  std::size_t size() const { return observations_.size(); }

 private:
  std::vector<PriceObservation> observations_;
};

// Parses a `date,close` CSV. Rows must already be sorted by date.
PriceSeries read_price_csv(const std::filesystem::path& path);
PriceSeries parse_price_csv(std::string_view contents);

struct DailyReturn {
  Date date;
  double r;
};

using ReturnSeries = std::vector<DailyReturn>;

// r(t) = (Y(t) - Y(t-1)) / Y(t-1).
ReturnSeries daily_returns(const PriceSeries& series);

enum class Sign { kPositive, kNegative };

std::string_view to_string(Sign sign);  // "+" or "-"
Sign sign_from_string(std::string_view s);

struct SignPartition {
  std::vector<double> positive;  // r(t) for r(t) > 0
  std::vector<double> negative;  // -r(t) for r(t) < 0
  std::size_t zero_count = 0;

  const std::vector<double>& side(Sign sign) const {
    return sign == Sign::kPositive ? positive : negative;
  }
};

SignPartition partition_signs(const ReturnSeries& returns);

struct RescaledStats {
  Sign sign = Sign::kPositive;
  double alpha = 1.0;
  double mu_alpha = 0.0;
  double sigma_alpha = 0.0;
  std::size_t n = 0;
  std::vector<double> fluctuations;  // (v^alpha - mu) / sigma, input order
  double L_alpha = 0.0;              // min fluctuation
  double R_alpha = 0.0;              // max fluctuation
};

// Population (1/n) mean and standard deviation of v^alpha, then standardized
// values. Requires non-empty, positive, not-all-equal values and alpha in
// (0, 1.5].
RescaledStats rescale_and_normalize(std::span<const double> values, double alpha,
                                    Sign sign);

}  // namespace bhp
