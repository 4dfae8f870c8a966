#include "bhp/returns.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bhp/io_util.hpp"

namespace bhp {

namespace {

int parse_int(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad integer");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

Date parse_iso_date(std::string_view text) {
  text = trim(text);
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw std::invalid_argument("expected YYYY-MM-DD date, got '" + std::string(text) + "'");
  }
  try {
    const Date date{std::chrono::year{parse_int(text.substr(0, 4))},
                    std::chrono::month{static_cast<unsigned>(parse_int(text.substr(5, 2)))},
                    std::chrono::day{static_cast<unsigned>(parse_int(text.substr(8, 2)))}};
    if (!date.ok()) throw std::invalid_argument("invalid");
    return date;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("invalid calendar date '" + std::string(text) + "'");
  }
}

std::string format_iso_date(const Date& date) {
  char buffer[16];
  std::snprintf(buffer, sizeof buffer, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buffer;
}

PriceSeries::PriceSeries(std::vector<PriceObservation> observations)
    : observations_(std::move(observations)) {
  if (observations_.size() < 2) {
    throw DataError("price series needs at least 2 observations, got " +
                    std::to_string(observations_.size()));
  }
  for (std::size_t i = 0; i < observations_.size(); ++i) {
    const double close = observations_[i].close;
    if (!(close > 0.0) || !std::isfinite(close)) {
      throw DataError("non-positive close at observation " + std::to_string(i + 1));
    }
    if (i > 0 && !(observations_[i - 1].date < observations_[i].date)) {
      throw DataError("dates not strictly increasing at observation " +
                      std::to_string(i + 1) + " (" +
                      format_iso_date(observations_[i].date) + ")");
    }
  }
}

PriceSeries parse_price_csv(std::string_view contents) {
  std::vector<PriceObservation> rows;
  std::istringstream in{std::string(contents)};
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    if (!header_seen) {
      if (view != "date,close") {
        throw DataError("expected header 'date,close', got '" + std::string(view) + "'",
                        line_no);
      }
      header_seen = true;
      continue;
    }
    const auto comma = view.find(',');
    if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos) {
      throw DataError("row " + std::to_string(line_no) + ": expected 2 fields", line_no);
    }
    PriceObservation obs{};
    try {
      obs.date = parse_iso_date(view.substr(0, comma));
    } catch (const std::invalid_argument& e) {
      throw DataError("row " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
    const std::string_view close = trim(view.substr(comma + 1));
    if (close.empty()) {
      throw DataError("row " + std::to_string(line_no) + ": empty close", line_no);
    }
    try {
      obs.close = parse_double(close);
    } catch (const std::invalid_argument& e) {
      throw DataError("row " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
    if (!(obs.close > 0.0) || !std::isfinite(obs.close)) {
      throw DataError("row " + std::to_string(line_no) + ": close must be positive",
                      line_no);
    }
    if (!rows.empty() && !(rows.back().date < obs.date)) {
      throw DataError("row " + std::to_string(line_no) + ": date " +
                          format_iso_date(obs.date) + " is not after the previous row",
                      line_no);
    }
    rows.push_back(obs);
  }
  if (!header_seen) throw DataError("missing header 'date,close'", 1);
  return PriceSeries(std::move(rows));
}

PriceSeries read_price_csv(const std::filesystem::path& path) {
  std::string contents;
  try {
    contents = read_file(path);
  } catch (const std::runtime_error& e) {
    throw DataError(e.what());
  }
  return parse_price_csv(contents);
}

ReturnSeries daily_returns(const PriceSeries& series) {
  const auto& obs = series.observations();
  ReturnSeries out;
  out.reserve(obs.size() - 1);
  for (std::size_t t = 1; t < obs.size(); ++t) {
    out.push_back({obs[t].date, (obs[t].close - obs[t - 1].close) / obs[t - 1].close});
  }
  return out;
}

std::string_view to_string(Sign sign) { return sign == Sign::kPositive ? "+" : "-"; }

Sign sign_from_string(std::string_view s) {
  if (s == "+" || s == "positive" || s == "pos") return Sign::kPositive;
  if (s == "-" || s == "negative" || s == "neg") return Sign::kNegative;
  throw std::invalid_argument("unknown sign: " + std::string(s));
}

SignPartition partition_signs(const ReturnSeries& returns) {
  SignPartition p;
  for (const auto& [date, r] : returns) {
    if (r > 0.0) {
      p.positive.push_back(r);
    } else if (r < 0.0) {
      p.negative.push_back(-r);
    } else {
      ++p.zero_count;
    }
  }
  return p;
}

RescaledStats rescale_and_normalize(std::span<const double> values, double alpha,
                                    Sign sign) {
  if (values.empty()) throw std::invalid_argument("cannot rescale an empty sample");
  if (!(alpha > 0.0 && alpha <= 1.5)) {
    throw std::invalid_argument("alpha must lie in (0, 1.5], got " + format_double(alpha));
  }
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("rescaled values must be positive and finite");
    }
  }
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values[0]; })) {
    throw std::invalid_argument("all values equal: standard deviation is zero");
  }

  RescaledStats s;
  s.sign = sign;
  s.alpha = alpha;
  s.n = values.size();
  const double n = static_cast<double>(s.n);
  std::vector<double> powered(values.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    powered[i] = std::pow(values[i], alpha);
    sum += powered[i];
  }
  s.mu_alpha = sum / n;
  // Population variance (1/n); two-pass form of E[v^2a] - mu^2.
  double squares = 0.0;
  for (double p : powered) squares += (p - s.mu_alpha) * (p - s.mu_alpha);
  s.sigma_alpha = std::sqrt(squares / n);
  if (!(s.sigma_alpha > 0.0)) {
    throw std::invalid_argument("standard deviation of rescaled values is zero");
  }
  s.fluctuations.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    s.fluctuations[i] = (powered[i] - s.mu_alpha) / s.sigma_alpha;
  }
  const auto [lo, hi] = std::minmax_element(s.fluctuations.begin(), s.fluctuations.end());
  s.L_alpha = *lo;
  s.R_alpha = *hi;
  return s;
}

}  // namespace bhp
