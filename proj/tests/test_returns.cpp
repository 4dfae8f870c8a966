#include "bhp/returns.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace {

using bhp::Sign;

bhp::PriceSeries series(std::vector<double> closes) {
  std::vector<bhp::PriceObservation> obs;
  auto day = std::chrono::sys_days{std::chrono::year{2020} / 1 / 1};
  for (double c : closes) {
    obs.push_back({bhp::Date{day}, c});
    day += std::chrono::days{1};
  }
  return bhp::PriceSeries(std::move(obs));
}

std::vector<double> random_positive(std::mt19937_64& rng, std::size_t n) {
  std::lognormal_distribution<double> dist(-4.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

TEST(DailyReturns, SimpleReturn) {
  const auto r = bhp::daily_returns(series({100.0, 110.0}));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0].r, 0.10, 1e-15);
}

TEST(DailyReturns, ConstantPrices) {
  const auto r = bhp::daily_returns(series({5.0, 5.0, 5.0}));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].r, 0.0);
  EXPECT_EQ(r[1].r, 0.0);
}

TEST(PriceSeries, RejectsBadInput) {
  EXPECT_THROW(series({100.0}), bhp::DataError);
  EXPECT_THROW(series({100.0, 0.0}), bhp::DataError);
  EXPECT_THROW(series({100.0, -1.0}), bhp::DataError);
  const bhp::Date d{std::chrono::year{2020}, std::chrono::month{1}, std::chrono::day{2}};
  EXPECT_THROW(bhp::PriceSeries({{d, 1.0}, {d, 2.0}}), bhp::DataError);
}

TEST(PriceCsv, ParsesSortedRows) {
  const auto s = bhp::parse_price_csv("date,close\n2020-01-01,100\n2020-01-02,110.5\n");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.observations()[1].close, 110.5);
  EXPECT_EQ(bhp::format_iso_date(s.observations()[1].date), "2020-01-02");
}

TEST(PriceCsv, ErrorsCarryRowNumbers) {
  auto row_of = [](const char* text) -> std::size_t {
    try {
      bhp::parse_price_csv(text);
    } catch (const bhp::DataError& e) {
      return e.row();
    }
    return 0;
  };
  EXPECT_EQ(row_of("date,close\n2020-01-01,100\n2020-01-02,\n"), 3u);
  EXPECT_EQ(row_of("date,close\n2020-01-02,100\n2020-01-01,101\n"), 3u);
  EXPECT_EQ(row_of("date,close\n2020-01-01,100\n2020-01-01,101\n"), 3u);
  EXPECT_EQ(row_of("date,close\n2020-01-01,100\n2020-13-01,101\n"), 3u);
  EXPECT_EQ(row_of("date,close\n2020-01-01,abc\n2020-01-02,101\n"), 2u);
  EXPECT_EQ(row_of("date,close\n2020-01-01,100\n2020-01-02,-4\n"), 3u);
  EXPECT_EQ(row_of("when,price\n2020-01-01,100\n"), 1u);
}

TEST(Partition, StrictSigns) {
  const bhp::Date d{};
  const bhp::ReturnSeries r = {{d, 0.1}, {d, -0.2}, {d, 0.0}};
  const auto p = bhp::partition_signs(r);
  EXPECT_EQ(p.positive, std::vector<double>{0.1});
  EXPECT_EQ(p.negative, std::vector<double>{0.2});
  EXPECT_EQ(p.zero_count, 1u);
}

TEST(Partition, ConservationProperty) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    bhp::ReturnSeries r;
    for (int k = 0; k < 200; ++k) r.push_back({bhp::Date{}, 0.01 * pick(rng)});
    const auto p = bhp::partition_signs(r);
    EXPECT_EQ(p.positive.size() + p.negative.size() + p.zero_count, r.size());
    for (double v : p.positive) EXPECT_GT(v, 0.0);
    for (double v : p.negative) EXPECT_GT(v, 0.0);
  }
}

TEST(Rescale, DegenerateInputsRejected) {
  EXPECT_THROW(bhp::rescale_and_normalize(std::vector<double>{}, 0.5, Sign::kPositive),
               std::invalid_argument);
  EXPECT_THROW(bhp::rescale_and_normalize(std::vector<double>{std::exp(1.0)}, 0.5,
                                          Sign::kPositive),
               std::invalid_argument);
  EXPECT_THROW(bhp::rescale_and_normalize(std::vector<double>{1.0, 1.0}, 0.5, Sign::kPositive),
               std::invalid_argument);
  EXPECT_THROW(bhp::rescale_and_normalize(std::vector<double>{1.0, -1.0}, 0.5, Sign::kPositive),
               std::invalid_argument);
  EXPECT_THROW(bhp::rescale_and_normalize(std::vector<double>{1.0, 2.0}, 0.0, Sign::kPositive),
               std::invalid_argument);
  EXPECT_THROW(bhp::rescale_and_normalize(std::vector<double>{1.0, 2.0}, 1.6, Sign::kPositive),
               std::invalid_argument);
}

TEST(Rescale, TwoPointCase) {
  // {1, 4} at alpha = 0.5 -> {1, 2}: mu 1.5, sigma 0.5, fluctuations -1, 1.
  const auto s = bhp::rescale_and_normalize(std::vector<double>{1.0, 4.0}, 0.5, Sign::kNegative);
  EXPECT_EQ(s.sign, Sign::kNegative);
  EXPECT_NEAR(s.mu_alpha, 1.5, 1e-15);
  EXPECT_NEAR(s.sigma_alpha, 0.5, 1e-15);
  EXPECT_NEAR(s.L_alpha, -1.0, 1e-15);
  EXPECT_NEAR(s.R_alpha, 1.0, 1e-15);
}

TEST(Rescale, StandardizationProperties) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> alpha_dist(0.05, 1.5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto v = random_positive(rng, 500);
    const double alpha = alpha_dist(rng);
    const auto s = bhp::rescale_and_normalize(v, alpha, Sign::kPositive);
    const double n = static_cast<double>(s.n);
    double mean = 0.0, sq = 0.0, pow_sq = 0.0;
    for (double f : s.fluctuations) mean += f;
    mean /= n;
    for (double f : s.fluctuations) sq += (f - mean) * (f - mean);
    for (double x : v) pow_sq += std::pow(x, 2 * alpha);
    EXPECT_LE(std::abs(mean), 1e-12 * n);
    EXPECT_NEAR(std::sqrt(sq / n), 1.0, 1e-9);
    // Population form: n (sigma^2 + mu^2) = sum v^(2 alpha).
    EXPECT_NEAR(n * (s.sigma_alpha * s.sigma_alpha + s.mu_alpha * s.mu_alpha) / pow_sq, 1.0,
                1e-9);
    EXPECT_EQ(s.L_alpha, *std::min_element(s.fluctuations.begin(), s.fluctuations.end()));
    EXPECT_EQ(s.R_alpha, *std::max_element(s.fluctuations.begin(), s.fluctuations.end()));
    EXPECT_LT(s.L_alpha, 0.0);
    EXPECT_GT(s.R_alpha, 0.0);
  }
}

TEST(Rescale, ScaleInvariance) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto v = random_positive(rng, 300);
    for (double c : {1e-3, 0.37, 25.0}) {
      std::vector<double> scaled(v);
      for (double& x : scaled) x *= c;
      for (double alpha : {0.3, 0.46, 1.0, 1.4}) {
        const auto a = bhp::rescale_and_normalize(v, alpha, Sign::kPositive);
        const auto b = bhp::rescale_and_normalize(scaled, alpha, Sign::kPositive);
        for (std::size_t k = 0; k < v.size(); ++k) {
          EXPECT_NEAR(a.fluctuations[k], b.fluctuations[k], 1e-12);
        }
      }
    }
  }
}

TEST(Rescale, RankOrderPreserved) {
  std::mt19937_64 rng(17);
  const auto v = random_positive(rng, 400);
  std::vector<std::size_t> by_value(v.size());
  std::iota(by_value.begin(), by_value.end(), 0);
  std::sort(by_value.begin(), by_value.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  for (double alpha : {0.1, 0.43, 0.9, 1.5}) {
    const auto s = bhp::rescale_and_normalize(v, alpha, Sign::kPositive);
    for (std::size_t k = 1; k < by_value.size(); ++k) {
      EXPECT_LE(s.fluctuations[by_value[k - 1]], s.fluctuations[by_value[k]]);
    }
  }
}

TEST(Rescale, AlphaOneIsPlainStandardization) {
  const std::vector<double> v = {0.01, 0.02, 0.05, 0.03};
  const auto s = bhp::rescale_and_normalize(v, 1.0, Sign::kPositive);
  const double mu = 0.0275;
  const double sigma = std::sqrt((0.01 * 0.01 + 0.02 * 0.02 + 0.05 * 0.05 + 0.03 * 0.03) / 4 -
                                 mu * mu);
  for (std::size_t k = 0; k < v.size(); ++k) {
    EXPECT_NEAR(s.fluctuations[k], (v[k] - mu) / sigma, 1e-12);
  }
}

}  // namespace
