#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace bhp {

class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::span<const double> samples);

  const std::vector<double>& sorted_samples() const { return sorted_; }
  std::size_t n() const { return sorted_.size(); }

  // Fraction of samples <= x.
  double operator()(double x) const;

 private:
  std::vector<double> sorted_;
};

enum class TruncationMode {
  kShifted,       // (F(x) - F(L)) / (F(R) - F(L)): a proper cdf on [L, R]
  kPaperLiteral,  // F(x) / (F(R) - F(L)): the formula as printed
};

std::string_view to_string(TruncationMode mode);
TruncationMode truncation_mode_from_string(std::string_view s);

// A monotone base cdf restricted to [L, R]. The base is held by value as a
// callable; callers pass views (e.g. a lambda capturing a table by reference).
class TruncatedDist {
 public:
  TruncatedDist(std::function<double(double)> base, double L, double R,
                TruncationMode mode = TruncationMode::kShifted);

  double cdf(double x) const;
  double operator()(double x) const { return cdf(x); }

  double L() const { return L_; }
  double R() const { return R_; }
  double base_mass() const { return mass_; }  // F(R) - F(L)
  TruncationMode mode() const { return mode_; }

 private:
  std::function<double(double)> base_;
  double L_;
  double R_;
  TruncationMode mode_;
  double base_at_L_;
  double mass_;
};

struct KsResult {
  double d = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
  double location_of_max = 0.0;
};

// Kolmogorov distribution tail Q(lambda) with the small-sample scaling
// lambda = (sqrt(n) + 0.12 + 0.11/sqrt(n)) d. Clamped to [0, 1].
double ks_pvalue(double d, std::size_t n);

inline constexpr std::string_view kPvalueConvention =
    "asymptotic Kolmogorov Q(lambda), lambda = (sqrt(n) + 0.12 + 0.11/sqrt(n)) * d";

// d = max_i max(i/n - F(x_i), F(x_i) - (i-1)/n) over the sorted samples.
template <class Cdf>
KsResult ks_statistic(const EmpiricalCdf& samples, Cdf&& cdf) {
  const auto& x = samples.sorted_samples();
  const double n = static_cast<double>(x.size());
  KsResult result;
  result.n = x.size();
  result.location_of_max = x.front();
  double best = -1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    const double gap = std::max(above, below);
    if (gap > best) {
      best = gap;
      result.location_of_max = x[i];
    }
  }
  result.d = std::clamp(best, 0.0, 1.0);
  result.p_value = ks_pvalue(result.d, result.n);
  return result;
}

struct DiscrepancyPoint {
  double x;
  double D;
};

// |F_emp(x) - F_trunc(x)| on the supplied grid.
std::vector<DiscrepancyPoint> discrepancy_curve(const EmpiricalCdf& samples,
                                                const TruncatedDist& dist,
                                                std::span<const double> grid);

}  // namespace bhp
