#include "bhp/ks.hpp"

#include <string>

namespace bhp {

EmpiricalCdf::EmpiricalCdf(std::span<const double> samples)
    : sorted_(samples.begin(), samples.end()) {
  if (sorted_.empty()) throw std::invalid_argument("empirical cdf needs at least one sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

std::string_view to_string(TruncationMode mode) {
  return mode == TruncationMode::kShifted ? "shifted" : "paper-literal";
}

TruncationMode truncation_mode_from_string(std::string_view s) {
  if (s == "shifted") return TruncationMode::kShifted;
  if (s == "paper-literal") return TruncationMode::kPaperLiteral;
  throw std::invalid_argument("unknown truncation mode: " + std::string(s));
}

TruncatedDist::TruncatedDist(std::function<double(double)> base, double L, double R,
                             TruncationMode mode)
    : base_(std::move(base)), L_(L), R_(R), mode_(mode) {
  if (!(L_ < R_)) throw std::invalid_argument("truncation requires L < R");
  base_at_L_ = base_(L_);
  mass_ = base_(R_) - base_at_L_;
  if (!(mass_ > 0.0)) {
    throw std::invalid_argument("base cdf carries no mass on [L, R]");
  }
}

double TruncatedDist::cdf(double x) const {
  const double f = base_(std::clamp(x, L_, R_));
  if (mode_ == TruncationMode::kShifted) {
    return std::clamp((f - base_at_L_) / mass_, 0.0, 1.0);
  }
  return f / mass_;
}

double ks_pvalue(double d, std::size_t n) {
  if (!(d > 0.0)) return 1.0;
  const double root_n = std::sqrt(static_cast<double>(n));
  const double lambda = (root_n + 0.12 + 0.11 / root_n) * d;
  // Below 0.15, 1 - Q < 1e-22: the series would only add rounding noise.
  if (lambda < 0.15) return 1.0;
  const double a = -2.0 * lambda * lambda;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100000; ++j) {
    const double term = std::exp(a * j * j);
    sum += sign * term;
    if (term < 1e-10) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

std::vector<DiscrepancyPoint> discrepancy_curve(const EmpiricalCdf& samples,
                                                const TruncatedDist& dist,
                                                std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("discrepancy grid must be non-empty");
  std::vector<DiscrepancyPoint> out;
  out.reserve(grid.size());
  for (double x : grid) out.push_back({x, std::abs(samples(x) - dist.cdf(x))});
  return out;
}

}  // namespace bhp
