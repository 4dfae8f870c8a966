#include "bhp/sweep.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>

#include "bhp/io_util.hpp"

namespace bhp {

void SweepSpec::validate() const {
  if (!(alpha_min < alpha_max)) throw std::invalid_argument("alpha_min must be < alpha_max");
  if (!(step > 0.0)) throw std::invalid_argument("alpha step must be positive");
  if ((alpha_max - alpha_min) / step > 1e5) {
    throw std::invalid_argument("alpha grid exceeds 1e5 steps");
  }
  if (!(alpha_min > 0.0) || alpha_max > 1.5) {
    throw std::invalid_argument("alpha range must lie within (0, 1.5]");
  }
}

std::vector<double> SweepSpec::alphas() const {
  const auto count =
      static_cast<std::size_t>(std::floor((alpha_max - alpha_min) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = alpha_min + static_cast<double>(i) * step;
  }
  return out;
}

SweepPoint evaluate_alpha(std::span<const double> values, double alpha, Sign sign,
                          TruncationMode mode, const BhpTable& table) {
  try {
    const RescaledStats stats = rescale_and_normalize(values, alpha, sign);
    const TruncatedDist dist([&table](double x) { return table.cdf(x); }, stats.L_alpha,
                             stats.R_alpha, mode);
    const KsResult ks = ks_statistic(EmpiricalCdf(stats.fluctuations), dist);
    return {alpha,           ks.d,          ks.p_value,   stats.mu_alpha,
            stats.sigma_alpha, stats.L_alpha, stats.R_alpha};
  } catch (const std::exception& e) {
    throw std::invalid_argument("alpha=" + format_double(alpha) + ": " + e.what());
  }
}

namespace {

void select_best(SweepResult& result) {
  result.alpha_star = result.points.front().alpha;
  result.p_star = result.points.front().p_value;
  for (const SweepPoint& p : result.points) {
    if (p.p_value > result.p_star) {
      result.p_star = p.p_value;
      result.alpha_star = p.alpha;
    }
  }
}

}  // namespace

SweepResult sweep_serial(std::span<const double> values, const SweepSpec& spec,
                         const BhpTable& table) {
  spec.validate();
  SweepResult result{spec, {}, 0.0, 0.0};
  for (double alpha : spec.alphas()) {
    result.points.push_back(
        evaluate_alpha(values, alpha, spec.sign, spec.truncation_mode, table));
  }
  select_best(result);
  return result;
}

SweepResult sweep(std::span<const double> values, const SweepSpec& spec,
                  const BhpTable& table) {
  spec.validate();
  const std::vector<double> alphas = spec.alphas();
  const auto count = static_cast<std::ptrdiff_t>(alphas.size());
  SweepResult result{spec, std::vector<SweepPoint>(alphas.size()), 0.0, 0.0};
  std::vector<std::exception_ptr> failures(alphas.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      result.points[k] =
          evaluate_alpha(values, alphas[k], spec.sign, spec.truncation_mode, table);
    } catch (...) {
      failures[k] = std::current_exception();
    }
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  select_best(result);
  return result;
}

}  // namespace bhp
