#include "bhp/bhp_dist.hpp"

#include <algorithm>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>

namespace bhp {

BhpDensity::BhpDensity(const Spectrum& spectrum) {
  const double n = spectrum.mode_count();
  double inverse_square_sum = 0.0;
  double inverse_sum = 0.0;
  for (double lambda : spectrum.eigenvalues()) {
    inverse_square_sum += 1.0 / (lambda * lambda);
    inverse_sum += 1.0 / lambda;
    // The spectrum is sorted, so equal values are adjacent.
    if (!modes_.empty() &&
        std::abs(modes_.back().inverse_scale * n * lambda - 1.0) < 1e-13) {
      modes_.back().multiplicity += 1.0;
    } else {
      modes_.push_back({1.0 / (n * lambda), 1.0});
    }
  }
  scale_ = std::sqrt(inverse_square_sum / (2.0 * n * n));
  support_edge_ = inverse_sum / (2.0 * n) / scale_;
}

double BhpDensity::integrand(double x, double u) const {
  double log_modulus = 0.0;
  double phase = x * u * scale_;
  for (const Mode& m : modes_) {
    const double t = x * m.inverse_scale;
    log_modulus -= 0.25 * m.multiplicity * std::log1p(t * t);
    phase -= m.multiplicity * (0.5 * t - 0.5 * std::atan(t));
  }
  return 2.0 * std::exp(log_modulus) * std::cos(phase);
}

double BhpDensity::pdf(double u, const QuadratureSettings& quad) const {
  const double prefactor = scale_ / (2.0 * std::numbers::pi);
  // Start from pieces that resolve both the oscillation, whose angular
  // frequency is at most (|u| + edge) * s, and the envelope, which decays on
  // the scale N lambda_min. Coarser starts let G7 and K15 agree by accident.
  const double omega = (std::abs(u) + support_edge_) * scale_;
  const double width = std::min(std::numbers::pi / omega,
                                0.25 / modes_.front().inverse_scale);
  const int pieces = static_cast<int>(std::ceil(quad.x_max / width));
  QuadratureResult r;
  try {
    r = integrate_adaptive([&](double x) { return integrand(x, u); }, 0.0,
                           quad.x_max, quad.abs_tol / prefactor,
                           quad.max_subdivisions, pieces);
  } catch (const QuadratureError& e) {
    throw QuadratureError(std::string(e.what()) + " at u=" + std::to_string(u), u);
  }
  const double value = prefactor * r.value;
  if (value < 0.0) {
    if (value < -quad.abs_tol) {
      throw QuadratureError("density " + std::to_string(value) +
                                " is negative beyond abs_tol at u=" +
                                std::to_string(u),
                            u);
    }
    return 0.0;
  }
  return value;
}

double bhp_pdf(double u, const Spectrum& spectrum, const QuadratureSettings& quad) {
  quad.validate();
  return BhpDensity(spectrum).pdf(u, quad);
}

std::string_view to_string(Orientation o) {
  return o == Orientation::kMirrored ? "mirrored" : "literal";
}

Orientation orientation_from_string(std::string_view s) {
  if (s == "mirrored") return Orientation::kMirrored;
  if (s == "literal") return Orientation::kLiteral;
  throw std::invalid_argument("unknown orientation: " + std::string(s));
}

std::size_t GridSpec::size() const {
  return static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
}

void GridSpec::validate() const {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (lo > -10.0 || hi < 14.0) {
    throw std::invalid_argument("grid must cover at least [-10, 14]");
  }
  const double span = (hi - lo) / step;
  if (std::abs(span - std::round(span)) > 1e-6) {
    throw std::invalid_argument("grid step must divide the grid span");
  }
  if (span > 1e7) throw std::invalid_argument("grid too fine");
}

BhpTable::BhpTable(std::vector<double> grid, std::vector<double> pdf,
                   std::vector<double> cdf, SpectrumConfig config,
                   QuadratureSettings quad, GridSpec grid_spec,
                   double left_tail_mass, double right_tail_mass)
    : grid_(std::move(grid)),
      pdf_(std::move(pdf)),
      cdf_(std::move(cdf)),
      config_(config),
      quad_(quad),
      grid_spec_(grid_spec),
      left_tail_mass_(left_tail_mass),
      right_tail_mass_(right_tail_mass) {
  if (grid_.size() < 2 || pdf_.size() != grid_.size() || cdf_.size() != grid_.size()) {
    throw std::invalid_argument("table columns must have equal length >= 2");
  }
  if (!(left_tail_mass_ >= 0.0) || !(right_tail_mass_ >= 0.0)) {
    throw std::invalid_argument("tail masses must be non-negative");
  }
  double trapezoid = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (!(pdf_[i] >= 0.0)) throw std::invalid_argument("pdf values must be >= 0");
    if (!(cdf_[i] >= 0.0 && cdf_[i] <= 1.0)) {
      throw std::invalid_argument("cdf values must lie in [0, 1]");
    }
    if (i == 0) continue;
    if (!(grid_[i] > grid_[i - 1])) {
      throw std::invalid_argument("grid must be strictly increasing");
    }
    if (cdf_[i] < cdf_[i - 1]) throw std::invalid_argument("cdf must be non-decreasing");
    trapezoid += 0.5 * (pdf_[i] + pdf_[i - 1]) * (grid_[i] - grid_[i - 1]);
  }
  if (cdf_.back() < 1.0 - right_tail_mass_ - 1e-12) {
    throw std::invalid_argument("final cdf value below 1 - declared tail mass");
  }
  if (std::abs(trapezoid - (cdf_.back() - cdf_.front())) > quad_.abs_tol) {
    throw std::invalid_argument("cdf does not match the trapezoid integral of the pdf");
  }
}

std::size_t BhpTable::segment(double x) const {
  // Index i with grid[i] <= x < grid[i+1], clamped to the last segment.
  auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
  const auto i = static_cast<std::size_t>(it - grid_.begin());
  return std::min(i == 0 ? 0 : i - 1, grid_.size() - 2);
}

double BhpTable::pdf(double x) const {
  if (!(x >= grid_.front()) || !(x <= grid_.back())) return 0.0;
  const std::size_t i = segment(x);
  const double h = grid_[i + 1] - grid_[i];
  const double theta = (x - grid_[i]) / h;
  return pdf_[i] + theta * (pdf_[i + 1] - pdf_[i]);
}

double BhpTable::cdf(double x) const {
  if (x < grid_.front()) return 0.0;
  if (x > grid_.back()) return 1.0;
  if (std::isnan(x)) return x;
  const std::size_t i = segment(x);
  const double h = grid_[i + 1] - grid_[i];
  const double theta = (x - grid_[i]) / h;
  const double value =
      cdf_[i] + h * theta * (pdf_[i] + 0.5 * theta * (pdf_[i + 1] - pdf_[i]));
  return std::clamp(value, cdf_[i], cdf_[i + 1]);
}

namespace {

template <class Evaluate>
BhpTable assemble_table(const SpectrumConfig& config, const QuadratureSettings& quad,
                        const GridSpec& grid_spec, Evaluate&& evaluate) {
  config.validate();
  quad.validate();
  grid_spec.validate();
  const std::size_t n = grid_spec.size();
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = grid_spec.abscissa(i);

  const BhpDensity density(build_spectrum(config));
  const double sign = grid_spec.orientation == Orientation::kMirrored ? -1.0 : 1.0;
  std::vector<double> pdf = evaluate(density, grid, sign);

  const double h = grid_spec.step;
  // Exponential extrapolation of the mass beyond the left end.
  double left_tail = 0.0;
  if (pdf[0] > 0.0 && pdf[1] > pdf[0]) {
    left_tail = pdf[0] * h / std::log(pdf[1] / pdf[0]);
  }
  std::vector<double> cumulative(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    cumulative[i] = cumulative[i - 1] + 0.5 * (pdf[i] + pdf[i - 1]) * h;
  }
  double right_tail = 1.0 - left_tail - cumulative.back();
  if (right_tail < 0.0) {
    const double rescale = (1.0 - left_tail) / cumulative.back();
    for (double& v : pdf) v *= rescale;
    for (double& v : cumulative) v *= rescale;
    right_tail = 0.0;
  }
  std::vector<double> cdf(n);
  for (std::size_t i = 0; i < n; ++i) cdf[i] = std::min(1.0, left_tail + cumulative[i]);
  return BhpTable(std::move(grid), std::move(pdf), std::move(cdf), config, quad,
                  grid_spec, left_tail, right_tail);
}

}  // namespace

BhpTable build_table_serial(const SpectrumConfig& config,
                            const QuadratureSettings& quad, const GridSpec& grid) {
  return assemble_table(config, quad, grid,
                        [&](const BhpDensity& density, const std::vector<double>& u,
                            double sign) {
                          std::vector<double> pdf(u.size());
                          for (std::size_t i = 0; i < u.size(); ++i) {
                            pdf[i] = density.pdf(sign * u[i], quad);
                          }
                          return pdf;
                        });
}

BhpTable build_table(const SpectrumConfig& config, const QuadratureSettings& quad,
                     const GridSpec& grid) {
  return assemble_table(
      config, quad, grid,
      [&](const BhpDensity& density, const std::vector<double>& u, double sign) {
        const auto n = static_cast<std::ptrdiff_t>(u.size());
        std::vector<double> pdf(u.size());
        std::vector<std::exception_ptr> failures(u.size());
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
          const auto k = static_cast<std::size_t>(i);
          try {
            pdf[k] = density.pdf(sign * u[k], quad);
          } catch (...) {
            failures[k] = std::current_exception();
          }
        }
        // Report the lowest failing abscissa, as the serial path would.
        for (const auto& failure : failures) {
          if (failure) std::rethrow_exception(failure);
        }
        return pdf;
      });
}

double bhp_cdf(double x, const BhpTable& table) { return table.cdf(x); }

double bhp_quantile(double p, const BhpTable& table) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("quantile probability must lie in (0, 1)");
  }
  const auto& grid = table.grid();
  const auto& cdf = table.cdf_values();
  if (p <= cdf.front()) return grid.front();
  if (p >= cdf.back()) return grid.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), p);
  const auto i = static_cast<std::size_t>(it - cdf.begin()) - 1;
  double lo = grid[i];
  double hi = grid[i + 1];
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double value = table.cdf(mid);
    if (std::abs(value - p) <= 1e-14 || mid == lo || mid == hi) return mid;
    if (value < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double gumbel_pi2_pdf(double u) {
  constexpr double a = std::numbers::pi / 2.0;
  static const double b = std::sqrt(boost::math::trigamma(a));
  static const double shift = -(boost::math::digamma(a) - std::log(a)) / b;
  static const double log_norm = std::log(b) + a * std::log(a) - std::lgamma(a);
  const double z = b * (u - shift);
  return std::exp(log_norm + a * (z - std::exp(z)));
}

}  // namespace bhp
