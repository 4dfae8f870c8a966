#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bhp/quadrature.hpp"
#include "bhp/spectrum.hpp"

namespace bhp {

// Characteristic-function representation of the BHP density for one spectrum.
//
// The density is the inverse Fourier transform of a product of centred
// chi-square mode factors,
//
//   f(u) = s/(2 pi) * Int dx exp(i x u s) prod_k (1 - i t_k)^(-1/2) e^(-i t_k/2),
//   t_k  = x / (N lambda_k),  s^2 = (1/(2 N^2)) sum_k 1/lambda_k^2,
//
// which is Hermitian in x, so it is evaluated as 2 Re(.) over [0, x_max].
// Degenerate eigenvalues are grouped so each distinct value is visited once.
class BhpDensity {
 public:
  explicit BhpDensity(const Spectrum& spectrum);

  // Standard deviation of the unnormalized mode sum; the density is scaled
  // by it to unit variance.
  double scale() const { return scale_; }

  // Right edge of the support in standardized units. Each mode contributes a
  // non-negative chi-square term, so f vanishes identically for u > edge.
  double support_edge() const { return support_edge_; }

  // Integrand 2 Re(.) at characteristic variable x for density argument u.
  double integrand(double x, double u) const;

  // Throws QuadratureError (abscissa = u) when the subdivision budget runs
  // out, or when the raw value is more negative than -abs_tol.
  double pdf(double u, const QuadratureSettings& quad) const;

 private:
  struct Mode {
    double inverse_scale;  // 1 / (N lambda)
    double multiplicity;
  };
  std::vector<Mode> modes_;
  double scale_ = 0.0;
  double support_edge_ = 0.0;
};

double bhp_pdf(double u, const Spectrum& spectrum, const QuadratureSettings& quad);

// Which way the tabulated density faces. `literal` is the integral above as
// written (exponential tail below the mean, bounded above). `mirrored` stores
// f(-u): exponential tail above the mean, which is the orientation the return
// fluctuations follow.
enum class Orientation { kMirrored, kLiteral };

std::string_view to_string(Orientation o);
Orientation orientation_from_string(std::string_view s);

struct GridSpec {
  double lo = -10.0;
  double hi = 14.0;
  double step = 0.01;
  Orientation orientation = Orientation::kMirrored;

  std::size_t size() const;
  double abscissa(std::size_t i) const { return lo + static_cast<double>(i) * step; }
  // Requires coverage of at least [-10, 14].
  void validate() const;
};

// Immutable tabulation of pdf and cdf on a grid. Between nodes the pdf is
// linear and the cdf is its exact integral (piecewise quadratic), so the cdf
// is monotone, passes through the cumulative-trapezoid node values, and its
// derivative is the interpolated pdf.
class BhpTable {
 public:
  // Validates every table invariant; throws std::invalid_argument otherwise.
  BhpTable(std::vector<double> grid, std::vector<double> pdf,
           std::vector<double> cdf, SpectrumConfig config,
           QuadratureSettings quad, GridSpec grid_spec,
           double left_tail_mass, double right_tail_mass);

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& pdf_values() const { return pdf_; }
  const std::vector<double>& cdf_values() const { return cdf_; }
  const SpectrumConfig& config() const { return config_; }
  const QuadratureSettings& quad() const { return quad_; }
  const GridSpec& grid_spec() const { return grid_spec_; }
  Orientation orientation() const { return grid_spec_.orientation; }
  // Probability mass declared outside [grid.front(), grid.back()].
  double left_tail_mass() const { return left_tail_mass_; }
  double right_tail_mass() const { return right_tail_mass_; }

  double pdf(double x) const;
  double cdf(double x) const;

 private:
  std::size_t segment(double x) const;

  std::vector<double> grid_;
  std::vector<double> pdf_;
  std::vector<double> cdf_;
  SpectrumConfig config_;
  QuadratureSettings quad_;
  GridSpec grid_spec_;
  double left_tail_mass_;
  double right_tail_mass_;
};

// OpenMP over grid points. Output is bit-identical to build_table_serial.
BhpTable build_table(const SpectrumConfig& config, const QuadratureSettings& quad,
                     const GridSpec& grid);
BhpTable build_table_serial(const SpectrumConfig& config,
                            const QuadratureSettings& quad, const GridSpec& grid);

// 0 below the grid, 1 above it.
double bhp_cdf(double x, const BhpTable& table);

// x with |bhp_cdf(x) - p| <= 1e-6. Rejects p outside (0, 1).
double bhp_quantile(double p, const BhpTable& table);

// Generalized Gumbel density with a = pi/2, standardized to mean 0 and
// variance 1. Closed form; used as an independent shape reference.
double gumbel_pi2_pdf(double u);

}  // namespace bhp
