#pragma once

#include <cstddef>
#include <filesystem>
#include <json.hpp>
#include <span>
#include <string>
#include <vector>

#include "bhp/bhp_dist.hpp"
#include "bhp/ks.hpp"
#include "bhp/returns.hpp"

namespace bhp {

struct Histogram {
  std::vector<double> edges;      // n_bins + 1, strictly increasing
  std::vector<double> densities;  // n_bins, integrate to 1
  std::size_t n = 0;

  std::vector<double> centers() const;
};

// Equal-width bins over [min, max]; bins are right-open except the last.
Histogram histogram(std::span<const double> samples, std::size_t n_bins);

struct DerivedPdfParams {
  double alpha = 1.0;
  double mu = 0.0;
  double sigma = 1.0;
  double L = 0.0;
  double R = 0.0;

  void validate() const;
};

// Density of x > 0 when u = (x^alpha - mu) / sigma follows the table
// distribution truncated to [L, R]:
//   alpha x^(alpha-1) f((x^alpha - mu)/sigma) / (sigma (F(R) - F(L))),
// and 0 when u falls outside [L, R]. Diverges (integrably) as x -> 0.
double derived_return_pdf(double x, const DerivedPdfParams& params, const BhpTable& table);

// Coefficients reported for the AEX index, Oct 1992 - Oct 2009.
namespace published {

struct SideValues {
  double alpha;
  double p_value;
  double mu;
  double sigma;
  double L;
  double R;
  std::size_t n;
  double leading;      // c in c x^e f(a x^alpha - b)
  double exponent;     // e
  double inner_scale;  // a
  double inner_shift;  // b
};

inline constexpr SideValues kPositive{0.46, 0.59, 0.105, 0.049, -1.97, 5.08, 2285,
                                      4.39, -0.54, 20.28, 2.12};
inline constexpr SideValues kNegative{0.43, 0.31, 0.122, 0.057, -1.97, 4.13, 2021,
                                      3.52, -0.57, 17.53, 2.14};

inline constexpr std::size_t kObservedDays = 4318;

inline const SideValues& for_sign(Sign sign) {
  return sign == Sign::kPositive ? kPositive : kNegative;
}

}  // namespace published

struct CoefficientAudit {
  double leading = 0.0;        // alpha / (sigma (F(R) - F(L)))
  double alpha_over_mu = 0.0;  // alternative reading of the leading constant
  double exponent = 0.0;       // alpha - 1
  double inner_scale = 0.0;    // 1 / sigma
  double inner_shift = 0.0;    // mu / sigma
  double base_mass = 0.0;      // F(R) - F(L)
  // Published leading constant disagrees (> 2%) with alpha/(sigma dF).
  bool leading_inconsistent = false;
  // Published leading constant agrees (<= 2%) with alpha/mu.
  bool published_matches_alpha_over_mu = false;

  nlohmann::json to_json(Sign sign) const;
};

CoefficientAudit coefficient_audit(const DerivedPdfParams& params, Sign sign,
                                   const BhpTable& table);

struct CollapseOptions {
  std::size_t n_bins = 40;
  TruncationMode truncation_mode = TruncationMode::kShifted;
  std::size_t curve_points = 401;
};

// Writes fluct_hist.csv, bhp_overlay.csv, return_hist.csv, derived_pdf.csv,
// discrepancy.csv and summary.json into out_dir. `context` is merged into the
// summary (counts, sweep results, config echo). Returns the summary.
nlohmann::json collapse_bundle(std::span<const double> values, Sign sign,
                               double alpha_star, const BhpTable& table,
                               const CollapseOptions& options,
                               const std::filesystem::path& out_dir,
                               const std::string& config_hash,
                               const nlohmann::json& context);

}  // namespace bhp
