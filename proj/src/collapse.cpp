#include "bhp/collapse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "bhp/io_util.hpp"

namespace bhp {

std::vector<double> Histogram::centers() const {
  std::vector<double> out(densities.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (edges[i] + edges[i + 1]);
  return out;
}

Histogram histogram(std::span<const double> samples, std::size_t n_bins) {
  if (samples.empty()) throw std::invalid_argument("histogram needs samples");
  if (n_bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) throw std::invalid_argument("histogram range is empty (max == min)");

  Histogram h;
  h.n = samples.size();
  const double width = (hi - lo) / static_cast<double>(n_bins);
  h.edges.resize(n_bins + 1);
  for (std::size_t i = 0; i <= n_bins; ++i) h.edges[i] = lo + static_cast<double>(i) * width;
  h.edges.back() = hi;

  std::vector<std::size_t> counts(n_bins, 0);
  for (double x : samples) {
    auto bin = static_cast<std::size_t>(std::floor((x - lo) / width));
    bin = std::min(bin, n_bins - 1);
    // Floor can land one bin off near an edge; defer to the stored edges.
    while (bin > 0 && x < h.edges[bin]) --bin;
    while (bin + 1 < n_bins && x >= h.edges[bin + 1]) ++bin;
    ++counts[bin];
  }
  h.densities.resize(n_bins);
  const double n = static_cast<double>(h.n);
  for (std::size_t i = 0; i < n_bins; ++i) {
    h.densities[i] = static_cast<double>(counts[i]) / (n * (h.edges[i + 1] - h.edges[i]));
  }
  return h;
}

void DerivedPdfParams::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("derived pdf needs alpha > 0");
  if (!(sigma > 0.0)) throw std::invalid_argument("derived pdf needs sigma > 0");
  if (!(L < R)) throw std::invalid_argument("derived pdf needs L < R");
}

double derived_return_pdf(double x, const DerivedPdfParams& params, const BhpTable& table) {
  if (!(x > 0.0)) throw std::invalid_argument("derived return pdf is defined for x > 0 only");
  params.validate();
  const double powered = std::pow(x, params.alpha);
  const double u = (powered - params.mu) / params.sigma;
  if (u < params.L || u > params.R) return 0.0;
  const double mass = table.cdf(params.R) - table.cdf(params.L);
  if (!(mass > 0.0)) throw std::invalid_argument("table carries no mass on [L, R]");
  return params.alpha * (powered / x) * table.pdf(u) / (params.sigma * mass);
}

CoefficientAudit coefficient_audit(const DerivedPdfParams& params, Sign sign,
                                   const BhpTable& table) {
  params.validate();
  const auto& ref = published::for_sign(sign);
  CoefficientAudit a;
  a.base_mass = table.cdf(params.R) - table.cdf(params.L);
  a.leading = params.alpha / (params.sigma * a.base_mass);
  a.alpha_over_mu = params.alpha / params.mu;
  a.exponent = params.alpha - 1.0;
  a.inner_scale = 1.0 / params.sigma;
  a.inner_shift = params.mu / params.sigma;
  a.leading_inconsistent = std::abs(a.leading - ref.leading) / ref.leading > 0.02;
  a.published_matches_alpha_over_mu =
      std::abs(a.alpha_over_mu - ref.leading) / ref.leading <= 0.02;
  return a;
}

nlohmann::json CoefficientAudit::to_json(Sign sign) const {
  const auto& ref = published::for_sign(sign);
  auto rel = [](double value, double reference) {
    return (value - reference) / std::abs(reference);
  };
  return {
      {"computed",
       {{"leading_alpha_over_sigma_dF", leading},
        {"leading_alpha_over_mu", alpha_over_mu},
        {"exponent", exponent},
        {"inner_scale", inner_scale},
        {"inner_shift", inner_shift},
        {"base_mass", base_mass}}},
      {"published",
       {{"leading", ref.leading},
        {"exponent", ref.exponent},
        {"inner_scale", ref.inner_scale},
        {"inner_shift", ref.inner_shift}}},
      {"relative_deviation",
       {{"leading_alpha_over_sigma_dF", rel(leading, ref.leading)},
        {"leading_alpha_over_mu", rel(alpha_over_mu, ref.leading)},
        {"exponent", rel(exponent, ref.exponent)},
        {"inner_scale", rel(inner_scale, ref.inner_scale)},
        {"inner_shift", rel(inner_shift, ref.inner_shift)}}},
      {"leading_coefficient_inconsistent", leading_inconsistent},
      {"published_leading_matches_alpha_over_mu", published_matches_alpha_over_mu},
      {"note",
       "leading constant of the displayed formula is alpha/(sigma*(F(R)-F(L))); "
       "the published constant is compared against it and against alpha/mu"},
  };
}

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  out.back() = hi;
  return out;
}

std::string histogram_csv(const Histogram& h, const std::string& config_hash) {
  std::vector<std::vector<double>> rows;
  const auto centers = h.centers();
  for (std::size_t i = 0; i < centers.size(); ++i) rows.push_back({centers[i], h.densities[i]});
  return format_csv(config_hash, "bin_center,density", rows);
}

}  // namespace

nlohmann::json collapse_bundle(std::span<const double> values, Sign sign,
                               double alpha_star, const BhpTable& table,
                               const CollapseOptions& options,
                               const std::filesystem::path& out_dir,
                               const std::string& config_hash,
                               const nlohmann::json& context) {
  const std::string side = sign == Sign::kPositive ? "positive" : "negative";
  if (values.empty()) {
    throw DataError("the " + side + " partition is empty; nothing to collapse");
  }
  const RescaledStats stats = rescale_and_normalize(values, alpha_star, sign);
  const TruncatedDist dist([&table](double x) { return table.cdf(x); }, stats.L_alpha,
                           stats.R_alpha, options.truncation_mode);
  const EmpiricalCdf empirical(stats.fluctuations);
  const KsResult ks = ks_statistic(empirical, dist);
  const DerivedPdfParams params{alpha_star, stats.mu_alpha, stats.sigma_alpha,
                                stats.L_alpha, stats.R_alpha};
  const CoefficientAudit audit = coefficient_audit(params, sign, table);

  std::filesystem::create_directories(out_dir);
  std::map<std::string, std::string> files;

  files["fluct_hist.csv"] =
      histogram_csv(histogram(stats.fluctuations, options.n_bins), config_hash);

  {
    std::vector<std::vector<double>> rows;
    for (double u : linspace(stats.L_alpha, stats.R_alpha, options.curve_points)) {
      rows.push_back({u, table.pdf(u) / dist.base_mass()});
    }
    files["bhp_overlay.csv"] = format_csv(config_hash, "u,pdf", rows);
  }

  files["return_hist.csv"] = histogram_csv(histogram(values, options.n_bins), config_hash);

  {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    std::vector<std::vector<double>> rows;
    for (double x : linspace(*lo, *hi, options.curve_points)) {
      rows.push_back({x, derived_return_pdf(x, params, table)});
    }
    files["derived_pdf.csv"] = format_csv(config_hash, "x,pdf", rows);
  }

  {
    std::vector<double> grid = linspace(stats.L_alpha - 0.5, stats.R_alpha + 0.5,
                                        options.curve_points);
    grid.insert(grid.end(), empirical.sorted_samples().begin(),
                empirical.sorted_samples().end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    std::vector<std::vector<double>> rows;
    for (const auto& [x, D] : discrepancy_curve(empirical, dist, grid)) rows.push_back({x, D});
    files["discrepancy.csv"] = format_csv(config_hash, "x,D", rows);
  }

  nlohmann::json summary = context;
  summary["config_hash"] = config_hash;
  summary["sign"] = std::string(to_string(sign));
  summary["alpha_star"] = alpha_star;
  summary["n"] = stats.n;
  summary["stats"] = {{"mu_alpha", stats.mu_alpha},
                      {"sigma_alpha", stats.sigma_alpha},
                      {"L_alpha", stats.L_alpha},
                      {"R_alpha", stats.R_alpha}};
  summary["ks"] = {{"d", ks.d},
                   {"p_value", ks.p_value},
                   {"location_of_max", ks.location_of_max},
                   {"truncation_mode", std::string(to_string(options.truncation_mode))},
                   {"p_value_convention", std::string(kPvalueConvention)}};
  summary["coefficient_audit"] = audit.to_json(sign);
  summary["n_bins"] = options.n_bins;
  nlohmann::json hashes = nlohmann::json::object();
  for (const auto& [name, contents] : files) {
    write_file(out_dir / name, contents);
    hashes[name] = sha256_hex(contents);
  }
  summary["content_hashes"] = hashes;
  write_file(out_dir / "summary.json", summary.dump(2) + "\n");
  return summary;
}

}  // namespace bhp
