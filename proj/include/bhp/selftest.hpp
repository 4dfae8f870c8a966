#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bhp/bhp_dist.hpp"
#include "bhp/sweep.hpp"

namespace bhp {

// Inverse-cdf draws from the table restricted to [lower, upper].
std::vector<double> sample_table(const BhpTable& table, std::size_t n, double lower,
                                 double upper, std::mt19937_64& rng);

struct PlantedAlphaSetup {
  double alpha0 = 0.45;
  double mu0 = 0.11;
  double sigma0 = 0.05;
  std::size_t n = 2000;
};

struct PlantedAlphaTrial {
  std::uint64_t seed = 0;
  double alpha_star = 0.0;
  double p_star = 0.0;
  double error = 0.0;  // |alpha_star - alpha0|
};

// z from the table truncated to z > -mu0/sigma0, v = (sigma0 z + mu0)^(1/alpha0),
// then a default sweep over [0.30, 0.60] step 0.01 on v.
PlantedAlphaTrial planted_alpha_trial(const BhpTable& table, std::uint64_t seed,
                                      const PlantedAlphaSetup& setup = {});

// z from the full table, shifted positive, analysed at alpha = 1; returns the
// KS p-value.
double null_calibration_trial(const BhpTable& table, std::uint64_t seed,
                              std::size_t n = 2000);

struct SelftestReport {
  std::vector<PlantedAlphaTrial> planted;
  double planted_median_error = 0.0;
  bool planted_pass = false;  // median error <= 0.02
  std::vector<double> null_p_values;
  std::size_t null_passes = 0;  // p > 0.05
  std::size_t null_required = 0;
  bool null_pass = false;
};

// `null_required` scales 93/100 to the number of trials (rounded up).
SelftestReport run_selftest(const BhpTable& table, std::size_t planted_seeds,
                            std::size_t null_trials, std::uint64_t base_seed);

}  // namespace bhp
