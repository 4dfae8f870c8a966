#pragma once

#include <span>
#include <vector>

#include "bhp/bhp_dist.hpp"
#include "bhp/ks.hpp"
#include "bhp/returns.hpp"

namespace bhp {

struct SweepSpec {
  double alpha_min = 0.30;
  double alpha_max = 0.60;
  double step = 0.01;
  Sign sign = Sign::kPositive;
  TruncationMode truncation_mode = TruncationMode::kShifted;

  void validate() const;
  // alpha_min + i * step for i = 0 .. floor((max - min) / step).
  std::vector<double> alphas() const;
};

struct SweepPoint {
  double alpha = 0.0;
  double d = 0.0;
  double p_value = 0.0;
  double mu = 0.0;
  double sigma = 0.0;
  double L = 0.0;
  double R = 0.0;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepPoint> points;  // ascending alpha
  double alpha_star = 0.0;         // argmax p, smallest alpha on ties
  double p_star = 0.0;
};

// Rescale at one alpha, truncate the table cdf to that alpha's own extremes
// and run the KS test against it.
SweepPoint evaluate_alpha(std::span<const double> values, double alpha, Sign sign,
                          TruncationMode mode, const BhpTable& table);

// Alpha grid points are evaluated under OpenMP; bit-identical to sweep_serial.
SweepResult sweep(std::span<const double> values, const SweepSpec& spec,
                  const BhpTable& table);
SweepResult sweep_serial(std::span<const double> values, const SweepSpec& spec,
                         const BhpTable& table);

}  // namespace bhp
