#include "bhp/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bhp {

void SpectrumConfig::validate() const {
  if (lattice_side < 2) {
    throw std::invalid_argument("lattice side must be >= 2, got " +
                                std::to_string(lattice_side));
  }
  // N = L^2 must stay well inside int range.
  if (lattice_side > 4096) {
    throw std::invalid_argument("lattice side too large: " +
                                std::to_string(lattice_side));
  }
}

Spectrum Spectrum::from_eigenvalues(std::vector<double> eigenvalues) {
  if (eigenvalues.empty()) {
    throw std::invalid_argument("spectrum must contain at least one mode");
  }
  for (double v : eigenvalues) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("spectrum eigenvalues must be positive and finite");
    }
  }
  std::sort(eigenvalues.begin(), eigenvalues.end());
  return Spectrum(std::move(eigenvalues));
}

Spectrum build_spectrum(const SpectrumConfig& config) {
  config.validate();
  const int side = config.lattice_side;
  std::vector<double> cosines(static_cast<std::size_t>(side));
  for (int k = 0; k < side; ++k) {
    cosines[static_cast<std::size_t>(k)] =
        2.0 * std::cos(2.0 * std::numbers::pi * k / side);
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(config.mode_count() - 1));
  for (int k1 = 0; k1 < side; ++k1) {
    for (int k2 = 0; k2 < side; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      values.push_back(4.0 - cosines[static_cast<std::size_t>(k1)] -
                       cosines[static_cast<std::size_t>(k2)]);
    }
  }
  return Spectrum::from_eigenvalues(std::move(values));
}

}  // namespace bhp
