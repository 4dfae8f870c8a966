#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bhp {

// Side length of the periodic L x L lattice; the mode count is N = L^2.
struct SpectrumConfig {
  int lattice_side = 10;

  int mode_count() const { return lattice_side * lattice_side; }
  void validate() const;
};

// The N-1 nonzero eigenvalues entering the characteristic function, kept
// sorted ascending. Any positive spectrum may be injected through
// from_eigenvalues(); build_spectrum() produces the lattice Laplacian one.
class Spectrum {
 public:
  static Spectrum from_eigenvalues(std::vector<double> eigenvalues);

  std::span<const double> eigenvalues() const { return eigenvalues_; }
  std::size_t size() const { return eigenvalues_.size(); }
  int mode_count() const { return static_cast<int>(eigenvalues_.size()) + 1; }

 private:
  explicit Spectrum(std::vector<double> eigenvalues)
      : eigenvalues_(std::move(eigenvalues)) {}

  std::vector<double> eigenvalues_;
};

// lambda(k1,k2) = 4 - 2 cos(2 pi k1 / L) - 2 cos(2 pi k2 / L) over all
// (k1,k2) != (0,0), sorted ascending.
Spectrum build_spectrum(const SpectrumConfig& config);

}  // namespace bhp
