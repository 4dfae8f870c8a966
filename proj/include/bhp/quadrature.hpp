#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace bhp {

struct QuadratureSettings {
  double x_max = 600.0;  // truncation of the inversion integral
  double abs_tol = 1e-9;
  int max_subdivisions = 2000;

  void validate() const;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double abscissa)
      : std::runtime_error(what), abscissa_(abscissa) {}

  // Point at which the density was being evaluated (NaN when not tied to one).
  double abscissa() const { return abscissa_; }

 private:
  double abscissa_;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
};

// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
// Bisects the interval with the largest |K15 - G7| until the summed estimate
// is <= abs_tol. Throws QuadratureError when max_subdivisions intervals are
// in use and the tolerance is still unmet.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    int max_subdivisions,
                                    int initial_pieces = 8);

}  // namespace bhp
