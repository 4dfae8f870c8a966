#include "bhp/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace bhp {

void QuadratureSettings::validate() const {
  if (!(x_max > 0.0) || !std::isfinite(x_max)) {
    throw std::invalid_argument("quadrature x_max must be positive");
  }
  if (!(abs_tol > 0.0)) {
    throw std::invalid_argument("quadrature abs_tol must be positive");
  }
  if (max_subdivisions < 1) {
    throw std::invalid_argument("quadrature max_subdivisions must be >= 1");
  }
}

namespace {

// Kronrod 15-point abscissae (positive half, descending) and weights; the
// odd-indexed nodes are the embedded 7-point Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a;
  double b;
  double value;
  double error;

  bool operator<(const Piece& other) const { return error < other.error; }
};

Piece gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    int max_subdivisions, int initial_pieces) {
  if (!(b > a)) {
    throw std::invalid_argument("integration interval must satisfy b > a");
  }
  const int pieces = std::max(1, std::min(initial_pieces, max_subdivisions));
  std::priority_queue<Piece> heap;
  double total = 0.0;
  double error = 0.0;
  const double width = (b - a) / pieces;
  for (int i = 0; i < pieces; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == pieces) ? b : a + (i + 1) * width;
    Piece p = gauss_kronrod(f, lo, hi);
    total += p.value;
    error += p.error;
    heap.push(p);
  }
  int in_use = pieces;
  while (error > abs_tol) {
    if (in_use >= max_subdivisions) {
      throw QuadratureError(
          "quadrature did not converge: error estimate " +
              std::to_string(error) + " > tolerance after " +
              std::to_string(in_use) + " subdivisions",
          std::numeric_limits<double>::quiet_NaN());
    }
    Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Piece left = gauss_kronrod(f, worst.a, mid);
    Piece right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++in_use;
  }
  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  return {total, error, in_use};
}

}  // namespace bhp
