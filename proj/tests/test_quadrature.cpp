#include "bhp/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace {

TEST(Quadrature, PolynomialIsExact) {
  const auto r = bhp::integrate_adaptive([](double x) { return x * x * x - 2 * x; }, 0.0,
                                         2.0, 1e-12, 50);
  EXPECT_NEAR(r.value, 0.0, 1e-13);
}

TEST(Quadrature, OscillatoryIntegrand) {
  // Int_0^pi cos(40 x) e^{-x} dx = (1 - e^{-pi}) / (1 + 1600) (cos(40 pi) = 1).
  const double expected = (1.0 - std::exp(-std::numbers::pi)) / 1601.0;
  const auto r = bhp::integrate_adaptive(
      [](double x) { return std::cos(40 * x) * std::exp(-x); }, 0.0, std::numbers::pi,
      1e-12, 1000);
  EXPECT_NEAR(r.value, expected, 1e-12);
  EXPECT_LE(r.error_estimate, 1e-12);
}

TEST(Quadrature, BudgetExhaustionThrows) {
  EXPECT_THROW(bhp::integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0,
                                       1e-15, 3, 1),
               bhp::QuadratureError);
}

TEST(Quadrature, SettingsValidation) {
  EXPECT_NO_THROW(bhp::QuadratureSettings{}.validate());
  EXPECT_THROW((bhp::QuadratureSettings{0.0, 1e-9, 10}.validate()), std::invalid_argument);
  EXPECT_THROW((bhp::QuadratureSettings{10.0, 0.0, 10}.validate()), std::invalid_argument);
  EXPECT_THROW((bhp::QuadratureSettings{10.0, 1e-9, 0}.validate()), std::invalid_argument);
}

}  // namespace
