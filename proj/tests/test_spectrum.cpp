#include "bhp/spectrum.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lattice_oracle.hpp"

namespace {

using bhp::testing::dense_nonzero_eigenvalues;

TEST(Spectrum, SideTwoMatchesHandDiagonalization) {
  const auto s = bhp::build_spectrum({2});
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.mode_count(), 4);
  EXPECT_NEAR(s.eigenvalues()[0], 4.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues()[1], 4.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues()[2], 8.0, 1e-12);
}

TEST(Spectrum, ClosedFormEqualsDenseDiagonalization) {
  for (int side : {2, 3, 4, 10}) {
    const auto closed = bhp::build_spectrum({side});
    const auto dense = dense_nonzero_eigenvalues(side);
    ASSERT_EQ(closed.size(), dense.size()) << "L=" << side;
    for (std::size_t k = 0; k < dense.size(); ++k) {
      EXPECT_NEAR(closed.eigenvalues()[k], dense[k], 1e-10) << "L=" << side << " k=" << k;
    }
  }
}

TEST(Spectrum, SideTenSmallestMode) {
  const auto s = bhp::build_spectrum({10});
  ASSERT_EQ(s.size(), 99u);
  const double expected = 4.0 - 2.0 * std::cos(2.0 * std::numbers::pi / 10.0) - 2.0;
  EXPECT_NEAR(s.eigenvalues().front(), expected, 1e-14);
  EXPECT_NEAR(s.eigenvalues().front(), 0.38196601125, 1e-10);
  EXPECT_NEAR(s.eigenvalues().back(), 8.0, 1e-12);
}

TEST(Spectrum, SortedPositiveAndSized) {
  for (int side = 2; side <= 12; ++side) {
    const auto s = bhp::build_spectrum({side});
    ASSERT_EQ(static_cast<int>(s.size()), side * side - 1);
    for (std::size_t k = 0; k < s.size(); ++k) {
      EXPECT_GT(s.eigenvalues()[k], 0.0);
      if (k) EXPECT_LE(s.eigenvalues()[k - 1], s.eigenvalues()[k]);
    }
  }
}

TEST(Spectrum, RejectsDegenerateLattice) {
  EXPECT_THROW(bhp::build_spectrum({1}), std::invalid_argument);
  EXPECT_THROW(bhp::build_spectrum({0}), std::invalid_argument);
  EXPECT_THROW(bhp::build_spectrum({-3}), std::invalid_argument);
}

TEST(Spectrum, InjectedSpectrumIsSortedAndChecked) {
  const auto s = bhp::Spectrum::from_eigenvalues({3.0, 1.0, 2.0});
  EXPECT_EQ(s.eigenvalues()[0], 1.0);
  EXPECT_EQ(s.eigenvalues()[2], 3.0);
  EXPECT_EQ(s.mode_count(), 4);
  EXPECT_THROW(bhp::Spectrum::from_eigenvalues({1.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(bhp::Spectrum::from_eigenvalues({}), std::invalid_argument);
}

}  // namespace
