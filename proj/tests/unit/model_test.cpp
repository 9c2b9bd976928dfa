#include <gtest/gtest.h>

#include "fluidaoi/errors.hpp"
#include "fluidaoi/model.hpp"

namespace fluidaoi {
namespace {

ModelParams table1_a() { return ModelParams::make({1.0, 2.0, 1.5, 1.0, 2.0}); }

TEST(ModelParams, RejectsInvalidRates) {
  EXPECT_THROW(ModelParams::make({0.0, 1.0, 1.0, 1.0, 1.0}), InvalidParams);
  EXPECT_THROW(ModelParams::make({1.0, -1.0, 1.0, 1.0, 1.0}), InvalidParams);
  EXPECT_THROW(ModelParams::make({1.0, 1.0, 2.0, 1.0, 1.0}), InvalidParams);
  EXPECT_THROW(ModelParams::make({1.0, 1.0, 1.0, 0.0, 1.0}), InvalidParams);
  EXPECT_THROW(ModelParams::make({1.0, 1.0, 1.0, 1.0, 1.0}, 0), InvalidParams);
  EXPECT_THROW(ModelParams::make({1.0, 1.0, 1.0, 1.0, 1.0}, std::nullopt, 0.0), InvalidParams);
  EXPECT_NO_THROW(ModelParams::make({1.0, 1.0, 0.0, 1.0, 1.0}));
}

TEST(ModelParams, CopiesRevalidate) {
  const auto p = table1_a();
  EXPECT_DOUBLE_EQ(p.with_lambda(0.7).lambda(), 0.7);
  EXPECT_THROW((void)p.with_lambda(-1.0), InvalidParams);
  EXPECT_EQ(p.with_buffer(3).buffer(), 3);
  EXPECT_FALSE(p.with_reservoir(2.0).infinite_reservoir());
}

TEST(Sigma, Examples) {
  EXPECT_DOUBLE_EQ(sigma(ModelParams::make({1, 1, 1, 1, 2})), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(sigma(ModelParams::make({1, 1, 1, 1, 1})), 0.5);
  EXPECT_DOUBLE_EQ(sigma(ModelParams::make({1, 1, 1, 2, 3})), 0.4);
}

TEST(Zeta, Examples) {
  EXPECT_NEAR(zeta(table1_a()), 0.2, 1e-15);
  EXPECT_NEAR(zeta(ModelParams::make({1.0, 1.5, 1.1, 1.0, 1.0})), 0.126984126984, 1e-11);
  EXPECT_EQ(zeta(ModelParams::make({0.5, 1.0, 1.0, 1.0, 2.0})), 0.0);
}

TEST(Eta, ReducesToLoadWhenUnregulated) {
  EXPECT_NEAR(eta(table1_a()), 8.0 / 15.0, 1e-15);
  for (double lam : {0.4, 0.6, 0.9}) {
    EXPECT_NEAR(eta(ModelParams::make({lam, 1.0, 1.0, 1.0, 2.0})), lam, 1e-14);
  }
}

TEST(Stability, InfiniteBufferChain) {
  EXPECT_TRUE(stability_infinite(table1_a()));
  EXPECT_FALSE(stability_infinite(ModelParams::make({0.2, 1, 1, 1, 2})));
  // lambda/mu2 = 0.8 < 1 and sigma = 1/3 < 0.6: all three bounds hold.
  EXPECT_TRUE(stability_infinite(ModelParams::make({1.2, 2.0, 1.5, 1.0, 2.0})));
  EXPECT_FALSE(stability_infinite(ModelParams::make({1.6, 2.0, 1.5, 1.0, 2.0})));
  EXPECT_THROW((void)zeta(ModelParams::make({0.2, 1, 1, 1, 2})), StabilityViolation);
}

TEST(Stability, BoundaryIsRejected) {
  // lambda/mu1 == sigma exactly.
  EXPECT_FALSE(stability_infinite(ModelParams::make({1.0 / 3.0, 1, 1, 1, 2})));
  // lambda == mu2 exactly.
  EXPECT_FALSE(stability_infinite(ModelParams::make({1.0, 2.0, 1.0, 1.0, 2.0})));
}

TEST(Stability, FiniteBufferSum) {
  EXPECT_TRUE(stability_finite_buffer(ModelParams::make({1, 1, 1, 1, 2}), 1));
  EXPECT_FALSE(stability_finite_buffer(ModelParams::make({0.4, 1, 1, 1, 2}), 1));
  EXPECT_TRUE(stability_finite_buffer(ModelParams::make({0.4, 1, 1, 1, 2}), 2));
  EXPECT_TRUE(stability_finite_buffer(ModelParams::make({1, 1, 0, 1, 2}), 1));
  EXPECT_THROW((void)stability_finite_buffer(ModelParams::make({1, 1, 1, 1, 2}), 0), InvalidParams);
}

TEST(Stability, FiniteConditionIsMonotoneInBuffer) {
  const auto p = ModelParams::make({0.3, 1, 1, 1, 2});
  bool previous = false;
  for (int n = 1; n <= 10; ++n) {
    const bool now = stability_finite_buffer(p, n);
    EXPECT_TRUE(now || !previous) << "n = " << n;
    previous = now;
  }
}

}  // namespace
}  // namespace fluidaoi
