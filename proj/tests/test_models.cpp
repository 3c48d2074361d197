#include <gtest/gtest.h>

#include "engel/error.hpp"
#include "engel/invariants.hpp"
#include "engel/lifting.hpp"
#include "engel/models.hpp"

using namespace engel;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no engel::Error thrown";
  return ErrorCode::BadMove;
}

}  // namespace

TEST(ModelFront, AllRotationsAndSeedsCertify) {
  for (int n = -5; n <= 5; ++n) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      SCOPED_TRACE("n = " + std::to_string(n) + ", seed = " + std::to_string(seed));
      const auto loop = model_front(n, seed);
      EXPECT_LE(std::abs(loop.legendrian().closure_defect_z()), 1e-9);
      EXPECT_LE(std::abs(loop.closure_defect_w()), 1e-9);
      const auto embedding = embedding_check(loop);
      EXPECT_TRUE(embedding.embedded);
      EXPECT_GT(embedding.margin, 1e-7);
      const auto inv = invariant_report(loop.legendrian());
      EXPECT_EQ(inv.rot_winding, n);
      EXPECT_EQ(inv.rot_cusp, n);
    }
  }
}

TEST(ModelFront, LargerRotations) {
  for (int n : {-9, 12}) {
    const auto loop = model_front(n, 4, 2048);
    const auto inv = invariant_report(loop.legendrian());
    EXPECT_EQ(inv.rot_winding, n);
    EXPECT_EQ(inv.rot_cusp, n);
    EXPECT_TRUE(embedding_check(loop).embedded);
  }
}

TEST(ModelFront, ResidualAtDefaultResolution) {
  const auto r = horizontality_residual(model_front(2, 9));
  EXPECT_LE(r.z, 1e-8);
  EXPECT_LE(r.w, 1e-8);
}

TEST(ModelFront, Figures) {
  const auto one = invariant_report(figure1().legendrian());
  EXPECT_EQ(one.rot_cusp, 3);
  EXPECT_EQ(one.cusps.c_minus - one.cusps.c_plus, 6);
  const auto two = invariant_report(figure2().legendrian());
  EXPECT_EQ(two.rot_cusp, 0);
  EXPECT_EQ(two.cusps.c_plus, two.cusps.c_minus);
  EXPECT_GT(two.cusps.c_plus, 0);
}

TEST(ModelFront, Deterministic) {
  const auto a = model_front(-2, 42, 1024);
  const auto b = model_front(-2, 42, 1024);
  EXPECT_TRUE(a.generator() == b.generator());
  const auto c = model_front(-2, 43, 1024);
  EXPECT_FALSE(a.generator() == c.generator());
}

TEST(ModelFront, BoundsAndFailure) {
  EXPECT_EQ(code_of([] { model_front(65, 1); }), ErrorCode::BadDescription);
  Tolerances impossible;
  impossible.closure = 0.0;
  impossible.embed = 1e300;
  EXPECT_EQ(code_of([&] { model_front(1, 1, 512, impossible); }), ErrorCode::SynthesisFailed);
}

TEST(OrientationReverse, NegatesRotAndKeepsMargin) {
  const auto loop = model_front(3, 5, 2048);
  const auto back = orientation_reverse(loop);
  const auto inv = invariant_report(back.legendrian());
  EXPECT_EQ(inv.rot_winding, -3);
  EXPECT_EQ(inv.rot_cusp, -3);
  EXPECT_EQ(embedding_check(back).margin, embedding_check(loop).margin);

  const auto zero = orientation_reverse(model_front(0, 5, 2048));
  EXPECT_EQ(rot_winding(zero.generator()), 0);
}

TEST(OrientationReverse, IsAnInvolution) {
  const auto loop = model_front(-1, 8, 1024);
  const auto twice = orientation_reverse(orientation_reverse(loop));
  EXPECT_TRUE(twice.generator() == loop.generator());
  for (std::size_t k = 0; k < loop.size(); ++k) {
    ASSERT_NEAR(twice.legendrian().z()[k], loop.legendrian().z()[k], 1e-15);
    ASSERT_NEAR(twice.w()[k], loop.w()[k], 1e-15);
  }
}
