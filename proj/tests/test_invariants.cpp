#include <gtest/gtest.h>

#include <cmath>
#include <optional>
#include <random>

#include "engel/error.hpp"
#include "engel/invariants.hpp"
#include "engel/lifting.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace engel;
using fixtures::c;
using fixtures::s;

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

// x + iy = e^{2πins} + small random harmonics up to 8.
SeriesDescription random_description(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> noise(0.0, 0.12);
  SeriesDescription d;
  const int lead = n == 0 ? 1 : std::abs(n);
  d.x.push_back(c(lead, 1.0));
  d.y.push_back(s(lead, n < 0 ? -1.0 : 1.0));
  if (n == 0) d.y.back() = s(2, 1.0);
  for (int k = 1; k <= 8; ++k) {
    d.x.push_back(c(k, noise(rng)));
    d.x.push_back(s(k, noise(rng)));
    d.y.push_back(c(k, noise(rng)));
    d.y.push_back(s(k, noise(rng)));
  }
  return d;
}

}  // namespace

TEST(RotWinding, CirclesAndCovers) {
  for (int k : {1, 2, 3}) {
    const auto d = fixtures::circle(k);
    EXPECT_NEAR(oracle::winding(d, 100'000), k, 1e-9);
    EXPECT_EQ(rot_winding(sample_generator(d, 256)), k);
  }
  EXPECT_EQ(rot_winding(reversed(sample_generator(fixtures::circle(), 256))), -1);
}

TEST(RotWinding, AgreesWithDenseOracleOnRandomLoops) {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(rng() % 7) - 3;
    const auto d = random_description(rng, n);
    if (oracle::min_speed(d, 50'000) < 0.5) continue;
    const double dense = oracle::winding(d, 50'000);
    EXPECT_EQ(rot_winding(sample_generator(d, 512)), static_cast<int>(std::lround(dense)));
    ++checked;
  }
  EXPECT_GE(checked, 20);
}

TEST(RotWinding, NearlySingularVelocityIsAmbiguous) {
  // The velocity passes within ~1e-4 of the origin near s = ¼ and turns by
  // almost π there, far below the grid spacing.
  SeriesDescription d{{s(1, 1.0)}, {c(4, 1.0), c(1, 1e-3)}};
  EXPECT_EQ(code_of([&] { rot_winding(sample_generator(d, 256)); }), ErrorCode::AmbiguousWinding);
}

TEST(ClassifyCusps, FigureEightHasOneOfEach) {
  SeriesDescription d{{s(1, 1.0)}, {s(2, 1.0)}};
  const auto front = front_of(LegendrianLoop(sample_generator(d, 512), 0.0));
  const auto count = classify_cusps(front);
  EXPECT_EQ(count.c_plus, 1);
  EXPECT_EQ(count.c_minus, 1);
  EXPECT_EQ(rot_cusp(front), 0);
}

TEST(ClassifyCusps, CalibrationLoopWithWindingOne) {
  SeriesDescription d{{c(1, 1.0)}, {fixtures::constant(2.0), s(1, 1.0)}};
  const auto g = balance_closure(sample_generator(d, 2048));
  const auto front = front_of(LegendrianLoop(g, 0.0));
  const auto count = classify_cusps(front);
  EXPECT_EQ(count.c_plus + count.c_minus, static_cast<int>(front.cusps.size()));
  EXPECT_EQ(rot_cusp(front), 1);
  EXPECT_EQ(rot_winding(g), 1);
}

TEST(RotCusp, OddImbalanceIsReported) {
  FrontDiagram front;
  front.cusps.push_back({0.1, 0.0, 0.0, CuspOrientation::Up});
  EXPECT_EQ(code_of([&] { rot_cusp(front); }), ErrorCode::OddCuspImbalance);
  front.cusps.push_back({0.6, 0.0, 0.0, CuspOrientation::Down});
  EXPECT_EQ(rot_cusp(front), 0);
  front.cusps.push_back({0.7, 0.0, 0.0, CuspOrientation::Down});
  front.cusps.push_back({0.8, 0.0, 0.0, CuspOrientation::Down});
  EXPECT_EQ(rot_cusp(front), 1);
}

TEST(Consistency, CuspFormulaMatchesWindingOnBalancedCorpus) {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int trial = 0; trial < 80 && checked < 30; ++trial) {
    const int n = static_cast<int>(rng() % 7) - 3;
    const auto d = random_description(rng, n);
    std::optional<LegendrianGenerator> g;
    try {
      g.emplace(balance_closure(sample_generator(d, 1024)));
    } catch (const Error&) {
      continue;
    }
    const auto report = invariant_report(LegendrianLoop(*g, 0.0));
    EXPECT_EQ(report.rot_cusp, report.rot_winding);
    const auto back = invariant_report(LegendrianLoop(reversed(*g), 0.0));
    EXPECT_EQ(back.rot_winding, -report.rot_winding);
    EXPECT_EQ(back.rot_cusp, -report.rot_cusp);
    ++checked;
  }
  EXPECT_GE(checked, 30);
}

TEST(InvariantReport, Json) {
  SeriesDescription d{{s(1, 1.0)}, {s(2, 1.0)}};
  const auto j = to_json(invariant_report(LegendrianLoop(sample_generator(d, 256), 0.0)));
  EXPECT_EQ(j.dump(), R"({"c_minus":1,"c_plus":1,"rot_cusp":0,"rot_winding":0})");
}
