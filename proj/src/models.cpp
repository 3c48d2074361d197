#include "engel/models.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <random>

#include "engel/error.hpp"
#include "engel/invariants.hpp"
#include "engel/lifting.hpp"

namespace engel {
namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Harmonic {
  int k;
  cplx c;
};

// x + iy = Σ c_k e^{2πiks}; found by a random search for winding 1 with
// speed bounded well away from zero.
const std::vector<Harmonic> kRotOne = {
    {-2, {0.006, -0.193}}, {-1, {1.871, 1.455}}, {1, {-1.898, -1.322}}, {2, {-0.122, -0.296}},
    {3, {0.15, 0.152}},
};

std::vector<Harmonic> base_harmonics(int n) {
  const int m = std::abs(n);
  if (m == 0) {
    // x = sin 2πs, y = sin 4πs.
    return {{1, {0.0, -0.5}}, {-1, {0.0, 0.5}}, {2, {0.5, 0.0}}, {-2, {-0.5, 0.0}}};
  }
  if (m == 1) return kRotOne;
  return {{m, {1.0, 0.0}}, {-1, {std::sqrt(static_cast<double>(m)), 0.0}}};
}

struct Candidate {
  double a, b;
  std::size_t i, j;
  double norm;
};

// Trigonometric modes cos/sin 2πks, k = 1..5, sampled on the grid.
std::vector<std::vector<double>> trig_modes(std::size_t n) {
  std::vector<std::vector<double>> modes;
  for (int k = 1; k <= 5; ++k) {
    std::vector<double> cs(n), sn(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double t = kTwoPi * k * static_cast<double>(j) / static_cast<double>(n);
      cs[j] = std::cos(t);
      sn[j] = std::sin(t);
    }
    modes.push_back(std::move(cs));
    modes.push_back(std::move(sn));
  }
  return modes;
}

// Adds to `d` the two low trigonometric modes that cancel both closure
// defects, taking the smallest correction that keeps the winding and a
// healthy speed.
void prebalance(SeriesDescription& d, std::size_t samples, int winding) {
  const auto g = sample_generator(d, samples);
  const auto xp = g.x_prime();
  const auto d0 = closure_defects(xp, g.y());
  if (std::abs(d0[0]) <= 1e-13 && std::abs(d0[1]) <= 1e-13) return;

  const auto modes = trig_modes(g.size());
  std::vector<std::array<double, 2>> columns;
  for (const auto& m : modes) columns.push_back(closure_defects(xp, m));

  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    for (std::size_t j = i + 1; j < modes.size(); ++j) {
      Eigen::Matrix2d m;
      m << columns[i][0], columns[j][0], columns[i][1], columns[j][1];
      const Eigen::Vector2d sv = Eigen::JacobiSVD<Eigen::Matrix2d>(m).singularValues();
      if (!(sv(1) > 0.0) || sv(0) / sv(1) > 1e6) continue;
      const Eigen::Vector2d ab = m.partialPivLu().solve(Eigen::Vector2d(-d0[0], -d0[1]));
      candidates.push_back({ab(0), ab(1), i, j, ab.norm()});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& p, const Candidate& q) { return p.norm < q.norm; });

  auto term = [](std::size_t mode, double coeff) {
    const int k = static_cast<int>(mode / 2) + 1;
    return SeriesTerm{mode % 2 == 0 ? SeriesTerm::Kind::Cos : SeriesTerm::Kind::Sin, coeff, k};
  };
  for (const auto& cand : candidates) {
    std::vector<double> y(g.y().begin(), g.y().end());
    for (std::size_t k = 0; k < y.size(); ++k) {
      y[k] += cand.a * modes[cand.i][k] + cand.b * modes[cand.j][k];
    }
    try {
      const auto out = g.with_y(std::move(y));
      if (out.min_speed() > 0.3 && rot_winding(out) == winding) {
        d.y.push_back(term(cand.i, cand.a));
        d.y.push_back(term(cand.j, cand.b));
        return;
      }
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::SynthesisFailed, "no trigonometric pre-balance keeps the winding");
}

}  // namespace

SeriesDescription model_description(int n, std::uint64_t seed, std::size_t samples, int attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(attempt)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto harmonics = base_harmonics(n);
  for (int k = -3; k <= 3; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    harmonics.push_back({k, 0.03 * cplx(re, im)});
  }
  // c e^{2πiks} = (Re c cos - Im c sin) + i (Im c cos + Re c sin) at |k|,
  // with the sine sign flipped for negative k.
  const double flip = n < 0 ? -1.0 : 1.0;
  double cx = 0.0, cy = 0.0;
  std::map<int, std::array<double, 4>> acc;  // |k| -> (x cos, x sin, y cos, y sin)
  for (const auto& h : harmonics) {
    if (h.k == 0) {
      cx += h.c.real();
      cy += h.c.imag();
      continue;
    }
    const double sg = h.k > 0 ? 1.0 : -1.0;
    auto& a = acc[std::abs(h.k)];
    a[0] += h.c.real();
    a[1] -= sg * h.c.imag();
    a[2] += h.c.imag();
    a[3] += sg * h.c.real();
  }
  SeriesDescription d;
  d.x.push_back({SeriesTerm::Kind::Constant, cx, 0});
  d.y.push_back({SeriesTerm::Kind::Constant, flip * cy, 0});
  for (const auto& [k, a] : acc) {
    d.x.push_back({SeriesTerm::Kind::Cos, a[0], k});
    d.x.push_back({SeriesTerm::Kind::Sin, a[1], k});
    d.y.push_back({SeriesTerm::Kind::Cos, flip * a[2], k});
    d.y.push_back({SeriesTerm::Kind::Sin, flip * a[3], k});
  }
  if (rot_winding(sample_generator(d, samples)) != n) {
    throw Error(ErrorCode::SynthesisFailed, "perturbed base lost its winding");
  }
  prebalance(d, samples, n);
  return d;
}

HorizontalLoop model_front(int n, std::uint64_t seed, std::size_t samples, const Tolerances& tol) {
  if (std::abs(n) > kMaxModelRotation) {
    throw Error(ErrorCode::BadDescription,
                "|rot| " + std::to_string(std::abs(n)) + " exceeds " +
                    std::to_string(kMaxModelRotation));
  }
  std::string diagnostic;
  for (int attempt = 0; attempt < kModelRetryCap; ++attempt) {
    try {
      const auto d = model_description(n, seed, samples, attempt);
      const auto g = balance_closure(sample_generator(d, samples));
      auto loop = lift(g, 0.0, 0.0, tol);
      if (!loop.closed(tol.closure)) {
        diagnostic = "closure defect above tolerance";
        continue;
      }
      const auto embedding = embedding_check(loop, tol);
      if (!embedding.embedded) {
        diagnostic = "embedding margin " + std::to_string(embedding.margin);
        continue;
      }
      const auto inv = invariant_report(loop.legendrian(), tol);
      if (inv.rot_winding != n || inv.rot_cusp != n) {
        diagnostic = "rot mismatch (" + std::to_string(inv.rot_winding) + ", " +
                     std::to_string(inv.rot_cusp) + ")";
        continue;
      }
      return loop;
    } catch (const Error& e) {
      diagnostic = e.what();
    }
  }
  throw Error(ErrorCode::SynthesisFailed,
              "rot " + std::to_string(n) + " after " + std::to_string(kModelRetryCap) +
                  " attempts: " + diagnostic);
}

HorizontalLoop orientation_reverse(const HorizontalLoop& loop) {
  return lift_unchecked(reversed(loop.generator()), loop.legendrian().z0(), loop.w0());
}

HorizontalLoop figure1(std::size_t samples) { return model_front(3, kFigureSeed, samples); }

HorizontalLoop figure2(std::size_t samples) { return model_front(0, kFigureSeed, samples); }

}  // namespace engel
