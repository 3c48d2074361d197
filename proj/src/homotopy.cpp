#include "engel/homotopy.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "engel/error.hpp"
#include "engel/format.hpp"
#include "engel/invariants.hpp"

namespace engel {
namespace {

double wrap(double s) { return s - std::floor(s); }

double circular_distance(double a, double b) {
  const double d = std::abs(wrap(a) - wrap(b));
  return std::min(d, 1.0 - d);
}

// Signed offset of s from c in (-½, ½].
double offset(double s, double c) { return wrap(s - c + 0.5) - 0.5; }

class Params {
 public:
  Params(const Move& move, std::initializer_list<const char*> allowed) : move_(move) {
    for (const auto& [name, value] : move.params) {
      if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return name == a; }) ==
          allowed.end()) {
        throw Error(ErrorCode::BadMove,
                    "unknown parameter '" + name + "' for " + to_string(move.kind));
      }
      if (!std::isfinite(value)) throw Error(ErrorCode::BadMove, "non-finite parameter " + name);
    }
  }

  std::optional<double> find(const std::string& name) const {
    for (const auto& [n, v] : move_.params) {
      if (n == name) return v;
    }
    return std::nullopt;
  }

  double get(const std::string& name, double fallback) const { return find(name).value_or(fallback); }

  double require(const std::string& name) const {
    if (auto v = find(name)) return *v;
    throw Error(ErrorCode::BadMove, to_string(move_.kind) + " needs " + name + "=");
  }

  double width(double fallback) const {
    const double w = get("width", fallback);
    if (!(w > 0.0 && w <= 0.5)) throw Error(ErrorCode::BadMove, "width must lie in (0, 0.5]");
    return w;
  }

  int frames(int fallback, int minimum) const {
    const double f = get("frames", fallback);
    if (f != std::floor(f) || f < minimum || f > 100000) {
      throw Error(ErrorCode::BadMove, "frames must be an integer in [" + std::to_string(minimum) +
                                          ", 100000]");
    }
    return static_cast<int>(f);
  }

 private:
  const Move& move_;
};

LegendrianGenerator make_frame(std::vector<double> x, std::vector<double> y, std::size_t j) {
  try {
    return LegendrianGenerator(std::move(x), std::move(y));
  } catch (const Error& e) {
    throw Error(ErrorCode::ImmersionLost, "frame " + std::to_string(j) + ": " + e.what());
  }
}

std::size_t event_index(int frames) { return static_cast<std::size_t>((frames + 1) / 2 - 1); }

std::vector<double> product(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] * b[k];
  return out;
}

bool inside(double s, double center, double half) { return std::abs(offset(s, center)) < half; }

// Golden-section minimisation of f on [a, b].
template <class F>
double golden_min(F&& f, double a, double b) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 80 && b - a > 1e-14; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Extreme of ratio(s) over grid points of the support where `use(s)` holds,
// refined between neighbours.  sign = +1 for the minimum, -1 for the maximum.
template <class Ratio, class Use>
std::optional<double> extreme_ratio(const LegendrianGenerator& g, const BumpSupport& support,
                                    Ratio&& ratio, Use&& use, double sign) {
  const double h = 1.0 / static_cast<double>(g.size());
  std::optional<double> best_s;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double s = g.parameter(k);
    if (!inside(s, support.center, 0.5 * support.width) || !use(s)) continue;
    const double v = sign * ratio(s);
    if (v < best) {
      best = v;
      best_s = s;
    }
  }
  if (!best_s) return std::nullopt;
  const double s = golden_min(
      [&](double t) {
        if (!inside(t, support.center, 0.5 * support.width) || !use(t)) {
          return std::numeric_limits<double>::infinity();
        }
        return sign * ratio(t);
      },
      *best_s - h, *best_s + h);
  const double refined = sign * ratio(s);
  return std::isfinite(refined) && refined < best ? refined : best;
}

std::size_t root_count(const LegendrianGenerator& g, const Tolerances& tol) {
  return x_prime_roots(g, tol.root).size();
}

MoveFrames deform(const LegendrianGenerator& g, const Move& move, const HomotopyOptions& options) {
  const Params p(move, {"at", "width", "dx", "dy", "frames"});
  const BumpSupport support{wrap(p.require("at")), p.width(0.08)};
  const double dx = p.get("dx", 0.0);
  const double dy = p.get("dy", 0.0);
  const int k = p.frames(options.frames, 1);
  const auto phi = bump_samples(g.size(), support);
  MoveFrames out;
  for (int j = 0; j < k; ++j) {
    const double lambda = static_cast<double>(j + 1) / k;
    std::vector<double> x(g.x().begin(), g.x().end()), y(g.y().begin(), g.y().end());
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] += lambda * dx * phi[i];
      y[i] += lambda * dy * phi[i];
    }
    out.frames.push_back(make_frame(std::move(x), std::move(y), static_cast<std::size_t>(j)));
  }
  return out;
}

// Velocity profile p = b_narrow - κ b_wide centred at `center`, with κ
// chosen so that the grid sum of p vanishes; its antiderivative is then a
// periodic, compactly supported change of x.
struct Profile {
  BumpSupport narrow;
  BumpSupport wide;
  double kappa = 0.0;

  Profile(double center, double narrow_width, double wide_width, std::size_t n)
      : narrow{center, narrow_width}, wide{center, wide_width} {
    const auto bn = bump_samples(n, narrow);
    const auto bw = bump_samples(n, wide);
    double sn = 0.0, sw = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      sn += bn[k];
      sw += bw[k];
    }
    if (sn == 0.0) throw Error(ErrorCode::BadMove, "swallowtail support is not resolved by the grid");
    kappa = sn / sw;
  }

  double operator()(double s) const { return bump(s, narrow) - kappa * bump(s, wide); }

  std::vector<double> displacement(std::size_t n) const {
    std::vector<double> p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = (*this)(static_cast<double>(k) / static_cast<double>(n));
    return spectral::cumulative_integral(p);
  }
};

// x + λ_j δ with λ_j = λ* (j + 1)/e up to the event frame e - 1, then on to
// 1.3 λ* at the last frame.
MoveFrames ramp_x(const LegendrianGenerator& g, const Profile& profile, double lambda_star, int k) {
  const auto delta = profile.displacement(g.size());
  const std::size_t e = event_index(k) + 1;
  MoveFrames out;
  for (int j = 0; j < k; ++j) {
    const double step = static_cast<double>(j + 1);
    const double lambda =
        step <= static_cast<double>(e)
            ? lambda_star * step / static_cast<double>(e)
            : lambda_star * (1.0 + 0.3 * (step - e) / static_cast<double>(k - static_cast<int>(e)));
    std::vector<double> x(g.x().begin(), g.x().end());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += lambda * delta[i];
    out.frames.push_back(make_frame(std::move(x), {g.y().begin(), g.y().end()},
                                    static_cast<std::size_t>(j)));
  }
  out.event = event_index(k);
  return out;
}

void require_transverse_y(const LegendrianGenerator& g, const BumpSupport& support,
                          const Tolerances& tol) {
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double s = g.parameter(k);
    if (inside(s, support.center, 0.5 * support.width) &&
        std::abs(g.y_prime()[k]) < 1e3 * tol.y_prime_floor) {
      throw Error(ErrorCode::BadMove, "y' nearly vanishes at s = " + format_double(s) +
                                          " inside the swallowtail support");
    }
  }
}

void reject_roots_inside(const std::vector<double>& roots, const BumpSupport& support,
                         const char* what, double skip0 = -1.0, double skip1 = -1.0) {
  for (double r : roots) {
    if (r == skip0 || r == skip1) continue;
    if (inside(r, support.center, 0.5 * support.width)) {
      throw Error(ErrorCode::UnsupportedOverlap,
                  "cusp at s = " + format_double(r) + " inside the " + what + " support");
    }
  }
}

MoveFrames swallowtail_birth(const LegendrianGenerator& g, const Move& move,
                             const HomotopyOptions& options) {
  const Params p(move, {"at", "width", "frames"});
  const double at = wrap(p.require("at"));
  const double width = p.width(0.08);
  const int k = p.frames(options.frames, 2);
  const auto& tol = options.tol;
  const auto roots = x_prime_roots(g, tol.root);
  const Profile profile(at, width / 3.0, width, g.size());
  reject_roots_inside(roots, profile.wide, "birth");
  require_transverse_y(g, profile.wide, tol);
  // x' keeps the sign σ on the support; subtracting σλp digs a dip that
  // first touches zero at λ* = min |x'| / p over {p > 0}.
  const double sigma = g.x_prime_at(at) > 0.0 ? 1.0 : -1.0;
  const auto lambda_star = extreme_ratio(
      g, profile.narrow, [&](double s) { return std::abs(g.x_prime_at(s)) / profile(s); },
      [&](double s) { return profile(s) > 0.0; }, 1.0);
  if (!lambda_star) throw Error(ErrorCode::BadMove, "birth support is not resolved by the grid");
  auto out = ramp_x(g, profile, -sigma * *lambda_star, k);
  const std::size_t after = root_count(out.frames.back(), tol);
  if (after != roots.size() + 2) {
    throw Error(ErrorCode::BadMove, "swallowtail birth produced " + std::to_string(after) +
                                        " cusps from " + std::to_string(roots.size()));
  }
  return out;
}

MoveFrames swallowtail_death(const LegendrianGenerator& g, const Move& move,
                             const HomotopyOptions& options) {
  const Params p(move, {"at", "width", "frames"});
  const double at = wrap(p.require("at"));
  const double width = p.width(0.08);
  const int k = p.frames(options.frames, 2);
  const auto& tol = options.tol;
  const auto roots = x_prime_roots(g, tol.root);
  if (roots.size() < 2) throw Error(ErrorCode::BadMove, "no cusp pair to remove");

  // Adjacent roots whose midpoint is closest to `at`.
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double r1 = roots[i];
    const double r2 = i + 1 < roots.size() ? roots[i + 1] : roots[0] + 1.0;
    const double d = circular_distance(0.5 * (r1 + r2), at);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  const double r1 = roots[best];
  const double r2 = best + 1 < roots.size() ? roots[best + 1] : roots[0] + 1.0;
  const double gap = r2 - r1;
  if (2.0 * gap > 0.5 * width) {
    throw Error(ErrorCode::BadMove, "cusp pair at (" + format_double(r1) + ", " +
                                        format_double(wrap(r2)) + ") is too wide for width " +
                                        format_double(width));
  }
  const double mid = wrap(0.5 * (r1 + r2));
  const Profile profile(mid, 2.0 * gap, width, g.size());
  reject_roots_inside(roots, profile.wide, "death", roots[best], wrap(r2));
  require_transverse_y(g, profile.wide, tol);
  // Inside the dip x' has sign -σ; adding σλp lifts it out at
  // λ* = max |x'| / p over the dip.
  const double sigma = g.x_prime_at(mid) > 0.0 ? -1.0 : 1.0;
  const auto in_dip = [&](double s) { return std::abs(offset(s, mid)) < 0.5 * gap; };
  const auto lambda_star = extreme_ratio(
      g, profile.narrow, [&](double s) { return std::abs(g.x_prime_at(s)) / profile(s); }, in_dip,
      -1.0);  // returns minus the maximum
  if (!lambda_star) throw Error(ErrorCode::BadMove, "cusp pair is not resolved by the grid");
  auto out = ramp_x(g, profile, -sigma * *lambda_star, k);
  const std::size_t after = root_count(out.frames.back(), tol);
  if (after + 2 != roots.size()) {
    throw Error(ErrorCode::BadMove, "swallowtail death left " + std::to_string(after) +
                                        " cusps from " + std::to_string(roots.size()));
  }
  return out;
}

struct Columns {
  double arc;      // ∫_{s0}^{s1} b x'
  double closure;  // ∮ b x'
  double area;     // ∮ (∫ b x') x'
};

Columns columns(const LegendrianGenerator& g, const ParameterPair& crossing,
                const BumpSupport& support) {
  const auto b = bump_samples(g.size(), support);
  const auto d = closure_defects(g.x_prime(), b);
  return {interval_integral(product(b, g.x_prime()), crossing.s0, crossing.s1), d[0], d[1]};
}

Eigen::Matrix3d system_matrix(const Columns& a, const Columns& b, const Columns& c) {
  Eigen::Matrix3d m;
  m << a.arc, b.arc, c.arc, a.closure, b.closure, c.closure, a.area, b.area, c.area;
  return m;
}

double condition(const Eigen::Matrix3d& m) {
  const Eigen::Vector3d sv = Eigen::JacobiSVD<Eigen::Matrix3d>(m).singularValues();
  return sv(2) > 0.0 ? sv(0) / sv(2) : std::numeric_limits<double>::infinity();
}

MoveFrames tangency_pass(const LegendrianGenerator& g, const Move& move,
                         const HomotopyOptions& options) {
  const Params p(move, {"s0", "s1", "width", "frames"});
  const double s0 = wrap(p.require("s0"));
  const double s1 = wrap(p.require("s1"));
  const double width = p.width(0.08);
  const int k = p.frames(options.frames, 2);
  const auto& tol = options.tol;

  const LegendrianLoop loop(g, 0.0);
  std::optional<ParameterPair> crossing;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : lagrangian_crossings(g)) {
    const double dz = interval_integral(product(g.y(), g.x_prime()), c.s0, c.s1);
    if (std::abs(dz) <= tol.tangency) continue;
    const double d = std::min(circular_distance(c.s0, s0) + circular_distance(c.s1, s1),
                              circular_distance(c.s0, s1) + circular_distance(c.s1, s0));
    if (d < best) {
      best = d;
      crossing = c;
    }
  }
  if (!crossing) throw Error(ErrorCode::BadMove, "no (x, y) crossing with Δz != 0 to pass");

  const auto supports = tangency_supports(g, *crossing, width);
  const auto yx = product(g.y(), g.x_prime());
  const double dz0 = interval_integral(yx, crossing->s0, crossing->s1);
  const auto d0 = closure_defects(g.x_prime(), g.y());
  const auto m = system_matrix(columns(g, *crossing, supports.inner),
                               columns(g, *crossing, supports.balance[0]),
                               columns(g, *crossing, supports.balance[1]));
  if (!(condition(m) <= 1e8)) {
    throw Error(ErrorCode::SingularSystem, "tangency system condition number " +
                                               format_double(condition(m)));
  }
  const auto lu = m.fullPivLu();
  const std::array<std::vector<double>, 3> bumps{bump_samples(g.size(), supports.inner),
                                                 bump_samples(g.size(), supports.balance[0]),
                                                 bump_samples(g.size(), supports.balance[1])};
  const std::size_t e = event_index(k) + 1;
  MoveFrames out;
  for (int j = 0; j < k; ++j) {
    const double target = dz0 * (1.0 - static_cast<double>(j + 1) / static_cast<double>(e));
    const Eigen::Vector3d coeff = lu.solve(Eigen::Vector3d(target - dz0, -d0[0], -d0[1]));
    std::vector<double> y(g.y().begin(), g.y().end());
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] += coeff(0) * bumps[0][i] + coeff(1) * bumps[1][i] + coeff(2) * bumps[2][i];
    }
    out.frames.push_back(make_frame({g.x().begin(), g.x().end()}, std::move(y),
                                    static_cast<std::size_t>(j)));
  }
  out.event = event_index(k);
  out.balance = supports.balance;
  return out;
}

}  // namespace

std::string to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::Deform: return "deform";
    case MoveKind::SwallowtailBirth: return "swallowtail_birth";
    case MoveKind::SwallowtailDeath: return "swallowtail_death";
    case MoveKind::TangencyPass: return "tangency_pass";
    case MoveKind::Balance: return "balance";
  }
  return "?";
}

MoveKind move_kind_from_string(const std::string& name) {
  for (auto kind : {MoveKind::Deform, MoveKind::SwallowtailBirth, MoveKind::SwallowtailDeath,
                    MoveKind::TangencyPass, MoveKind::Balance}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorCode::UnknownMoveKind, "unknown move kind '" + name + "'");
}

std::string to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::NotClosed: return "NOT_CLOSED";
    case FailureKind::NotEmbedded: return "NOT_EMBEDDED";
    case FailureKind::RotChanged: return "ROT_CHANGED";
  }
  return "?";
}

TangencySupports tangency_supports(const LegendrianGenerator& g, const ParameterPair& crossing,
                                   double width) {
  constexpr double kBalanceWidth = 0.08;
  constexpr std::size_t kGrid = 256;
  const double a = wrap(crossing.s0);
  const double b = wrap(crossing.s1);
  double vmax = 0.0;
  for (double v : g.x_prime()) vmax = std::max(vmax, std::abs(v));

  auto clear_of_crossing = [&](double c, double w) {
    const double need = 0.5 * w + 0.02;
    return circular_distance(c, a) >= need && circular_distance(c, b) >= need;
  };
  auto on_arc = [&](double c) { return a < c && c < b; };

  // Inner bump: strongest |x'| on the arc (s0, s1) away from the crossing.
  std::optional<double> inner;
  double strongest = 0.0;
  for (std::size_t i = 0; i < kGrid; ++i) {
    const double c = static_cast<double>(i) / kGrid;
    if (!on_arc(c) || !clear_of_crossing(c, width)) continue;
    const double v = std::abs(g.x_prime_at(c));
    if (v > strongest) {
      strongest = v;
      inner = c;
    }
  }
  if (!inner) throw Error(ErrorCode::BadMove, "no room for a bump between the crossing parameters");
  const BumpSupport inner_support{*inner, width};
  const auto inner_cols = columns(g, crossing, inner_support);

  std::vector<double> centres;
  for (std::size_t i = 0; i < kGrid; ++i) {
    const double c = static_cast<double>(i) / kGrid;
    if (!clear_of_crossing(c, kBalanceWidth)) continue;
    if (circular_distance(c, *inner) < 0.5 * (width + kBalanceWidth)) continue;
    if (std::abs(g.x_prime_at(c)) < 0.3 * vmax) continue;
    centres.push_back(c);
  }
  // Thin the candidate list to keep the pair search small.
  while (centres.size() > 48) {
    std::vector<double> thinned;
    for (std::size_t i = 0; i < centres.size(); i += 2) thinned.push_back(centres[i]);
    centres = std::move(thinned);
  }
  std::vector<Columns> cols;
  for (double c : centres) cols.push_back(columns(g, crossing, {c, kBalanceWidth}));

  TangencySupports out{crossing, inner_support, {}};
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < centres.size(); ++i) {
    for (std::size_t j = i + 1; j < centres.size(); ++j) {
      if (circular_distance(centres[i], centres[j]) < kBalanceWidth) continue;
      const double cond = condition(system_matrix(inner_cols, cols[i], cols[j]));
      if (cond < best) {
        best = cond;
        out.balance = {BumpSupport{centres[i], kBalanceWidth}, BumpSupport{centres[j], kBalanceWidth}};
      }
    }
  }
  if (!std::isfinite(best)) throw Error(ErrorCode::SingularSystem, "no balancing bumps clear of the crossing");
  return out;
}

MoveFrames apply_move(const LegendrianGenerator& g, const Move& move,
                      const HomotopyOptions& options) {
  switch (move.kind) {
    case MoveKind::Deform: return deform(g, move, options);
    case MoveKind::SwallowtailBirth: return swallowtail_birth(g, move, options);
    case MoveKind::SwallowtailDeath: return swallowtail_death(g, move, options);
    case MoveKind::TangencyPass: return tangency_pass(g, move, options);
    case MoveKind::Balance: {
      const Params none(move, {});
      return {{balance_closure(g)}, std::nullopt, std::nullopt};
    }
  }
  throw Error(ErrorCode::BadMove, "unhandled move");
}

HomotopyTrace run_script(const LegendrianGenerator& g0, const MoveScript& script,
                         const HomotopyOptions& options) {
  HomotopyTrace trace;
  const auto start = closure_defects(g0.x_prime(), g0.y());
  LegendrianGenerator current =
      std::abs(start[0]) <= 1e-12 && std::abs(start[1]) <= 1e-12 ? g0 : balance_closure(g0);
  trace.frames.push_back(lift(current, 0.0, 0.0, options.tol));

  for (std::size_t index = 0; index < script.size(); ++index) {
    const Move& move = script[index];
    try {
      auto produced = apply_move(current, move, options);
      const auto supports = produced.balance.value_or(default_bump_supports(current));
      const std::size_t offset_index = trace.frames.size();
      for (auto& frame : produced.frames) {
        const auto d = closure_defects(frame.x_prime(), frame.y());
        LegendrianGenerator balanced =
            std::abs(d[0]) <= 1e-12 && std::abs(d[1]) <= 1e-12 ? frame : balance_closure(frame, supports);
        const auto& previous = trace.frames.back();
        trace.frames.push_back(
            lift(balanced, previous.legendrian().z0(), previous.w0(), options.tol));
        current = std::move(balanced);
      }
      if (produced.event) {
        trace.events.push_back({0.0, offset_index + *produced.event, move.kind});
      }
    } catch (const Error& e) {
      throw Error(e.code(), "move " + std::to_string(index + 1) + " (" + to_string(move.kind) +
                                "): " + e.detail());
    }
  }
  const std::size_t f = trace.frames.size();
  for (std::size_t i = 0; i < f; ++i) {
    trace.times.push_back(f == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(f - 1));
  }
  for (auto& event : trace.events) event.t = trace.times[event.frame];
  return trace;
}

VerificationReport verify_isotopy(const HomotopyTrace& trace, const Tolerances& tol) {
  VerificationReport report;
  report.events = trace.events;
  std::optional<int> rot0;
  double best_margin = std::numeric_limits<double>::infinity();
  bool have_embedding = false;
  bool all_embedded = true;

  auto fail = [&](FailureKind kind, std::size_t frame) {
    if (!report.failure) report.failure = {kind, frame};
  };

  for (std::size_t i = 0; i < trace.frames.size(); ++i) {
    const auto& loop = trace.frames[i];
    FrameCertificate cert;
    cert.dz = loop.legendrian().closure_defect_z();
    cert.dw = loop.closure_defect_w();
    cert.margin = std::numeric_limits<double>::quiet_NaN();
    if (!loop.closed(tol.closure)) {
      fail(FailureKind::NotClosed, i);
      all_embedded = false;
    } else {
      const auto embedding = embedding_check(loop, tol);
      cert.margin = embedding.margin;
      cert.double_points = embedding.double_points.size();
      if (!have_embedding || embedding.margin < best_margin) {
        report.embedding = embedding;
        best_margin = embedding.margin;
        have_embedding = true;
      }
      if (!embedding.embedded) {
        fail(FailureKind::NotEmbedded, i);
        all_embedded = false;
      }
    }
    try {
      cert.rot = rot_winding(loop.generator());
    } catch (const Error&) {
      cert.rot = std::nullopt;
    }
    if (i == 0) rot0 = cert.rot;
    if (!cert.rot || cert.rot != rot0) {
      report.rot_constant = false;
      fail(FailureKind::RotChanged, i);
    }
    report.per_frame.push_back(cert);
  }
  report.embedding.embedded = all_embedded;
  report.verified = !report.failure.has_value();
  return report;
}

nlohmann::json to_json(const std::vector<TraceEvent>& events) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : events) {
    out.push_back({{"t", e.t}, {"frame", e.frame}, {"kind", to_string(e.kind)}});
  }
  return out;
}

nlohmann::json to_json(const VerificationReport& report) {
  auto j = to_json(report.embedding);
  j["rot_constant"] = report.rot_constant;
  j["frames"] = report.per_frame.size();
  j["events"] = to_json(report.events);
  j["verified"] = report.verified;
  if (report.failure) {
    j["failure"] = {{"kind", to_string(report.failure->first)}, {"frame", report.failure->second}};
  } else {
    j["failure"] = nullptr;
  }
  nlohmann::json frames = nlohmann::json::array();
  for (const auto& c : report.per_frame) {
    nlohmann::json f{{"dz", c.dz}, {"dw", c.dw}, {"double_points", c.double_points}};
    f["margin"] = std::isfinite(c.margin) ? nlohmann::json(c.margin) : nlohmann::json(nullptr);
    f["rot"] = c.rot ? nlohmann::json(*c.rot) : nlohmann::json(nullptr);
    frames.push_back(f);
  }
  j["per_frame"] = frames;
  return j;
}

}  // namespace engel
