#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "engel/curves.hpp"
#include "engel/lifting.hpp"

namespace engel {

enum class MoveKind { Deform, SwallowtailBirth, SwallowtailDeath, TangencyPass, Balance };

/// DSL spelling: deform, swallowtail_birth, ...
std::string to_string(MoveKind kind);
/// Throws UnknownMoveKind.
MoveKind move_kind_from_string(const std::string& name);

/// A move with its parameters in source order.  Recognised parameters:
///   deform            at, width, dx, dy, frames
///   swallowtail_birth at, width, frames
///   swallowtail_death at, width, frames
///   tangency_pass     s0, s1, width, frames
///   balance           (none)
struct Move {
  MoveKind kind = MoveKind::Balance;
  std::vector<std::pair<std::string, double>> params;

  friend bool operator==(const Move&, const Move&) = default;
};

using MoveScript = std::vector<Move>;

struct HomotopyOptions {
  int frames = 64;  // per move, unless the move sets frames=
  Tolerances tol;
};

/// Frames produced by one move, t_j = (j + 1)/K for j = 0..K-1.  For
/// births, deaths and tangency passes the event sits at frame ceil(K/2) - 1.
struct MoveFrames {
  std::vector<LegendrianGenerator> frames;
  std::optional<std::size_t> event;
  /// Bumps the executor should rebalance with, when the move needs specific ones.
  std::optional<std::array<BumpSupport, 2>> balance;
};

/// Throws BadMove for unknown or out-of-range parameters, ImmersionLost for
/// a non-immersed frame and UnsupportedOverlap when a birth or death
/// support contains cusps it should not.
MoveFrames apply_move(const LegendrianGenerator& g, const Move& move,
                      const HomotopyOptions& options = {});

/// Bumps used by a tangency pass at `crossing`: `inner` sits on the arc
/// (s0, s1) and moves Δz; `balance` restores both closures.  All three avoid
/// the crossing parameters and depend only on x.
struct TangencySupports {
  ParameterPair crossing;
  BumpSupport inner;
  std::array<BumpSupport, 2> balance;
};

TangencySupports tangency_supports(const LegendrianGenerator& g, const ParameterPair& crossing,
                                   double width = 0.08);

struct TraceEvent {
  double t = 0.0;
  std::size_t frame = 0;
  MoveKind kind = MoveKind::Deform;
};

struct HomotopyTrace {
  std::vector<HorizontalLoop> frames;
  std::vector<double> times;
  std::vector<TraceEvent> events;
};

/// Frame 0 is the lift of g0 (balanced first if needed).  Every later
/// frame is balanced with supports fixed per move and lifted from the
/// previous frame's base values.
HomotopyTrace run_script(const LegendrianGenerator& g0, const MoveScript& script,
                         const HomotopyOptions& options = {});

enum class FailureKind { NotClosed, NotEmbedded, RotChanged };

std::string to_string(FailureKind kind);

struct FrameCertificate {
  double dz = 0.0;
  double dw = 0.0;
  double margin = 0.0;
  std::size_t double_points = 0;
  std::optional<int> rot;
};

struct VerificationReport {
  bool verified = true;
  bool rot_constant = true;
  std::optional<std::pair<FailureKind, std::size_t>> failure;
  EmbeddingReport embedding;  // frame with the smallest margin
  std::vector<FrameCertificate> per_frame;
  std::vector<TraceEvent> events;
};

VerificationReport verify_isotopy(const HomotopyTrace& trace, const Tolerances& tol = {});

nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const std::vector<TraceEvent>& events);

}  // namespace engel
