#include "striderig/gait_fsm.hpp"

#include <cmath>

#include "striderig/errors.hpp"

namespace striderig {

const char* phase_name(GaitPhase p) {
  switch (p) {
    case GaitPhase::InitialDoubleSupport: return "initial_double_support";
    case GaitPhase::Ascending: return "ascending";
    case GaitPhase::Descending: return "descending";
    case GaitPhase::DoubleSupport: return "double_support";
  }
  return "?";
}

const char* event_name(GaitEventType e) {
  switch (e) {
    case GaitEventType::InitialSwing: return "initial_swing";
    case GaitEventType::MidSwing: return "mid_swing";
    case GaitEventType::TerminalSwing: return "terminal_swing";
    case GaitEventType::StopDetected: return "stop";
  }
  return "?";
}

const char* step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::Idle: return "idle";
    case StepKind::FirstStep: return "first";
    case StepKind::Consecutive: return "consecutive";
    case StepKind::Stopping: return "stopping";
  }
  return "?";
}

FsmThresholds FsmThresholds::from_config(const EngineConfig& cfg) {
  FsmThresholds th;
  th.p1 = cfg.p1;
  th.v1 = cfg.v1;
  th.v2 = cfg.v2;
  if (cfg.spike_guard == "strict") th.guard = SpikeGuard::Strict;
  else if (cfg.spike_guard == "off") th.guard = SpikeGuard::Off;
  else th.guard = SpikeGuard::Corroborated;
  return th;
}

void FootFsm::reset(GaitPhase p) {
  phase_ = p;
  prev_abs_v_ = 0.0;
}

std::optional<GaitEventType> FootFsm::step(const FootSignal& sig) {
  std::optional<GaitEventType> ev;
  const double abs_v = std::abs(sig.v);

  switch (phase_) {
    case GaitPhase::InitialDoubleSupport:
    case GaitPhase::DoubleSupport: {
      // A fast vertical excursion while the foot is still low is tracker
      // noise unless the previous tick already showed motion.
      bool suppressed = false;
      if (abs_v > th_.v2 && sig.h < th_.p1) {
        if (th_.guard == FsmThresholds::SpikeGuard::Strict) suppressed = true;
        else if (th_.guard == FsmThresholds::SpikeGuard::Corroborated)
          suppressed = prev_abs_v_ <= th_.v1;
      }
      if (sig.v > th_.v1 && !suppressed) {
        phase_ = GaitPhase::Ascending;
        ev = GaitEventType::InitialSwing;
      }
      break;
    }
    case GaitPhase::Ascending:
      if (sig.v < -th_.v1 && sig.h > th_.p1) {
        phase_ = GaitPhase::Descending;
        ev = GaitEventType::MidSwing;
      } else if (sig.h < th_.p1 && abs_v < th_.v1) {
        // Aborted lift: the foot settled without ever clearing the height
        // gate. Silent on purpose: noise blips must not spam the log.
        phase_ = GaitPhase::DoubleSupport;
      }
      break;
    case GaitPhase::Descending:
      if (sig.h < th_.p1 && abs_v < th_.v1) {
        phase_ = GaitPhase::DoubleSupport;
        ev = GaitEventType::TerminalSwing;
      }
      break;
  }

  prev_abs_v_ = abs_v;
  return ev;
}

WalkCoordinator::TickEvents WalkCoordinator::update(double t, FootFsm& left,
                                                    FootFsm& right,
                                                    TickEvents ev) {
  // Completed swings first: a terminal swing this tick both counts the step
  // and frees the swing for a same-tick handover to the other foot.
  if (ev.left == GaitEventType::TerminalSwing) {
    ++ctx_.steps_completed;
    ctx_.step_kind = StepKind::Consecutive;
    ctx_.last_terminal_left = t;
  }
  if (ev.right == GaitEventType::TerminalSwing) {
    ++ctx_.steps_completed;
    ctx_.step_kind = StepKind::Consecutive;
    ctx_.last_terminal_right = t;
  }

  // Ownership follows the machines: once the owner is back in double support
  // (terminal swing or aborted lift) the swing is over.
  if (ctx_.swing_foot) {
    const GaitPhase owner_phase =
        *ctx_.swing_foot == Foot::Left ? left.phase() : right.phase();
    if (is_double_support(owner_phase)) {
      ctx_.swing_foot.reset();
      // A first step that never completed leaves the walk un-started.
      if (ctx_.step_kind == StepKind::FirstStep && ctx_.steps_completed == 0)
        ctx_.step_kind = StepKind::Idle;
    }
  }

  // Lift arbitration: a live owner keeps the swing; with two same-tick
  // claims the longer-rested foot is the plausible stepper (alternating
  // gait), exact ties going left. Losers are pushed back down silently.
  const bool left_lift = ev.left == GaitEventType::InitialSwing;
  const bool right_lift = ev.right == GaitEventType::InitialSwing;
  auto veto = [&](Foot foot) {
    ++discarded_;
    if (foot == Foot::Left) {
      left.force_phase(GaitPhase::DoubleSupport);
      ev.left.reset();
    } else {
      right.force_phase(GaitPhase::DoubleSupport);
      ev.right.reset();
    }
  };
  if (ctx_.swing_foot) {
    if (left_lift && *ctx_.swing_foot != Foot::Left) veto(Foot::Left);
    if (right_lift && *ctx_.swing_foot != Foot::Right) veto(Foot::Right);
  } else if (left_lift && right_lift) {
    if (ctx_.last_terminal_left <= ctx_.last_terminal_right) veto(Foot::Right);
    else veto(Foot::Left);
  }

  auto apply_lift = [&](Foot foot, const std::optional<GaitEventType>& e) {
    if (e != GaitEventType::InitialSwing) return;
    ctx_.swing_foot = foot;
    ctx_.last_swing_foot = foot;
    if (ctx_.step_kind == StepKind::Idle || ctx_.step_kind == StepKind::Stopping)
      ctx_.step_kind = StepKind::FirstStep;
  };
  apply_lift(Foot::Left, ev.left);
  apply_lift(Foot::Right, ev.right);

  // Track continuous both-feet-down time, but only while a walk is live:
  // standing around before the first step is not a stop in the making.
  const bool both_down =
      is_double_support(left.phase()) && is_double_support(right.phase());
  const bool walking = ctx_.step_kind == StepKind::FirstStep ||
                       ctx_.step_kind == StepKind::Consecutive;
  if (both_down && walking) {
    if (!ctx_.double_support_since) ctx_.double_support_since = t;
  } else {
    ctx_.double_support_since.reset();
  }

  return ev;
}

std::optional<GaitEvent> WalkCoordinator::stop_timer_update(double t) {
  if (!ctx_.double_support_since) return std::nullopt;
  if (t - *ctx_.double_support_since <= t_stop_) return std::nullopt;

  GaitEvent ev;
  ev.t = t;
  ev.foot = ctx_.last_swing_foot.value_or(Foot::Left);
  ev.type = GaitEventType::StopDetected;

  ctx_.step_kind = StepKind::Stopping;
  ctx_.steps_completed = 0;
  ctx_.swing_foot.reset();
  ctx_.double_support_since.reset();
  return ev;
}

void WalkCoordinator::finish_stop() {
  if (ctx_.step_kind == StepKind::Stopping) ctx_.step_kind = StepKind::Idle;
}

}  // namespace striderig
