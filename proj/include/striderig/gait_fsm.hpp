// Gait-phase detection: a four-state machine per foot plus a two-foot
// coordinator that enforces alternating ownership of the swing and watches
// for the user coming to a stop.
#pragma once

#include <optional>
#include <string>

#include "striderig/config.hpp"
#include "striderig/frame.hpp"

namespace striderig {

enum class GaitPhase {
  InitialDoubleSupport,  // neutral stance before the first step / after a stop
  Ascending,             // foot rising
  Descending,            // foot falling
  DoubleSupport,         // foot planted between steps
};

inline bool is_double_support(GaitPhase p) {
  return p == GaitPhase::InitialDoubleSupport || p == GaitPhase::DoubleSupport;
}

const char* phase_name(GaitPhase p);

enum class GaitEventType { InitialSwing, MidSwing, TerminalSwing, StopDetected };

const char* event_name(GaitEventType e);

struct GaitEvent {
  double t = 0.0;
  Foot foot = Foot::Left;
  GaitEventType type = GaitEventType::InitialSwing;
};

struct FsmThresholds {
  double p1 = 0.1;   // height gate, meters
  double v1 = 0.2;   // lift/settle velocity threshold, m/s
  double v2 = 0.6;   // spike-rejection bound, m/s
  // How a |v| > v2 tick in double support with h < p1 is treated:
  //   corroborated: suppressed only when the previous tick was quiet
  //                 (|v| <= v1), so isolated spikes never lift but a
  //                 sustained fast rise lifts on its second tick;
  //   strict:       always suppressed until h clears p1;
  //   off:          no guard.
  enum class SpikeGuard { Corroborated, Strict, Off };
  SpikeGuard guard = SpikeGuard::Corroborated;

  static FsmThresholds from_config(const EngineConfig& cfg);
};

// Single-foot phase detector. step() applies at most one transition per tick.
class FootFsm {
 public:
  explicit FootFsm(FsmThresholds th = {}) : th_(th) {}

  // Feeds one conditioned sample; returns the event the transition emits, if
  // any. Ascending -> DoubleSupport (aborted lift) is silent by design:
  // noise blips must not wedge the machine or spam the event log.
  std::optional<GaitEventType> step(const FootSignal& sig);

  GaitPhase phase() const { return phase_; }
  // Used by the coordinator to veto a lift that lost arbitration.
  void force_phase(GaitPhase p) { phase_ = p; }
  void reset(GaitPhase p = GaitPhase::InitialDoubleSupport);

 private:
  FsmThresholds th_;
  GaitPhase phase_ = GaitPhase::InitialDoubleSupport;
  double prev_abs_v_ = 0.0;
};

enum class StepKind { Idle, FirstStep, Consecutive, Stopping };

const char* step_kind_name(StepKind k);

// Shared walk state the coordinator maintains across ticks.
struct WalkContext {
  StepKind step_kind = StepKind::Idle;
  std::optional<Foot> swing_foot;          // owner of the current swing
  std::optional<double> double_support_since;
  int steps_completed = 0;                 // since the last full stop
  std::optional<Foot> last_swing_foot;
  double last_terminal_left = -1e300;      // per-foot rest bookkeeping for
  double last_terminal_right = -1e300;     // the concurrent-lift tie-break
};

// Two-foot arbitration and stop detection. Owns both FootFsm instances'
// coordination but not the machines themselves: the engine steps each foot,
// then hands the resulting events here.
class WalkCoordinator {
 public:
  explicit WalkCoordinator(double t_stop = 1.5) : t_stop_(t_stop) {}

  struct TickEvents {
    std::optional<GaitEventType> left;
    std::optional<GaitEventType> right;
  };

  // Applies ownership rules to this tick's per-foot events. Vetoed lifts are
  // erased from the result and the losing foot is pushed back to
  // DoubleSupport via force_phase. Counts each discarded lift.
  TickEvents update(double t, FootFsm& left, FootFsm& right, TickEvents ev);

  // Emits StopDetected once both feet have been in double support for more
  // than t_stop while a walk is in progress. Moves the context to Stopping.
  std::optional<GaitEvent> stop_timer_update(double t);

  // Called by the engine when the stop retraction has converged.
  void finish_stop();

  const WalkContext& context() const { return ctx_; }
  int concurrent_lifts_discarded() const { return discarded_; }

 private:
  double t_stop_;
  WalkContext ctx_;
  int discarded_ = 0;
};

}  // namespace striderig
