// Session summary metrics computed from the per-tick records and event log.
#pragma once

#include <optional>
#include <span>

#include "striderig/engine_types.hpp"
#include "striderig/gait_fsm.hpp"

namespace striderig {

struct SessionMetrics {
  // Seconds from the first lift to the tick the distance goal was reached;
  // absent when the session never covered the goal.
  std::optional<double> t_c;
  double avg_foot_speed = 0.0;   // mean swing-foot vertical speed, walking ticks
  double avg_walk_speed = 0.0;   // mean forward speed, walking ticks
  double avg_step_height = 0.0;  // mean filtered height at mid-swing events
  int n_steps = 0;               // terminal-swing count
};

// Walking ticks run from the first InitialSwing to the goal tick (or the end
// of the session when the goal is never reached). Empty spans yield zeros.
SessionMetrics compute_metrics(std::span<const TickRecord> records,
                               std::span<const GaitEvent> events,
                               double goal_m);

}  // namespace striderig
