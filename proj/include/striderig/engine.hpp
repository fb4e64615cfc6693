// The engine wires the stages together: condition the frame, step both foot
// machines, arbitrate, run the stop timer, map animation targets, smooth,
// update speed and distance — one record out per frame once calibrated.
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "striderig/config.hpp"
#include "striderig/engine_types.hpp"
#include "striderig/frame.hpp"
#include "striderig/gait_fsm.hpp"
#include "striderig/ik_mapper.hpp"
#include "striderig/metrics.hpp"
#include "striderig/signal_pipeline.hpp"
#include "striderig/speed_estimator.hpp"

namespace striderig {

class Engine {
 public:
  // Without a calibration the engine buffers the first ceil(calib_min_s *
  // sample_hz) frames as a standing window, calibrates from them, and starts
  // producing records on the next frame.
  explicit Engine(const EngineConfig& cfg,
                  std::optional<FloorCalibration> calibration = std::nullopt);

  // Feeds one frame; returns a record once past calibration, nullopt while
  // the calibration window is still filling.
  std::optional<TickRecord> feed(const TrackingFrame& frame);

  const std::vector<GaitEvent>& events() const { return events_; }
  const WalkContext& context() const { return coordinator_.context(); }
  bool calibrated() const { return pipeline_.calibrated(); }
  const FloorCalibration& calibration() const { return pipeline_.calibration(); }
  int irregular_frames() const { return pipeline_.irregular_frames(); }
  const EngineConfig& config() const { return cfg_; }

 private:
  TickRecord process(const TrackingFrame& frame);
  TargetChannels::Values desired_targets(const PipelineTick& tick);
  void finish_calibration();

  EngineConfig cfg_;
  SignalPipeline pipeline_;
  FootFsm fsm_left_, fsm_right_;
  WalkCoordinator coordinator_;
  TargetChannels channels_;
  TargetChannels::Values held_desired_;  // frozen targets during double support
  SpeedEstimator speed_;
  std::vector<GaitEvent> events_;
  std::vector<TrackingFrame> calib_window_;
  std::size_t calib_needed_ = 0;  // 0 once calibrated
  bool retracting_ = false;
};

struct SessionResult {
  EngineConfig config;
  FloorCalibration calibration;
  std::vector<TickRecord> records;
  std::vector<GaitEvent> events;
  SessionMetrics metrics;
  int irregular_frames = 0;
};

// Batch wrapper: calibrate (unless given), process every frame, compute
// metrics. Throws on calibration or data errors.
SessionResult run_session(const EngineConfig& cfg,
                          std::span<const TrackingFrame> frames,
                          std::optional<FloorCalibration> calibration = std::nullopt);

}  // namespace striderig
