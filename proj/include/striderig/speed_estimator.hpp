// Forward walking speed from vertical foot motion. The mapping itself is a
// stand-in (gain times the mean vertical speed of the swing foot between
// phase events) kept behind a small strategy seam so a different model can be
// swapped in without touching the engine.
#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "striderig/config.hpp"
#include "striderig/gait_fsm.hpp"

namespace striderig {

// Strategy: turn a window of per-tick vertical speeds into a forward speed.
class SpeedModel {
 public:
  virtual ~SpeedModel() = default;
  virtual double map(const std::vector<double>& window) const = 0;
};

// Default model: gain * mean(window), capped. Empty window maps to 0.
class MeanFootSpeedModel : public SpeedModel {
 public:
  MeanFootSpeedModel(double gain, double cap) : gain_(gain), cap_(cap) {}
  double map(const std::vector<double>& window) const override;

 private:
  double gain_, cap_;
};

class SpeedEstimator {
 public:
  explicit SpeedEstimator(const EngineConfig& cfg,
                          std::shared_ptr<const SpeedModel> model = nullptr);

  // Per tick while a swing is active: record the swing foot's vertical speed.
  void accumulate(double s);

  // Mid-swing and terminal-swing events re-fit the forward speed from the
  // window and clear it. Initial swings deliberately change nothing.
  void adapt_on_event(const GaitEvent& ev);

  // Called every tick after event handling. Without an adaptation event for
  // longer than max(decay_period_factor * last step period, decay_min_s), the
  // speed lerps toward zero.
  void decay_check(double t);

  // Stop: speed drops to exactly zero immediately.
  void hard_stop();

  // Advances the odometer by one tick at the current speed.
  void integrate(double dt);

  double current_speed() const { return current_; }
  double distance() const { return distance_; }
  const std::vector<double>& window() const { return window_; }

 private:
  EngineConfig cfg_;
  std::shared_ptr<const SpeedModel> model_;
  std::vector<double> window_;
  double current_ = 0.0;
  double distance_ = 0.0;
  std::optional<double> last_event_t_;
  std::optional<double> last_terminal_t_;
  double last_step_period_ = 0.0;
};

}  // namespace striderig
