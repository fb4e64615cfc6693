#include "striderig/speed_estimator.hpp"

#include <algorithm>
#include <numeric>

namespace striderig {

double MeanFootSpeedModel::map(const std::vector<double>& window) const {
  if (window.empty()) return 0.0;
  const double mean =
      std::accumulate(window.begin(), window.end(), 0.0) / window.size();
  return std::min(gain_ * mean, cap_);
}

SpeedEstimator::SpeedEstimator(const EngineConfig& cfg,
                               std::shared_ptr<const SpeedModel> model)
    : cfg_(cfg),
      model_(model ? std::move(model)
                   : std::make_shared<MeanFootSpeedModel>(cfg.gain_k, cfg.speed_cap)) {}

void SpeedEstimator::accumulate(double s) { window_.push_back(s); }

void SpeedEstimator::adapt_on_event(const GaitEvent& ev) {
  switch (ev.type) {
    case GaitEventType::MidSwing:
    case GaitEventType::TerminalSwing:
      current_ = model_->map(window_);
      window_.clear();
      last_event_t_ = ev.t;
      if (ev.type == GaitEventType::TerminalSwing) {
        if (last_terminal_t_) last_step_period_ = ev.t - *last_terminal_t_;
        last_terminal_t_ = ev.t;
      }
      break;
    case GaitEventType::InitialSwing:
      // The walk just (re)started; keep coasting at the previous speed until
      // the first real adaptation point.
      break;
    case GaitEventType::StopDetected:
      hard_stop();
      break;
  }
}

void SpeedEstimator::decay_check(double t) {
  if (!last_event_t_ || current_ == 0.0) return;
  const double timeout =
      std::max(cfg_.decay_period_factor * last_step_period_, cfg_.decay_min_s);
  if (t - *last_event_t_ > timeout)
    current_ = current_ + cfg_.speed_decay_alpha * (0.0 - current_);
}

void SpeedEstimator::hard_stop() {
  current_ = 0.0;
  window_.clear();
  last_event_t_.reset();
  last_terminal_t_.reset();
  last_step_period_ = 0.0;
}

void SpeedEstimator::integrate(double dt) { distance_ += current_ * dt; }

}  // namespace striderig
