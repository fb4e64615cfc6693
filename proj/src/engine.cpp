#include "striderig/engine.hpp"

#include <cmath>

#include "striderig/errors.hpp"

namespace striderig {
namespace {

EngineConfig validated(EngineConfig cfg) {
  cfg.validate();
  return cfg;
}

}  // namespace

Engine::Engine(const EngineConfig& cfg, std::optional<FloorCalibration> calibration)
    : cfg_(validated(cfg)),
      pipeline_(cfg_),
      fsm_left_(FsmThresholds::from_config(cfg_)),
      fsm_right_(FsmThresholds::from_config(cfg_)),
      coordinator_(cfg_.t_stop),
      speed_(cfg_) {
  if (calibration) {
    pipeline_.set_calibration(*calibration);
  } else {
    calib_needed_ =
        static_cast<std::size_t>(std::ceil(cfg_.calib_min_s * cfg_.sample_hz));
    calib_window_.reserve(calib_needed_);
  }
}

std::optional<TickRecord> Engine::feed(const TrackingFrame& frame) {
  if (calib_needed_ > 0) {
    if (!calib_window_.empty() && !(frame.t > calib_window_.back().t))
      throw NonMonotonicTime("frame timestamps must strictly increase (" +
                             std::to_string(frame.t) + " after " +
                             std::to_string(calib_window_.back().t) + ")");
    calib_window_.push_back(frame);
    if (calib_window_.size() >= calib_needed_) finish_calibration();
    return std::nullopt;
  }
  return process(frame);
}

void Engine::finish_calibration() {
  const auto cal = calibrate_floor(calib_window_, cfg_.sample_hz,
                                   cfg_.calib_min_s, cfg_.calib_max_std);
  double ml = 0.0, mr = 0.0;
  for (const auto& f : calib_window_) {
    ml += f.ly;
    mr += f.ry;
  }
  ml /= static_cast<double>(calib_window_.size());
  mr /= static_cast<double>(calib_window_.size());
  pipeline_.set_calibration(cal, ml, mr);
  calib_needed_ = 0;
  calib_window_.clear();
  calib_window_.shrink_to_fit();
}

TargetChannels::Values Engine::desired_targets(const PipelineTick& tick) {
  const auto k = MapperConstants::from_config(cfg_);
  const WalkContext& ctx = coordinator_.context();

  if (!ctx.swing_foot) return held_desired_;  // double-support hold

  const Foot swing = *ctx.swing_foot;
  const FootSignal& sig = swing == Foot::Left ? tick.left : tick.right;
  const GaitPhase phase =
      swing == Foot::Left ? fsm_left_.phase() : fsm_right_.phase();
  const bool ascending = phase == GaitPhase::Ascending;
  const double h = clamp_height(sig.h, k);

  const DepthPair d = ctx.step_kind == StepKind::FirstStep
                          ? first_step_depths(h, ascending, k)
                          : consecutive_depths(h, ascending, k);
  // The planted foot's depth drives the pelvis: the hip is lowest when the
  // stance is widest and tallest mid-swing. Its curves stay within
  // +-z_max/2, so the drop never exceeds the leg model's bound.
  const double dh = pelvis_drop(d.other, k);
  const VerticalPair vp = vertical_targets(h, dh, k);

  TargetChannels::Values desired;
  if (swing == Foot::Left) {
    desired.z_left = d.swing;
    desired.z_right = d.other;
    desired.y_left = vp.swing;
    desired.y_right = vp.support;
  } else {
    desired.z_right = d.swing;
    desired.z_left = d.other;
    desired.y_right = vp.swing;
    desired.y_left = vp.support;
  }
  desired.dh = dh;
  held_desired_ = desired;  // freeze for the double support that follows
  return desired;
}

TickRecord Engine::process(const TrackingFrame& frame) {
  PipelineTick tick = pipeline_.push_frame(frame);

  // Detect phases, then arbitrate the two feet.
  WalkCoordinator::TickEvents raw;
  raw.left = fsm_left_.step(tick.left);
  raw.right = fsm_right_.step(tick.right);
  const auto accepted = coordinator_.update(tick.t, fsm_left_, fsm_right_, raw);
  if (accepted.left)
    events_.push_back({tick.t, Foot::Left, *accepted.left});
  if (accepted.right)
    events_.push_back({tick.t, Foot::Right, *accepted.right});

  // An accepted lift cancels any retraction still in flight.
  if (coordinator_.context().swing_foot) retracting_ = false;

  const auto stop = coordinator_.stop_timer_update(tick.t);
  if (stop) {
    events_.push_back(*stop);
    retracting_ = true;
    held_desired_ = TargetChannels::Values{};
    fsm_left_.reset();
    fsm_right_.reset();
    speed_.hard_stop();
  }

  // Animation targets: live mapping during a swing, frozen hold during
  // double support, lerp-to-rest after a stop.
  if (retracting_) {
    if (channels_.retract(cfg_.alpha, cfg_.stop_epsilon)) {
      retracting_ = false;
      coordinator_.finish_stop();
    }
  } else {
    channels_.advance(desired_targets(tick), cfg_.alpha);
  }

  // Forward speed: collect the swing foot's vertical speed, re-fit at
  // mid/terminal swing, decay when events dry up, then integrate.
  const WalkContext& ctx = coordinator_.context();
  if (ctx.swing_foot)
    speed_.accumulate(*ctx.swing_foot == Foot::Left ? tick.left.s : tick.right.s);
  if (accepted.left)
    speed_.adapt_on_event({tick.t, Foot::Left, *accepted.left});
  if (accepted.right)
    speed_.adapt_on_event({tick.t, Foot::Right, *accepted.right});
  speed_.decay_check(tick.t);
  speed_.integrate(1.0 / cfg_.sample_hz);

  TickRecord r;
  r.t = tick.t;
  const auto& cur = channels_.current();
  r.zl = cur.z_left;
  r.zr = cur.z_right;
  r.yl = cur.y_left;
  r.yr = cur.y_right;
  r.dh = cur.dh;
  r.ycurr = cfg_.y_init - cur.dh;
  r.speed = speed_.current_speed();
  r.dist = speed_.distance();
  r.phase_l = fsm_left_.phase();
  r.phase_r = fsm_right_.phase();
  r.hl = tick.left.h;
  r.hr = tick.right.h;
  r.sl = tick.left.s;
  r.sr = tick.right.s;
  r.swing = ctx.swing_foot;
  return r;
}

SessionResult run_session(const EngineConfig& cfg,
                          std::span<const TrackingFrame> frames,
                          std::optional<FloorCalibration> calibration) {
  Engine engine(cfg, std::move(calibration));
  SessionResult out;
  out.config = engine.config();
  out.records.reserve(frames.size());
  for (const auto& f : frames) {
    if (auto rec = engine.feed(f)) out.records.push_back(*rec);
  }
  if (!engine.calibrated())
    throw InsufficientData("stream ended inside the calibration window (" +
                           std::to_string(frames.size()) + " frames)");
  out.calibration = engine.calibration();
  out.events = engine.events();
  out.metrics = compute_metrics(out.records, out.events, cfg.goal_m);
  out.irregular_frames = engine.irregular_frames();
  return out;
}

}  // namespace striderig
