#include "striderig/signal_pipeline.hpp"

#include <cmath>
#include <numbers>

#include "striderig/errors.hpp"

namespace striderig {

FloorCalibration calibrate_floor(std::span<const TrackingFrame> frames,
                                 double rate_hz, double min_seconds,
                                 double max_std) {
  const std::size_t needed =
      static_cast<std::size_t>(std::ceil(min_seconds * rate_hz));
  if (frames.size() < needed)
    throw InsufficientData("calibration needs " + std::to_string(needed) +
                           " standing frames, got " + std::to_string(frames.size()));

  double sum = 0.0;
  for (const auto& f : frames) sum += f.ly + f.ry;
  const double n = static_cast<double>(2 * frames.size());
  const double mean = sum / n;

  double var = 0.0;
  for (const auto& f : frames) {
    var += (f.ly - mean) * (f.ly - mean);
    var += (f.ry - mean) * (f.ry - mean);
  }
  const double std_dev = std::sqrt(var / n);
  if (std_dev > max_std)
    throw ExcessiveMotion("calibration window is not a standing pose (std " +
                          std::to_string(std_dev) + " m > " +
                          std::to_string(max_std) + " m)");

  FloorCalibration cal;
  cal.floor_y = mean;
  cal.n_samples = static_cast<int>(frames.size());
  cal.duration = static_cast<double>(frames.size()) / rate_hz;
  return cal;
}

void SampleBuffer::push(double v) {
  data_[head_] = v;
  head_ = (head_ + 1) % cap_;
  if (size_ < cap_) ++size_;
}

double SampleBuffer::recent(std::size_t back_index) const {
  // head_ points one past the newest element.
  const std::size_t idx = (head_ + cap_ - 1 - back_index) % cap_;
  return data_[idx];
}

LowPassFilter::LowPassFilter(double cutoff_hz, double rate_hz, int order) {
  if (!(cutoff_hz > 0.0) || !(cutoff_hz < rate_hz / 2.0))
    throw InvalidCutoff("cutoff must lie in (0, rate/2), got " +
                        std::to_string(cutoff_hz) + " Hz at " +
                        std::to_string(rate_hz) + " Hz");
  if (order < 1 || order > 8)
    throw InvalidCutoff("filter order must be 1..8, got " + std::to_string(order));

  // Bilinear transform with the cutoff prewarped: K = tan(pi*fc/fs).
  const double K = std::tan(std::numbers::pi * cutoff_hz / rate_hz);
  const double K2 = K * K;

  // Butterworth pole pairs: Q_k = 1 / (2 sin((2k-1)pi/(2n))) for each
  // second-order section; an odd order adds one first-order section.
  const int pairs = order / 2;
  for (int k = 1; k <= pairs; ++k) {
    const double q =
        1.0 / (2.0 * std::sin((2.0 * k - 1.0) * std::numbers::pi / (2.0 * order)));
    const double norm = 1.0 / (1.0 + K / q + K2);
    Biquad s;
    s.b0 = K2 * norm;
    s.b1 = 2.0 * s.b0;
    s.b2 = s.b0;
    s.a1 = 2.0 * (K2 - 1.0) * norm;
    s.a2 = (1.0 - K / q + K2) * norm;
    sections_.push_back(s);
  }
  if (order % 2 == 1) {
    const double norm = 1.0 / (1.0 + K);
    Biquad s;  // first-order section expressed as a degenerate biquad
    s.b0 = K * norm;
    s.b1 = s.b0;
    s.b2 = 0.0;
    s.a1 = (K - 1.0) * norm;
    s.a2 = 0.0;
    sections_.push_back(s);
  }
}

double LowPassFilter::step(double x) {
  for (auto& s : sections_) x = s.step(x);
  return x;
}

void LowPassFilter::prime(double x) {
  // Each section has unity DC gain, so the level passes through unchanged.
  for (auto& s : sections_) s.prime(x);
}

double LowPassFilter::dc_gain() const {
  double g = 1.0;
  for (const auto& s : sections_) g *= s.dc_gain();
  return g;
}

SignalPipeline::SignalPipeline(const EngineConfig& cfg)
    : cfg_(cfg),
      filter_left_(cfg.cutoff_hz, cfg.sample_hz, cfg.filter_order),
      filter_right_(cfg.cutoff_hz, cfg.sample_hz, cfg.filter_order),
      central_(cfg.velocity_estimator == "central_difference") {}

void SignalPipeline::set_calibration(const FloorCalibration& cal,
                                     std::optional<double> left_mean,
                                     std::optional<double> right_mean) {
  calibration_ = cal;
  // Settle the filters at the standing level so the first processed frames
  // see h ~ 0 instead of a warm-up transient from zero.
  filter_left_.prime(left_mean.value_or(cal.floor_y));
  filter_right_.prime(right_mean.value_or(cal.floor_y));
}

const FloorCalibration& SignalPipeline::calibration() const {
  if (!calibration_) throw NotCalibrated("no floor calibration installed");
  return *calibration_;
}

double SignalPipeline::estimate_velocity(const SampleBuffer& buf) const {
  if (central_) {
    if (buf.size() < 3) return 0.0;
    return (buf.recent(0) - buf.recent(2)) * cfg_.sample_hz / 2.0;
  }
  if (buf.size() < 2) return 0.0;
  return (buf.recent(0) - buf.recent(1)) * cfg_.sample_hz;
}

PipelineTick SignalPipeline::push_frame(const TrackingFrame& frame) {
  if (!calibration_)
    throw NotCalibrated("push_frame before calibration (frame t=" +
                        std::to_string(frame.t) + ")");
  if (last_t_ && !(frame.t > *last_t_))
    throw NonMonotonicTime("frame timestamps must strictly increase (" +
                           std::to_string(frame.t) + " after " +
                           std::to_string(*last_t_) + ")");

  PipelineTick tick;
  tick.t = frame.t;
  if (last_t_) {
    const double nominal = 1.0 / cfg_.sample_hz;
    const double dt = frame.t - *last_t_;
    if (std::abs(dt - nominal) > 0.5 * nominal) {
      tick.irregular_spacing = true;
      ++irregular_frames_;
    }
  }
  last_t_ = frame.t;

  raw_left_.push(frame.ly);
  raw_right_.push(frame.ry);

  tick.left.h = filter_left_.step(frame.ly) - calibration_->floor_y;
  tick.right.h = filter_right_.step(frame.ry) - calibration_->floor_y;

  // Velocity comes from the unsmoothed positions; the very first processed
  // frame has no predecessor within the session and reports zero.
  if (first_frame_) {
    first_frame_ = false;
    tick.left.v = tick.right.v = 0.0;
  } else {
    tick.left.v = estimate_velocity(raw_left_);
    tick.right.v = estimate_velocity(raw_right_);
  }
  tick.left.s = std::abs(tick.left.v);
  tick.right.s = std::abs(tick.right.v);
  return tick;
}

}  // namespace striderig
