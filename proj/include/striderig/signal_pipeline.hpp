// Signal conditioning stage: floor calibration, bounded sample history,
// low-pass filtering of ankle heights, and velocity estimation.
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "striderig/config.hpp"
#include "striderig/frame.hpp"

namespace striderig {

// Result of averaging a standing window into a floor reference.
struct FloorCalibration {
  double floor_y = 0.0;  // sensor-frame height of the floor (joint mean)
  int n_samples = 0;     // frames consumed
  double duration = 0.0; // n_samples / sample rate, seconds
};

// Averages both ankles over a standing window. Requires at least
// ceil(min_seconds * rate_hz) frames and a pooled standard deviation of at
// most max_std (otherwise the subject was moving, not standing).
FloorCalibration calibrate_floor(std::span<const TrackingFrame> frames,
                                 double rate_hz = 30.0,
                                 double min_seconds = 3.0,
                                 double max_std = 0.02);

// Fixed-capacity FIFO of recent samples; pushing past capacity drops the
// oldest. One second of history at the nominal rate.
class SampleBuffer {
 public:
  explicit SampleBuffer(std::size_t capacity = 30)
      : data_(capacity, 0.0), cap_(capacity) {}

  void push(double v);
  std::size_t size() const { return size_; }
  std::size_t capacity() const { return cap_; }
  bool empty() const { return size_ == 0; }
  // index 0 = newest, size()-1 = oldest
  double recent(std::size_t back_index) const;
  void clear() { size_ = 0; head_ = 0; }

 private:
  std::vector<double> data_;
  std::size_t cap_;
  std::size_t head_ = 0;  // next write slot
  std::size_t size_ = 0;
};

// One second-order section, direct form II transposed.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;  // numerator
  double a1 = 0.0, a2 = 0.0;            // denominator (monic)
  double z1 = 0.0, z2 = 0.0;            // state

  double step(double x) {
    const double y = b0 * x + z1;
    z1 = b1 * x - a1 * y + z2;
    z2 = b2 * x - a2 * y;
    return y;
  }
  // Seat the state at the DC fixed point for a constant input.
  void prime(double x) {
    z1 = (b1 - a1) * x + (b2 - a2) * x;
    z2 = (b2 - a2) * x;
  }
  double dc_gain() const { return (b0 + b1 + b2) / (1.0 + a1 + a2); }
};

// Causal Butterworth low-pass as a cascade of biquads (odd orders get one
// first-order section folded into a biquad). Bilinear transform with the
// cutoff prewarped so the -3 dB point lands exactly on cutoff_hz.
class LowPassFilter {
 public:
  LowPassFilter() = default;
  // Throws InvalidCutoff unless 0 < cutoff < rate/2; order must be 1..8.
  LowPassFilter(double cutoff_hz, double rate_hz, int order = 2);

  double step(double x);
  void prime(double x);  // settle at a constant input level
  double dc_gain() const;
  const std::vector<Biquad>& sections() const { return sections_; }

 private:
  std::vector<Biquad> sections_;
};

// Per-foot conditioned output plus bookkeeping for one processed frame.
struct PipelineTick {
  double t = 0.0;
  FootSignal left;
  FootSignal right;
  bool irregular_spacing = false;  // frame interval off nominal by > 50%
};

// Streaming front end: owns the calibration, per-foot history buffers,
// filters, and the velocity estimator.
class SignalPipeline {
 public:
  explicit SignalPipeline(const EngineConfig& cfg);

  // Installs a floor reference and primes both filters at per-foot means
  // (falls back to floor_y when no window is given).
  void set_calibration(const FloorCalibration& cal,
                       std::optional<double> left_mean = std::nullopt,
                       std::optional<double> right_mean = std::nullopt);
  bool calibrated() const { return calibration_.has_value(); }
  const FloorCalibration& calibration() const;

  // Conditions one frame. Throws NotCalibrated / NonMonotonicTime.
  PipelineTick push_frame(const TrackingFrame& frame);

  int irregular_frames() const { return irregular_frames_; }

 private:
  double estimate_velocity(const SampleBuffer& buf) const;

  EngineConfig cfg_;
  std::optional<FloorCalibration> calibration_;
  LowPassFilter filter_left_, filter_right_;
  SampleBuffer raw_left_, raw_right_;
  std::optional<double> last_t_;
  bool first_frame_ = true;
  bool central_ = false;
  int irregular_frames_ = 0;
};

}  // namespace striderig
