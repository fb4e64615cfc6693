#include "striderig/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "striderig/errors.hpp"

namespace striderig {
namespace {

constexpr double kPi = 3.14159265358979323846;
// The scripted walker stands still after its last touchdown; the matching
// ground-truth stop event lands one stop-timeout later.
constexpr double kStopAfterS = 1.5;

// Gaussian deviates via Box-Muller on a fixed-width engine, so a seed
// yields the same stream on every platform (std::normal_distribution
// does not guarantee that across standard libraries).
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  double next(double sigma) {
    if (have_spare_) {
      have_spare_ = false;
      return spare_ * sigma;
    }
    const double u1 = unit();
    const double u2 = unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * kPi * u2;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th) * sigma;
  }

 private:
  double unit() {  // (0, 1], keeps the log finite
    return static_cast<double>((rng_() >> 11) + 1) * 0x1.0p-53;
  }

  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace

void SynthGaitSpec::validate() const {
  if (!(cadence_hz >= 0.5 && cadence_hz <= 3.0))
    throw InvalidSpec("cadence_hz must lie in [0.5, 3]");
  if (!(amplitude >= 0.0 && amplitude <= 0.35))
    throw InvalidSpec("amplitude must lie in [0, 0.35]");
  if (!(duration_s >= 0.0)) throw InvalidSpec("duration_s must be >= 0");
  if (!(noise_sigma >= 0.0)) throw InvalidSpec("noise_sigma must be >= 0");
  if (!(phase_offset >= 0.0 && phase_offset < 1.0))
    throw InvalidSpec("phase_offset must lie in [0, 1)");
  if (!(lead_in_s >= 0.0)) throw InvalidSpec("lead_in_s must be >= 0");
  if (!(tail_s >= 0.0)) throw InvalidSpec("tail_s must be >= 0");
  if (!(rate_hz > 0.0)) throw InvalidSpec("rate_hz must be > 0");
}

SynthResult generate(const SynthGaitSpec& spec) {
  spec.validate();
  SynthResult out;

  const double f = spec.cadence_hz / 2.0;  // per-foot swing rate
  const double end = spec.lead_in_s + spec.duration_s;
  const double eps = 1e-9;

  const double offsets[2] = {0.0, spec.phase_offset};
  const Foot feet[2] = {Foot::Left, Foot::Right};

  // Exact swing instants: lift at the cycle start, peak a quarter cycle
  // in, touchdown at the half. Swings that would not finish inside the
  // walking window are dropped entirely (signal and truth alike).
  std::optional<double> last_touch;
  std::optional<Foot> last_touch_foot;
  for (int i = 0; i < 2; ++i) {
    for (int k = 0;; ++k) {
      const double t_lift = spec.lead_in_s + (k + offsets[i]) / f;
      const double t_touch = t_lift + 0.5 / f;
      if (t_touch > end + eps) break;
      out.truth.push_back({t_lift, feet[i], GaitEventType::InitialSwing});
      out.truth.push_back({t_lift + 0.25 / f, feet[i], GaitEventType::MidSwing});
      out.truth.push_back({t_touch, feet[i], GaitEventType::TerminalSwing});
      if (!last_touch || t_touch > *last_touch) {
        last_touch = t_touch;
        last_touch_foot = feet[i];
      }
    }
  }
  std::sort(out.truth.begin(), out.truth.end(),
            [](const GaitEvent& a, const GaitEvent& b) {
              if (a.t != b.t) return a.t < b.t;
              return static_cast<int>(a.foot) < static_cast<int>(b.foot);
            });
  if (last_touch)
    out.truth.push_back(
        {*last_touch + kStopAfterS, *last_touch_foot, GaitEventType::StopDetected});

  const auto height = [&](double t, double off) {
    const double theta = 2.0 * kPi * (f * (t - spec.lead_in_s) - off);
    if (theta < 0.0) return 0.0;
    const double k = std::floor(theta / (2.0 * kPi));
    const double frac = theta - 2.0 * kPi * k;
    if (frac >= kPi) return 0.0;  // back half of the cycle: foot planted
    const double t_touch = spec.lead_in_s + (k + off + 0.5) / f;
    if (t_touch > end + eps) return 0.0;  // incomplete swing suppressed
    return spec.amplitude * std::sin(frac);
  };

  GaussianSource noise(spec.seed);
  const std::size_t n_frames = static_cast<std::size_t>(
      std::llround((spec.lead_in_s + spec.duration_s + spec.tail_s) * spec.rate_hz));
  out.frames.reserve(n_frames);
  for (std::size_t i = 0; i < n_frames; ++i) {
    const double t = static_cast<double>(i) / spec.rate_hz;
    TrackingFrame fr;
    fr.t = t;
    fr.ly = spec.base_y + height(t, 0.0);
    fr.ry = spec.base_y + height(t, spec.phase_offset);
    if (spec.noise_sigma > 0.0) {
      fr.ly += noise.next(spec.noise_sigma);
      fr.ry += noise.next(spec.noise_sigma);
    }
    out.frames.push_back(fr);
  }
  return out;
}

DetectionScore score_detection(std::span<const GaitEvent> truth,
                               std::span<const GaitEvent> detected,
                               double tolerance_s) {
  DetectionScore score;
  score.truth_count = truth.size();
  score.detected_count = detected.size();

  std::vector<bool> used(truth.size(), false);
  for (const auto& det : detected) {
    int best = -1;
    double best_dt = tolerance_s;
    for (std::size_t j = 0; j < truth.size(); ++j) {
      if (used[j]) continue;
      if (truth[j].type != det.type) continue;
      // A stop is a whole-body event; everything else is per-foot.
      if (det.type != GaitEventType::StopDetected && truth[j].foot != det.foot)
        continue;
      const double dt = std::abs(truth[j].t - det.t);
      if (dt <= best_dt) {
        best_dt = dt;
        best = static_cast<int>(j);
      }
    }
    if (best >= 0) {
      used[best] = true;
      ++score.matched;
    }
  }

  score.precision = detected.empty()
                        ? 1.0
                        : static_cast<double>(score.matched) / detected.size();
  score.recall =
      truth.empty() ? 1.0 : static_cast<double>(score.matched) / truth.size();
  return score;
}

}  // namespace striderig
