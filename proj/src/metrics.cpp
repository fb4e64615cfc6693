#include "striderig/metrics.hpp"

#include <cmath>
#include <cstddef>

namespace striderig {
namespace {

constexpr double kTimeEps = 1e-9;

double mean_or_zero(double sum, std::size_t n) {
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

}  // namespace

SessionMetrics compute_metrics(std::span<const TickRecord> records,
                               std::span<const GaitEvent> events,
                               double goal_m) {
  SessionMetrics m;

  std::optional<double> walk_start;
  for (const auto& ev : events) {
    if (ev.type == GaitEventType::TerminalSwing) ++m.n_steps;
    if (!walk_start && ev.type == GaitEventType::InitialSwing)
      walk_start = ev.t;
  }

  // Step height: the swing foot's filtered height sampled at each
  // mid-swing tick. Both lists are time-ordered, so one cursor suffices.
  {
    double sum = 0.0;
    std::size_t n = 0;
    std::size_t cursor = 0;
    for (const auto& ev : events) {
      if (ev.type != GaitEventType::MidSwing) continue;
      while (cursor < records.size() && records[cursor].t < ev.t - kTimeEps)
        ++cursor;
      if (cursor >= records.size()) break;
      if (std::abs(records[cursor].t - ev.t) > kTimeEps) continue;
      sum += ev.foot == Foot::Left ? records[cursor].hl : records[cursor].hr;
      ++n;
    }
    m.avg_step_height = mean_or_zero(sum, n);
  }

  if (!walk_start || records.empty()) return m;

  std::optional<double> goal_t;
  for (const auto& r : records) {
    if (r.dist >= goal_m) {
      goal_t = r.t;
      break;
    }
  }
  if (goal_t) m.t_c = *goal_t - *walk_start;

  // Averages run from the first lift to the goal (or stream end).
  const double end_t = goal_t ? *goal_t : records.back().t;
  double foot_sum = 0.0, walk_sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : records) {
    if (r.t < *walk_start - kTimeEps) continue;
    if (r.t > end_t + kTimeEps) break;
    double s = 0.0;
    if (r.swing) s = *r.swing == Foot::Left ? r.sl : r.sr;
    foot_sum += s;
    walk_sum += r.speed;
    ++n;
  }
  m.avg_foot_speed = mean_or_zero(foot_sum, n);
  m.avg_walk_speed = mean_or_zero(walk_sum, n);
  return m;
}

}  // namespace striderig
