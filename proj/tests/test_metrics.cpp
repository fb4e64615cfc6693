#include <doctest.h>

#include <vector>

#include "striderig/metrics.hpp"

using namespace striderig;

namespace {

// A tiny hand-built session: walk starts at t=2, speed 1 m/s, goal 3 m.
struct Fixture {
  std::vector<TickRecord> records;
  std::vector<GaitEvent> events;

  Fixture() {
    for (int i = 0; i <= 300; ++i) {
      TickRecord r;
      r.t = i / 30.0;
      if (r.t >= 2.0) {
        r.speed = 1.0;
        r.dist = r.t - 2.0;
        r.swing = (i / 15) % 2 == 0 ? Foot::Left : Foot::Right;
        r.sl = 0.8;
        r.sr = 0.4;
        r.hl = 0.20;
        r.hr = 0.30;
      }
      records.push_back(r);
    }
    events.push_back({2.0, Foot::Left, GaitEventType::InitialSwing});
    // Two mid swings exactly on record ticks: left at t=2.5, right at t=3.
    events.push_back({records[75].t, Foot::Left, GaitEventType::MidSwing});
    events.push_back({records[75].t + 0.1, Foot::Left, GaitEventType::TerminalSwing});
    events.push_back({records[90].t, Foot::Right, GaitEventType::MidSwing});
    events.push_back({records[90].t + 0.1, Foot::Right, GaitEventType::TerminalSwing});
  }
};

}  // namespace

TEST_CASE("steps are terminal swings") {
  Fixture fx;
  const auto m = compute_metrics(fx.records, fx.events, 3.0);
  CHECK(m.n_steps == 2);
}

TEST_CASE("completion time runs from the first lift to the goal tick") {
  Fixture fx;
  const auto m = compute_metrics(fx.records, fx.events, 3.0);
  REQUIRE(m.t_c.has_value());
  // dist hits 3.0 at t=5.0; the walk started at t=2.0.
  CHECK(*m.t_c == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("an unreached goal leaves t_c absent but averages intact") {
  Fixture fx;
  const auto m = compute_metrics(fx.records, fx.events, 1000.0);
  CHECK_FALSE(m.t_c.has_value());
  CHECK(m.avg_walk_speed == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("step height averages the swing foot's height at mid swing") {
  Fixture fx;
  const auto m = compute_metrics(fx.records, fx.events, 3.0);
  // Left mid-swing reads hl=0.20, right reads hr=0.30.
  CHECK(m.avg_step_height == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("foot speed averages the active swing foot only") {
  Fixture fx;
  const auto m = compute_metrics(fx.records, fx.events, 3.0);
  // Swing alternates every 15 ticks between sl=0.8 and sr=0.4; ticks within
  // [2.0, 5.0] split almost evenly, so the mean sits between the two.
  CHECK(m.avg_foot_speed > 0.4);
  CHECK(m.avg_foot_speed < 0.8);
  CHECK(m.avg_foot_speed == doctest::Approx(0.6).epsilon(0.05));
}

TEST_CASE("averages cover only the walking window") {
  Fixture fx;
  const auto m = compute_metrics(fx.records, fx.events, 3.0);
  // Records before t=2 carry speed 0; including them would drag the walk
  // average below 1. It must be exactly 1 within rounding.
  CHECK(m.avg_walk_speed == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("no events means empty metrics") {
  Fixture fx;
  const auto m = compute_metrics(fx.records, {}, 3.0);
  CHECK(m.n_steps == 0);
  CHECK_FALSE(m.t_c.has_value());
  CHECK(m.avg_foot_speed == 0.0);
  CHECK(m.avg_walk_speed == 0.0);
  CHECK(m.avg_step_height == 0.0);
}

TEST_CASE("no records means zeros across the board") {
  Fixture fx;
  const auto m = compute_metrics({}, fx.events, 3.0);
  CHECK(m.n_steps == 2);  // events alone still count steps
  CHECK_FALSE(m.t_c.has_value());
  CHECK(m.avg_foot_speed == 0.0);
  CHECK(m.avg_walk_speed == 0.0);
}

TEST_CASE("mid swing events that miss every record tick are skipped") {
  Fixture fx;
  std::vector<GaitEvent> off = {
      {2.0, Foot::Left, GaitEventType::InitialSwing},
      {2.5049, Foot::Left, GaitEventType::MidSwing},  // between ticks
  };
  const auto m = compute_metrics(fx.records, off, 3.0);
  CHECK(m.avg_step_height == 0.0);  // nothing matched, zero by convention
}
