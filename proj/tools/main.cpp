// Command-line front end: synth | calibrate | run | metrics | serve.
// Exit codes: 0 ok, 1 data/runtime error, 2 usage error.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "striderig/engine.hpp"
#include "striderig/errors.hpp"
#include "striderig/jsonl.hpp"
#include "striderig/server.hpp"
#include "striderig/synth.hpp"

namespace {

using namespace striderig;

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path + " for writing");
  out << text;
}

EngineConfig load_cfg(const std::string& path) {
  if (path.empty()) return EngineConfig{};
  return load_config_file(path);
}

std::string lines_of(const std::vector<TrackingFrame>& frames) {
  std::string out;
  for (const auto& f : frames) out += frame_to_line(f) + '\n';
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"striderig: walking-in-place locomotion engine"};
  app.require_subcommand(1);

  // --- synth ----------------------------------------------------------
  auto* synth_cmd =
      app.add_subcommand("synth", "generate a scripted walking session");
  SynthGaitSpec spec;
  std::string synth_out = "-";
  std::string truth_out;
  synth_cmd->add_option("-o,--output", synth_out, "frames file (- = stdout)")
      ->capture_default_str();
  synth_cmd->add_option("--truth", truth_out, "write ground-truth events here");
  synth_cmd->add_option("--cadence", spec.cadence_hz, "steps per second, both feet")
      ->capture_default_str();
  synth_cmd->add_option("--amplitude", spec.amplitude, "peak foot height (m)")
      ->capture_default_str();
  synth_cmd->add_option("--duration", spec.duration_s, "walking time (s)")
      ->capture_default_str();
  synth_cmd->add_option("--noise", spec.noise_sigma, "gaussian sigma (m)")
      ->capture_default_str();
  synth_cmd->add_option("--phase-offset", spec.phase_offset,
                        "right-foot offset as a fraction of a foot cycle")
      ->capture_default_str();
  synth_cmd->add_option("--seed", spec.seed, "noise seed")->capture_default_str();
  synth_cmd->add_option("--lead-in", spec.lead_in_s, "standing time before (s)")
      ->capture_default_str();
  synth_cmd->add_option("--tail", spec.tail_s, "standing time after (s)")
      ->capture_default_str();
  synth_cmd->add_option("--base-y", spec.base_y, "resting ankle height (m)")
      ->capture_default_str();
  synth_cmd->add_option("--rate", spec.rate_hz, "frames per second")
      ->capture_default_str();

  // --- calibrate ------------------------------------------------------
  auto* calib_cmd =
      app.add_subcommand("calibrate", "measure the floor from a standing clip");
  std::string calib_in;
  std::string calib_out = "-";
  std::string calib_cfg;
  calib_cmd->add_option("-i,--input", calib_in, "frames file")->required();
  calib_cmd->add_option("-o,--output", calib_out, "calibration file (- = stdout)")
      ->capture_default_str();
  calib_cmd->add_option("-c,--config", calib_cfg, "config file");

  // --- run ------------------------------------------------------------
  auto* run_cmd = app.add_subcommand("run", "process a recorded session");
  std::string run_in, run_cfg, run_calib, run_events, run_metrics, run_calib_out;
  std::string run_out = "-";
  run_cmd->add_option("-i,--input", run_in, "frames file")->required();
  run_cmd->add_option("-o,--output", run_out, "records file (- = stdout)")
      ->capture_default_str();
  run_cmd->add_option("-c,--config", run_cfg, "config file");
  run_cmd->add_option("--calibration", run_calib,
                      "precomputed calibration (skips the standing window)");
  run_cmd->add_option("--events", run_events, "write detected events here");
  run_cmd->add_option("--metrics", run_metrics, "write session metrics here");
  run_cmd->add_option("--calibration-out", run_calib_out,
                      "write the calibration actually used");

  // --- metrics --------------------------------------------------------
  auto* metrics_cmd =
      app.add_subcommand("metrics", "summarize records + events");
  std::string met_records, met_events, met_cfg;
  std::string met_out = "-";
  double met_goal = -1.0;
  metrics_cmd->add_option("-i,--input", met_records, "records file")->required();
  metrics_cmd->add_option("--events", met_events, "events file")->required();
  metrics_cmd->add_option("-o,--output", met_out, "metrics file (- = stdout)")
      ->capture_default_str();
  metrics_cmd->add_option("-c,--config", met_cfg, "config file");
  metrics_cmd->add_option("--goal", met_goal, "goal distance override (m)");

  // --- serve ----------------------------------------------------------
  auto* serve_cmd = app.add_subcommand("serve", "stream frames over TCP");
  ServeOptions sopts;
  std::string serve_cfg, serve_calib;
  serve_cmd->add_option("--port", sopts.port, "TCP port (0 = ephemeral)")
      ->capture_default_str();
  serve_cmd->add_option("-c,--config", serve_cfg, "config file");
  serve_cmd->add_option("--calibration", serve_calib,
                        "precomputed calibration for every session");
  serve_cmd->add_option("--idle-timeout", sopts.idle_timeout_s,
                        "close silent sessions after this many seconds")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*synth_cmd) {
      const SynthResult result = generate(spec);
      write_text(synth_out, lines_of(result.frames));
      if (!truth_out.empty()) {
        std::string lines;
        for (const auto& ev : result.truth) lines += event_to_line(ev) + '\n';
        write_text(truth_out, lines);
      }
    } else if (*calib_cmd) {
      const EngineConfig cfg = load_cfg(calib_cfg);
      cfg.validate();
      const auto frames = read_frames_file(calib_in);
      const auto cal = calibrate_floor(frames, cfg.sample_hz, cfg.calib_min_s,
                                       cfg.calib_max_std);
      write_text(calib_out, calibration_to_json(cal) + '\n');
    } else if (*run_cmd) {
      const EngineConfig cfg = load_cfg(run_cfg);
      std::optional<FloorCalibration> cal;
      if (!run_calib.empty()) cal = read_calibration_file(run_calib);
      const auto frames = read_frames_file(run_in);
      const SessionResult result = run_session(cfg, frames, cal);
      std::string lines;
      for (const auto& r : result.records) lines += record_to_line(r) + '\n';
      write_text(run_out, lines);
      if (!run_events.empty()) {
        std::string ev_lines;
        for (const auto& ev : result.events) ev_lines += event_to_line(ev) + '\n';
        write_text(run_events, ev_lines);
      }
      if (!run_metrics.empty())
        write_text(run_metrics, metrics_to_json(result.metrics) + '\n');
      if (!run_calib_out.empty())
        write_text(run_calib_out, calibration_to_json(result.calibration) + '\n');
      if (result.irregular_frames > 0)
        std::cerr << "warning: " << result.irregular_frames
                  << " frame(s) arrived off the nominal sample grid\n";
    } else if (*metrics_cmd) {
      const EngineConfig cfg = load_cfg(met_cfg);
      const double goal = met_goal >= 0.0 ? met_goal : cfg.goal_m;
      const auto records = read_records_file(met_records);
      const auto events = read_events_file(met_events);
      write_text(met_out, metrics_to_json(compute_metrics(records, events, goal)) + '\n');
    } else if (*serve_cmd) {
      sopts.cfg = load_cfg(serve_cfg);
      if (!serve_calib.empty())
        sopts.calibration = read_calibration_file(serve_calib);
      if (sopts.port != 0)
        std::cerr << "listening on port " << sopts.port << '\n';
      else
        std::cerr << "listening on an ephemeral port\n";
      serve_stream(sopts);
    }
  } catch (const EngineError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
