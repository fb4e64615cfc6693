// JSON-lines wire formats: tracker frames in; per-tick records, events,
// calibration, and metrics out. Numbers are serialized with shortest
// round-trip precision, so identical runs produce identical bytes.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "striderig/engine_types.hpp"
#include "striderig/frame.hpp"
#include "striderig/gait_fsm.hpp"
#include "striderig/metrics.hpp"
#include "striderig/signal_pipeline.hpp"

namespace striderig {

// {"t":..,"ly":..,"ry":..}; line_no is 1-based and used in error messages.
TrackingFrame parse_frame_line(const std::string& line, std::size_t line_no);
std::string frame_to_line(const TrackingFrame& f);
std::vector<TrackingFrame> read_frames(std::istream& in);
std::vector<TrackingFrame> read_frames_file(const std::string& path);

std::string record_to_line(const TickRecord& r);
TickRecord parse_record_line(const std::string& line, std::size_t line_no);
std::vector<TickRecord> read_records_file(const std::string& path);

// {"t":..,"foot":"L"|"R","event":"initial_swing"|...}
std::string event_to_line(const GaitEvent& e);
GaitEvent parse_event_line(const std::string& line, std::size_t line_no);
std::vector<GaitEvent> read_events_file(const std::string& path);

// {"floor_y":..,"n":..}
std::string calibration_to_json(const FloorCalibration& c);
FloorCalibration parse_calibration_json(const std::string& text);
FloorCalibration read_calibration_file(const std::string& path);

std::string metrics_to_json(const SessionMetrics& m);

}  // namespace striderig
