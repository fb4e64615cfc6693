#include "striderig/jsonl.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "striderig/errors.hpp"

namespace striderig {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;  // keeps output key order stable

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw DataError("line " + std::to_string(line_no) + ": " + what);
}

json parse_object(const std::string& line, std::size_t line_no) {
  json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) fail(line_no, "not valid JSON");
  if (!j.is_object()) fail(line_no, "expected a JSON object");
  return j;
}

double num_field(const json& j, const char* key, std::size_t line_no) {
  const auto it = j.find(key);
  if (it == j.end()) fail(line_no, std::string("missing key \"") + key + '"');
  if (!it->is_number())
    fail(line_no, std::string("key \"") + key + "\" must be a number");
  return it->get<double>();
}

std::string str_field(const json& j, const char* key, std::size_t line_no) {
  const auto it = j.find(key);
  if (it == j.end()) fail(line_no, std::string("missing key \"") + key + '"');
  if (!it->is_string())
    fail(line_no, std::string("key \"") + key + "\" must be a string");
  return it->get<std::string>();
}

Foot foot_from(const std::string& s, std::size_t line_no) {
  if (s == "L") return Foot::Left;
  if (s == "R") return Foot::Right;
  fail(line_no, "foot must be \"L\" or \"R\", got \"" + s + '"');
}

GaitEventType event_from(const std::string& s, std::size_t line_no) {
  if (s == "initial_swing") return GaitEventType::InitialSwing;
  if (s == "mid_swing") return GaitEventType::MidSwing;
  if (s == "terminal_swing") return GaitEventType::TerminalSwing;
  if (s == "stop") return GaitEventType::StopDetected;
  fail(line_no, "unknown event type \"" + s + '"');
}

GaitPhase phase_from(const std::string& s, std::size_t line_no) {
  if (s == "initial_double_support") return GaitPhase::InitialDoubleSupport;
  if (s == "ascending") return GaitPhase::Ascending;
  if (s == "descending") return GaitPhase::Descending;
  if (s == "double_support") return GaitPhase::DoubleSupport;
  fail(line_no, "unknown phase \"" + s + '"');
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

template <typename T, typename Parse>
std::vector<T> read_lines(std::istream& in, Parse parse) {
  std::vector<T> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    out.push_back(parse(line, line_no));
  }
  return out;
}

}  // namespace

TrackingFrame parse_frame_line(const std::string& line, std::size_t line_no) {
  const json j = parse_object(line, line_no);
  TrackingFrame f;
  f.t = num_field(j, "t", line_no);
  f.ly = num_field(j, "ly", line_no);
  f.ry = num_field(j, "ry", line_no);
  return f;
}

std::string frame_to_line(const TrackingFrame& f) {
  ojson j;
  j["t"] = f.t;
  j["ly"] = f.ly;
  j["ry"] = f.ry;
  return j.dump();
}

std::vector<TrackingFrame> read_frames(std::istream& in) {
  return read_lines<TrackingFrame>(in, parse_frame_line);
}

std::vector<TrackingFrame> read_frames_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_frames(in);
}

std::string record_to_line(const TickRecord& r) {
  ojson j;
  j["t"] = r.t;
  j["zl"] = r.zl;
  j["zr"] = r.zr;
  j["yl"] = r.yl;
  j["yr"] = r.yr;
  j["dh"] = r.dh;
  j["ycurr"] = r.ycurr;
  j["speed"] = r.speed;
  j["dist"] = r.dist;
  j["phase_l"] = phase_name(r.phase_l);
  j["phase_r"] = phase_name(r.phase_r);
  j["hl"] = r.hl;
  j["hr"] = r.hr;
  j["sl"] = r.sl;
  j["sr"] = r.sr;
  j["swing"] = r.swing ? foot_letter(*r.swing) : "none";
  return j.dump();
}

TickRecord parse_record_line(const std::string& line, std::size_t line_no) {
  const json j = parse_object(line, line_no);
  TickRecord r;
  r.t = num_field(j, "t", line_no);
  r.zl = num_field(j, "zl", line_no);
  r.zr = num_field(j, "zr", line_no);
  r.yl = num_field(j, "yl", line_no);
  r.yr = num_field(j, "yr", line_no);
  r.dh = num_field(j, "dh", line_no);
  r.ycurr = num_field(j, "ycurr", line_no);
  r.speed = num_field(j, "speed", line_no);
  r.dist = num_field(j, "dist", line_no);
  r.phase_l = phase_from(str_field(j, "phase_l", line_no), line_no);
  r.phase_r = phase_from(str_field(j, "phase_r", line_no), line_no);
  r.hl = num_field(j, "hl", line_no);
  r.hr = num_field(j, "hr", line_no);
  r.sl = num_field(j, "sl", line_no);
  r.sr = num_field(j, "sr", line_no);
  const std::string swing = str_field(j, "swing", line_no);
  if (swing != "none") r.swing = foot_from(swing, line_no);
  return r;
}

std::vector<TickRecord> read_records_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_lines<TickRecord>(in, parse_record_line);
}

std::string event_to_line(const GaitEvent& e) {
  ojson j;
  j["t"] = e.t;
  j["foot"] = foot_letter(e.foot);
  j["event"] = event_name(e.type);
  return j.dump();
}

GaitEvent parse_event_line(const std::string& line, std::size_t line_no) {
  const json j = parse_object(line, line_no);
  GaitEvent e;
  e.t = num_field(j, "t", line_no);
  e.foot = foot_from(str_field(j, "foot", line_no), line_no);
  e.type = event_from(str_field(j, "event", line_no), line_no);
  return e;
}

std::vector<GaitEvent> read_events_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_lines<GaitEvent>(in, parse_event_line);
}

std::string calibration_to_json(const FloorCalibration& c) {
  ojson j;
  j["floor_y"] = c.floor_y;
  j["n"] = c.n_samples;
  return j.dump();
}

FloorCalibration parse_calibration_json(const std::string& text) {
  const json j = parse_object(text, 1);
  FloorCalibration c;
  c.floor_y = num_field(j, "floor_y", 1);
  const double n = num_field(j, "n", 1);
  if (n < 0 || n != static_cast<double>(static_cast<int>(n)))
    fail(1, "key \"n\" must be a non-negative integer");
  c.n_samples = static_cast<int>(n);
  c.duration = 0.0;  // not part of the wire format
  return c;
}

FloorCalibration read_calibration_file(const std::string& path) {
  auto in = open_or_throw(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_calibration_json(buf.str());
}

std::string metrics_to_json(const SessionMetrics& m) {
  ojson j;
  if (m.t_c)
    j["t_c"] = *m.t_c;
  else
    j["t_c"] = nullptr;
  j["avg_foot_speed"] = m.avg_foot_speed;
  j["avg_walk_speed"] = m.avg_walk_speed;
  j["avg_step_height"] = m.avg_step_height;
  j["n_steps"] = m.n_steps;
  return j.dump();
}

}  // namespace striderig
