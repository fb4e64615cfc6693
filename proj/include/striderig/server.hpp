// Line-oriented TCP server: each connection is an isolated engine session.
// The client streams frame lines; once the calibration window has filled the
// server answers every frame line with one record line. Malformed input gets
// an {"error":...} line without killing the session. When the client closes
// its write side the server sends a final metrics line and closes.
#pragma once

#include <atomic>
#include <optional>

#include "striderig/config.hpp"
#include "striderig/signal_pipeline.hpp"

namespace striderig {

struct ServeOptions {
  int port = 7071;              // 0 picks an ephemeral port
  EngineConfig cfg;
  std::optional<FloorCalibration> calibration;
  double idle_timeout_s = 0.0;  // 0 disables the per-connection idle timeout
};

// Blocks in the accept loop. `stop` (optional) ends the loop when set;
// `bound_port` (optional) receives the actual listening port before the loop
// starts — atomic because the natural reader is another thread. Throws
// EngineError when the socket can't be bound.
void serve_stream(const ServeOptions& opts,
                  std::atomic<bool>* stop = nullptr,
                  std::atomic<int>* bound_port = nullptr);

}  // namespace striderig
