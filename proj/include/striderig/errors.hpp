// Error taxonomy for the locomotion engine. Each condition the pipeline can
// reject gets its own exception type so callers and tests can tell them apart.
#pragma once

#include <stdexcept>
#include <string>

namespace striderig {

struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Calibration window too short to establish a floor reference.
struct InsufficientData : EngineError {
  using EngineError::EngineError;
};

// Calibration window shows too much motion to be a standing pose.
struct ExcessiveMotion : EngineError {
  using EngineError::EngineError;
};

// Low-pass cutoff outside (0, Nyquist).
struct InvalidCutoff : EngineError {
  using EngineError::EngineError;
};

// Frames pushed before a floor calibration exists.
struct NotCalibrated : EngineError {
  using EngineError::EngineError;
};

// Frame timestamps must strictly increase.
struct NonMonotonicTime : EngineError {
  using EngineError::EngineError;
};

// Stride depth would exceed the leg's reach.
struct LegOverextension : EngineError {
  using EngineError::EngineError;
};

// Bad configuration file: unknown key, unparsable value, or violated bound.
struct ConfigError : EngineError {
  using EngineError::EngineError;
};

// Synthetic gait parameters outside their documented ranges.
struct InvalidSpec : EngineError {
  using EngineError::EngineError;
};

// Malformed input data (frames, records, events).
struct DataError : EngineError {
  using EngineError::EngineError;
};

}  // namespace striderig
