#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gwgauss {

// Numeric values double as C API status codes and CLI exit codes.
enum class ErrorCode : int {
  BadFlags = 2,
  FileNotFound = 3,
  ParseError = 4,
  AsymmetricMatrix = 10,
  NotPositiveDefinite = 11,
  SingularValueOutOfRange = 12,
  InconsistentIndices = 13,
  DimensionMismatch = 14,
  QWOutOfFamily = 15,
  SingularFactor = 16,
  AllocationOutOfRange = 17,
  NonpositiveDistortion = 18,
  QWNotDiagonal = 19,
  InfeasibleRegion = 20,
  OutsideDW = 21,
  TooFewSamples = 22,
  MissingReconstruction = 23,
  Internal = 99,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gwgauss
