#ifndef SIMOUT_ERROR_HPP_
#define SIMOUT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace simout {

enum class ErrorKind {
  FileNotFound,
  EmptyFile,
  RaggedRows,
  NonNumericToken,
  DimensionMismatch,
  EmptyRunSet,
  SsIdxOutOfRange,
  IterOutOfRange,
  IndexOutOfRange,
  EmptyMatrix,
  TooFewObservations,
  DegenerateSample,
  DegenerateInput,
  SampleSizeOutOfRange,
  DomainError,
  NoConvergence,
  FMNameMismatch,
  BothConstantEqual,
  IoError,
  ConfigError,
};

const char* error_kind_name(ErrorKind kind);

// All library failures are reported through this one exception type. The
// kind is machine-checkable; the message carries the context (path, row,
// column, index) a user needs.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace simout

#endif  // SIMOUT_ERROR_HPP_
