#include "simout/error.hpp"

namespace simout {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::EmptyFile: return "EmptyFile";
    case ErrorKind::RaggedRows: return "RaggedRows";
    case ErrorKind::NonNumericToken: return "NonNumericToken";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EmptyRunSet: return "EmptyRunSet";
    case ErrorKind::SsIdxOutOfRange: return "SsIdxOutOfRange";
    case ErrorKind::IterOutOfRange: return "IterOutOfRange";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::EmptyMatrix: return "EmptyMatrix";
    case ErrorKind::TooFewObservations: return "TooFewObservations";
    case ErrorKind::DegenerateSample: return "DegenerateSample";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::SampleSizeOutOfRange: return "SampleSizeOutOfRange";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::FMNameMismatch: return "FMNameMismatch";
    case ErrorKind::BothConstantEqual: return "BothConstantEqual";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "UnknownError";
}

}  // namespace simout
