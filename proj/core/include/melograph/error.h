// Exception hierarchy used across melograph.
//
// Input problems (unreadable bytes, malformed XML, unsupported layouts) derive
// from InputError; problems found while analysing a well-formed score derive
// from AnalysisError. The CLI maps the two families onto distinct exit codes.

#ifndef MELOGRAPH_ERROR_H_
#define MELOGRAPH_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace melograph {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class AnalysisError : public Error {
 public:
  using Error::Error;
};

/// Malformed XML or a damaged container. Carries the byte offset of the
/// failure within the XML payload.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t byte_offset)
      : InputError(message + " (at byte " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

/// Well-formed XML that violates MusicXML structure (e.g. no divisions).
class StructureError : public InputError {
 public:
  using InputError::InputError;
};

/// score-timewise, unknown root elements, unsupported ZIP methods.
class UnsupportedFormatError : public InputError {
 public:
  using InputError::InputError;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class RoleAssignmentError : public AnalysisError {
 public:
  using AnalysisError::AnalysisError;
};

class BuildError : public AnalysisError {
 public:
  using AnalysisError::AnalysisError;
};

class AggregationError : public AnalysisError {
 public:
  using AnalysisError::AnalysisError;
};

class SelectionError : public AnalysisError {
 public:
  using AnalysisError::AnalysisError;
};

class CorpusError : public AnalysisError {
 public:
  using AnalysisError::AnalysisError;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace melograph

#endif  // MELOGRAPH_ERROR_H_
