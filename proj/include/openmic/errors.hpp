#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace openmic {

enum class Err {
  Config,
  UnknownField,
  InvariantViolation,
  MissingField,
  MissingHistory,
  Gateway,
  Protocol,
  DimensionMismatch,
  ZeroVector,
  TranscriptExhausted,
  Schema,
  DuplicateId,
  MalformedLine,
  Anonymization,
  UnclosedSpan,
  UnknownMarker,
  MalformedDuration,
  NestingViolation,
  EmptyScript,
  WeightSum,
  Io,
};

const char* err_name(Err code);

class OpenMicError : public std::runtime_error {
public:
  OpenMicError(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}

  Err code() const { return code_; }

private:
  Err code_;
};

/// Parse diagnostic with a source position (1-based line, column in codepoints).
class MarkupError : public OpenMicError {
public:
  MarkupError(Err code, const std::string& what, int line, int column)
      : OpenMicError(code, what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

/// Raised when a model output fails schema validation on every attempt.
/// Carries the raw output of each attempt for post-mortems.
class SchemaViolationError : public OpenMicError {
public:
  SchemaViolationError(const std::string& what, std::vector<std::string> raw_outputs)
      : OpenMicError(Err::Schema, what), raw_outputs_(std::move(raw_outputs)) {}

  const std::vector<std::string>& raw_outputs() const { return raw_outputs_; }

private:
  std::vector<std::string> raw_outputs_;
};

/// Retryable backend failure: HTTP 429/5xx or a timeout. The gateway converts
/// this into GatewayError once the retry budget is exhausted.
class TransientFailure : public OpenMicError {
public:
  explicit TransientFailure(const std::string& what) : OpenMicError(Err::Gateway, what) {}
};

}  // namespace openmic
