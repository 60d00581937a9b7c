#pragma once

#include <stdexcept>
#include <string>

namespace semnet {

/// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data violates a contract (bad record, empty corpus, inconsistent counts).
class DataError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A persisted file disagrees with its own manifest or structure.
class CorruptionError : public DataError {
 public:
  using DataError::DataError;
};

/// Counts handed to the graph builder reference unknown nodes.
class IntegrityError : public DataError {
 public:
  using DataError::DataError;
};

/// A validated corpus produced no usable documents.
class EmptyCorpusError : public DataError {
 public:
  using DataError::DataError;
};

/// A metric is not defined for the given graph (e.g. density with V < 2).
class UndefinedMetricError : public DataError {
 public:
  using DataError::DataError;
};

/// Malformed review-endpoint payload. `field()` names the offending member.
class ParseError : public DataError {
 public:
  ParseError(std::string field, const std::string& what)
      : DataError("malformed payload at '" + field + "': " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Transport failure or exhausted rate-limit retries. The cursor of the page
/// that failed is kept so a caller can resume.
class NetworkError : public Error {
 public:
  NetworkError(const std::string& what, std::string cursor)
      : Error(what), cursor_(std::move(cursor)) {}

  bool retriable() const noexcept { return true; }
  const std::string& cursor() const noexcept { return cursor_; }

 private:
  std::string cursor_;
};

}  // namespace semnet
