#pragma once

#include <stdexcept>
#include <string>

namespace techlev {

// Base for everything this library throws on bad input or bad state.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed text: coordinates, versions, ranges, timestamps, manifests.
class ParseError : public Error {
public:
  using Error::Error;
};

// Tool configuration problems (missing paths, bad thresholds).
class ConfigError : public Error {
public:
  using Error::Error;
};

// Corpus / input-data problems (missing files, unresolved deps, unsorted input).
class DataError : public Error {
public:
  using Error::Error;
};

// Statistical preconditions not met (zero cell, empty dataset, rank deficiency).
// `detail_json` optionally carries a machine-readable payload (serialized JSON
// object) that the CLI merges into its error report.
class StatsError : public Error {
public:
  explicit StatsError(const std::string& msg, std::string detail_json = "")
      : Error(msg), detail_json_(std::move(detail_json)) {}
  const std::string& detail_json() const { return detail_json_; }

private:
  std::string detail_json_;
};

// Remote artifact does not exist (HTTP 404).
class MissingArtifactError : public DataError {
public:
  using DataError::DataError;
};

// Transient network failure; the caller may retry.
class NetworkError : public DataError {
public:
  using DataError::DataError;
};

} // namespace techlev
