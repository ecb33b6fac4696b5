#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace noma {

// Unit conversions. Everything past config load is in linear units (watts).
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

/// log2(1 + x) as a natural log scaled by 1/ln 2.
inline double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

class InvalidAllocation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a two-user split is requested with the last SIC user not
/// having the strictly smaller NCR.
class InvalidOrder : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TooLargeInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration problem, tagged with the offending field path
/// (e.g. "users[2].distance_m").
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace noma
