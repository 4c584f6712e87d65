#pragma once

#include <stdexcept>
#include <string>

namespace entrokit {

// Configuration / usage problems: bad CLI flags, invalid benchmark configs.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input data (unparseable files, non-finite observations).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Base class for data-dependent estimator failures. The benchmark engine
// counts these per replicate instead of aborting a run.
class EstimatorError : public std::runtime_error {
 public:
  explicit EstimatorError(const std::string& msg) : std::runtime_error(msg) {}
};

// A zero (or negative) sample spacing where a logarithm is required;
// happens only for tied observations, which violate the continuity
// assumption behind every spacing formula.
class DegenerateSpacing : public EstimatorError {
 public:
  explicit DegenerateSpacing(const std::string& msg) : EstimatorError(msg) {}
};

// Window size m outside [1, n/2], or an m for which a specific formula is
// undefined (e.g. a zero divisor in its spacing rescaling).
class InvalidWindow : public EstimatorError {
 public:
  explicit InvalidWindow(const std::string& msg) : EstimatorError(msg) {}
};

// A required estimator parameter was not supplied.
class MissingParam : public EstimatorError {
 public:
  explicit MissingParam(const std::string& msg) : EstimatorError(msg) {}
};

// Local regression slope with a zero denominator (constant window).
class SingularSlope : public EstimatorError {
 public:
  explicit SingularSlope(const std::string& msg) : EstimatorError(msg) {}
};

// Zero sample variance / singular covariance: no usable bandwidth.
class DegenerateSample : public EstimatorError {
 public:
  explicit DegenerateSample(const std::string& msg) : EstimatorError(msg) {}
};

// A density-based log argument came out non-positive (e.g. the printed
// HAN difference form). Reported, never silently patched.
class NonpositiveDensityDifference : public EstimatorError {
 public:
  explicit NonpositiveDensityDifference(const std::string& msg)
      : EstimatorError(msg) {}
};

// Estimator does not support the dimension of the supplied data.
class DimensionUnsupported : public EstimatorError {
 public:
  explicit DimensionUnsupported(const std::string& msg) : EstimatorError(msg) {}
};

// A k-th nearest neighbour at distance exactly zero (duplicate points).
class DuplicatePoint : public EstimatorError {
 public:
  explicit DuplicatePoint(const std::string& msg) : EstimatorError(msg) {}
};

// k outside [1, n-1].
class KTooLarge : public EstimatorError {
 public:
  explicit KTooLarge(const std::string& msg) : EstimatorError(msg) {}
};

// Every replicate of a benchmark cell failed; there is nothing to aggregate.
class AllReplicatesFailed : public EstimatorError {
 public:
  explicit AllReplicatesFailed(const std::string& msg) : EstimatorError(msg) {}
};

}  // namespace entrokit
