#pragma once

#include <stdexcept>
#include <string>

namespace dynsfm {

// Error taxonomy shared by all modules. The category maps to a CLI exit
// code: Config -> 2, Numerical -> 3, Io -> 4.
enum class ErrorCategory { Config, Numerical, Io };

class Error : public std::runtime_error {
public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const { return category_; }

private:
  ErrorCategory category_;
};

struct NonPositiveDepth : Error {
  explicit NonPositiveDepth(const std::string& what = "point depth is not positive")
      : Error(ErrorCategory::Numerical, what) {}
};

struct DegenerateConfiguration : Error {
  explicit DegenerateConfiguration(const std::string& what = "degenerate point configuration")
      : Error(ErrorCategory::Numerical, what) {}
};

struct InsufficientInliers : Error {
  explicit InsufficientInliers(const std::string& what = "RANSAC consensus below minimal sample size")
      : Error(ErrorCategory::Numerical, what) {}
};

struct ConfigInvalid : Error {
  explicit ConfigInvalid(const std::string& field)
      : Error(ErrorCategory::Config, "invalid config field: " + field), field_(field) {}
  const std::string& field() const { return field_; }

private:
  std::string field_;
};

struct ShapeMismatch : Error {
  explicit ShapeMismatch(const std::string& what = "operand shapes disagree")
      : Error(ErrorCategory::Config, what) {}
};

struct SingularCovariance : Error {
  explicit SingularCovariance(const std::string& what = "covariance is not positive-definite")
      : Error(ErrorCategory::Numerical, what) {}
};

struct InsufficientFeatures : Error {
  explicit InsufficientFeatures(int frame)
      : Error(ErrorCategory::Numerical,
              "fewer than 3 depth-valid features at frame " + std::to_string(frame)),
        frame_(frame) {}
  int frame() const { return frame_; }

private:
  int frame_;
};

struct MissingCameraPose : Error {
  explicit MissingCameraPose(int frame)
      : Error(ErrorCategory::Config, "no camera pose for frame " + std::to_string(frame)),
        frame_(frame) {}
  int frame() const { return frame_; }

private:
  int frame_;
};

struct MismatchedBody : Error {
  explicit MismatchedBody(const std::string& what = "points belong to different bodies")
      : Error(ErrorCategory::Config, what) {}
};

struct NotEnoughPairs : Error {
  explicit NotEnoughPairs(const std::string& what = "requested more pairs than available")
      : Error(ErrorCategory::Config, what) {}
};

struct BadDimensions : Error {
  explicit BadDimensions(const std::string& what = "sketch dimensions out of range")
      : Error(ErrorCategory::Config, what) {}
};

struct NumericalFailure : Error {
  explicit NumericalFailure(const std::string& what = "non-finite value during solve")
      : Error(ErrorCategory::Numerical, what) {}
};

struct InsufficientOverlap : Error {
  explicit InsufficientOverlap(const std::string& what = "fewer than 3 common trajectory frames")
      : Error(ErrorCategory::Numerical, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorCategory::Io, what) {}
};

}  // namespace dynsfm
