#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace rotavg {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

/// Ordered sequence of absolute rotations, one per vertex.
using RotationStack = std::vector<Mat3>;

/// Shared numerical tolerances.
namespace tol {
inline constexpr double kOrthogonality = 1e-9;  // ||R^T R - I||_F for a valid rotation
inline constexpr double kDeterminant = 1e-9;    // |det R - 1| for a valid rotation
inline constexpr double kAlgebraic = 1e-12;     // slack for exact algebraic identities
inline constexpr double kIoRotation = 1e-6;     // SO(3) gate when parsing text files
}  // namespace tol

/// Failure inside a numerical routine (non-finite data, eigensolver breakdown).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file. line() is 1-based; 0 means no specific line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace rotavg
