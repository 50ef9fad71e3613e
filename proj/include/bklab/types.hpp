#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace bklab {

using Complex = std::complex<double>;
using Point = Eigen::VectorXcd;   // z = (z^1,...,z^n) in model coordinates
using RVec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Thrown when an operation is called outside its stated preconditions.
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a matrix factorization is too ill-conditioned to trust.
class conditioning_error : public std::runtime_error {
 public:
  explicit conditioning_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bklab
