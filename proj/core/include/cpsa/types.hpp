// SPDX-License-Identifier: Apache-2.0
//
// cpsa: link-level simulator and analyzer for cooperative pilot spoofing
// attacks on TDD MU-MIMO downlinks.

#ifndef CPSA_TYPES_HPP
#define CPSA_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cpsa {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Runtime numerical failure (non-convergence, repeated factorization
/// failure). CLI maps this family to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Gram matrix of the estimated channel lost positive definiteness; the
/// Monte Carlo engine resamples the trial and counts the event.
class SingularGramError : public NumericalError {
 public:
  explicit SingularGramError(const std::string& what) : NumericalError(what) {}
};

}  // namespace cpsa

#endif  // CPSA_TYPES_HPP
