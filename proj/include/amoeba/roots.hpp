#pragma once

#include <vector>

#include "amoeba/laurent.hpp"

namespace amoeba {

/// Root of a univariate polynomial in log-polar form.
struct LogRoot {
  double log_abs;
  double arg;
};

/// Coefficient c_k of w^k given as exp(log_scale) * reduced, so that
/// polynomials with coefficients far outside double range can be solved.
using ScaledCoefficients = std::vector<FactoredValue>;

/// Nonzero roots of sum_k c_k w^k by companion-matrix eigenvalues. The
/// variable is rescaled by (|c_0| / |c_d|)^{1/d} before solving. Leading and
/// trailing zero coefficients are stripped (roots at 0 and infinity are not
/// reported). Throws ComputationError if the eigensolver does not converge.
std::vector<LogRoot> polynomial_roots(const ScaledCoefficients& coefficients);

}  // namespace amoeba
