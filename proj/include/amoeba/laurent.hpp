#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "amoeba/lattice.hpp"

namespace amoeba {

using Complex = std::complex<double>;

/// Syntax error in polynomial text; `position()` is a byte offset into the input.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Finite sum of complex-weighted monomials z^alpha with integer exponents.
/// Stored coefficients are nonzero and the term map is never empty.
class LaurentPolynomial {
 public:
  using TermMap = std::map<LatticePoint, Complex>;

  LaurentPolynomial(std::size_t dim, TermMap terms);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  std::vector<LatticePoint> support() const;
  Complex coefficient(const LatticePoint& alpha) const;
  bool is_monomial() const { return terms_.size() == 1; }

 private:
  std::size_t dim_;
  TermMap terms_;
};

/// Point of the complex torus written as z_j = exp(x_j + i theta_j).
struct TorusPoint {
  TorusPoint(Eigen::VectorXd log_radii, Eigen::VectorXd angles);
  std::size_t dim() const { return static_cast<std::size_t>(log_radii.size()); }

  Eigen::VectorXd log_radii;
  Eigen::VectorXd angles;  // reduced to [0, 2pi)
};

/// f(z) = exp(log_scale) * reduced, with log_scale the dominant term magnitude.
struct FactoredValue {
  double log_scale;
  Complex reduced;

  Complex value() const { return std::exp(log_scale) * reduced; }
  double log_abs() const { return log_scale + std::log(std::abs(reduced)); }
};

/// Weights nu(alpha) of a tropical degeneration f_t.
struct DegenerationWeights {
  std::map<LatticePoint, double> nu;
};

LaurentPolynomial parse_laurent(std::string_view text, std::size_t dim);

/// Canonical text form, terms in lexicographic exponent order. Parsing the
/// result reproduces the polynomial exactly.
std::string to_string(const LaurentPolynomial& f);

/// max over the support of log|a_alpha| + <alpha, x>.
template <typename Derived>
double dominant_log_magnitude(const LaurentPolynomial& f, const Eigen::MatrixBase<Derived>& x) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [alpha, a] : f.terms()) best = std::max(best, std::log(std::abs(a)) + alpha.dot(x));
  return best;
}

FactoredValue evaluate_factored(const LaurentPolynomial& f, const TorusPoint& p);
Complex evaluate(const LaurentPolynomial& f, const TorusPoint& p);

LaurentPolynomial multiply(const LaurentPolynomial& f, const LaurentPolynomial& g);

/// Coefficient at alpha becomes a_alpha * e^{nu(alpha)} * t^{nu(alpha)}.
LaurentPolynomial substitute_t(const LaurentPolynomial& f, const DegenerationWeights& weights, double t);

/// Accepts t in (0, 1/e], with 1/e itself up to rounding.
bool in_degeneration_range(double t);

}  // namespace amoeba
