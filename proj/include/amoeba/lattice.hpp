#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace amoeba {

/// Raised when a numerical budget is exceeded (root solver failures,
/// quadrature discards, ambiguous order rounding).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a point configuration spans a lower-dimensional affine hull.
class DegenerateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in subtraction");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
  return r;
}

}  // namespace checked

/// Integer exponent vector. Ordered lexicographically.
class LatticePoint {
 public:
  LatticePoint() = default;
  explicit LatticePoint(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
  LatticePoint(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

  std::size_t dim() const { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::int64_t& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<std::int64_t>& coords() const { return coords_; }

  Eigen::VectorXd cast() const {
    Eigen::VectorXd v(dim());
    for (std::size_t i = 0; i < dim(); ++i) v[i] = static_cast<double>(coords_[i]);
    return v;
  }

  template <typename Derived>
  double dot(const Eigen::MatrixBase<Derived>& x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) s += static_cast<double>(coords_[i]) * x[i];
    return s;
  }

  auto operator<=>(const LatticePoint&) const = default;
  bool operator==(const LatticePoint&) const = default;

 private:
  std::vector<std::int64_t> coords_;
};

LatticePoint operator+(const LatticePoint& a, const LatticePoint& b);
LatticePoint operator-(const LatticePoint& a, const LatticePoint& b);
std::int64_t dot(const LatticePoint& a, const LatticePoint& b);

/// Divides out the gcd of the entries; the zero vector is returned unchanged.
LatticePoint primitive(const LatticePoint& v);

/// "(a,b,...)"
std::string to_string(const LatticePoint& p);

}  // namespace amoeba
