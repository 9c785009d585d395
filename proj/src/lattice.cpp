#include "amoeba/lattice.hpp"

#include <numeric>

namespace amoeba {

namespace {

void require_same_dim(const LatticePoint& a, const LatticePoint& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("lattice points of different dimension");
}

}  // namespace

LatticePoint operator+(const LatticePoint& a, const LatticePoint& b) {
  require_same_dim(a, b);
  std::vector<std::int64_t> c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) c[i] = checked::add(a[i], b[i]);
  return LatticePoint(std::move(c));
}

LatticePoint operator-(const LatticePoint& a, const LatticePoint& b) {
  require_same_dim(a, b);
  std::vector<std::int64_t> c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) c[i] = checked::sub(a[i], b[i]);
  return LatticePoint(std::move(c));
}

std::int64_t dot(const LatticePoint& a, const LatticePoint& b) {
  require_same_dim(a, b);
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s = checked::add(s, checked::mul(a[i], b[i]));
  return s;
}

LatticePoint primitive(const LatticePoint& v) {
  std::int64_t g = 0;
  for (auto c : v.coords()) g = std::gcd(g, c);
  if (g == 0) return v;
  std::vector<std::int64_t> out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = v[i] / g;
  return LatticePoint(std::move(out));
}

std::string to_string(const LatticePoint& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) s += ',';
    s += std::to_string(p[i]);
  }
  return s + ")";
}

}  // namespace amoeba
