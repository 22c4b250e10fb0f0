#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "rnstab/errors.hpp"

namespace rnstab {

/// Point of the finite-dimensional carrier R^d.
class Vector {
 public:
  Vector() = default;

  explicit Vector(std::size_t dim) : coords_(dim, 0.0) {
    if (dim == 0) throw UsageError("Vector: dimension must be >= 1");
  }

  Vector(std::initializer_list<double> xs) : Vector(std::vector<double>(xs)) {}

  explicit Vector(std::vector<double> xs) : coords_(std::move(xs)) {
    if (coords_.empty()) throw UsageError("Vector: dimension must be >= 1");
    for (double v : coords_) {
      if (!std::isfinite(v)) throw DomainError("Vector: coordinates must be finite");
    }
  }

  static Vector unit(std::size_t dim, std::size_t axis) {
    Vector v(dim);
    v.coords_.at(axis) = 1.0;
    return v;
  }

  std::size_t dim() const noexcept { return coords_.size(); }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }

  bool is_zero() const noexcept {
    for (double v : coords_) {
      if (v != 0.0) return false;
    }
    return true;
  }

  Vector& operator+=(const Vector& o) {
    check_same(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }

  Vector& operator-=(const Vector& o) {
    check_same(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }

  Vector& operator*=(double s) {
    for (double& v : coords_) v *= s;
    return *this;
  }

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(double s, Vector a) { return a *= s; }
  friend Vector operator*(Vector a, double s) { return a *= s; }
  friend Vector operator-(Vector a) { return a *= -1.0; }

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  void check_same(const Vector& o) const {
    if (o.coords_.size() != coords_.size()) throw UsageError("Vector: dimension mismatch");
  }

  std::vector<double> coords_;
};

enum class NormKind { Euclidean, Max };

inline double norm(const Vector& x, NormKind kind = NormKind::Euclidean) {
  double acc = 0.0;
  if (kind == NormKind::Max) {
    for (double v : x.coords()) acc = std::max(acc, std::abs(v));
    return acc;
  }
  for (double v : x.coords()) acc += v * v;
  return std::sqrt(acc);
}

}  // namespace rnstab
