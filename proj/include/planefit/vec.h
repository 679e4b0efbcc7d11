// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PLANEFIT_VEC_H_
#define PLANEFIT_VEC_H_

#include <array>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace planefit {

// Base exception for every error raised by the library and the CLI.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A point or direction in 2 or 3 dimensions. The dimension is part of the
// value; mixing dimensions in arithmetic is a programming error.
class Vec {
 public:
  static constexpr int kMaxDim = 3;

  Vec() = default;
  Vec(double x, double y) : c_{x, y, 0.0}, dim_(2) {}
  Vec(double x, double y, double z) : c_{x, y, z}, dim_(3) {}

  static Vec Zero(int dim) {
    Vec v;
    v.dim_ = dim;
    return v;
  }
  // Unit vector along `axis`.
  static Vec Axis(int dim, int axis) {
    Vec v = Zero(dim);
    v.c_[axis] = 1.0;
    return v;
  }

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[i]; }
  double& operator[](int i) { return c_[i]; }

  double Dot(const Vec& o) const {
    assert(dim_ == o.dim_);
    return c_[0] * o.c_[0] + c_[1] * o.c_[1] + c_[2] * o.c_[2];
  }
  double SquaredNorm() const { return Dot(*this); }
  double Norm() const { return std::sqrt(SquaredNorm()); }

  Vec& operator+=(const Vec& o) {
    assert(dim_ == o.dim_);
    for (int i = 0; i < kMaxDim; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    assert(dim_ == o.dim_);
    for (int i = 0; i < kMaxDim; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (double& x : c_) x *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator-(Vec a) { return a *= -1.0; }
  friend bool operator==(const Vec& a, const Vec& b) {
    return a.dim_ == b.dim_ && a.c_ == b.c_;
  }

 private:
  std::array<double, kMaxDim> c_{0.0, 0.0, 0.0};
  int dim_ = 3;
};

inline double SquaredDistance(const Vec& a, const Vec& b) {
  return (a - b).SquaredNorm();
}
inline double Distance(const Vec& a, const Vec& b) {
  return std::sqrt(SquaredDistance(a, b));
}

// A unit direction in canonical orientation: the last coordinate is
// non-negative, and when it is zero (|c| <= 1e-12) the first nonzero
// coordinate is positive. Antipodal directions therefore share one
// representation. Only constructible through Canonicalize().
class UnitNormal {
 public:
  // Canonical last-axis unit vector, e.g. (0, 0, 1).
  static UnitNormal Up(int dim);

  const Vec& vec() const { return dir_; }
  int dim() const { return dir_.dim(); }
  double operator[](int i) const { return dir_[i]; }

  friend bool operator==(const UnitNormal& a, const UnitNormal& b) {
    return a.dir_ == b.dir_;
  }

 private:
  friend UnitNormal Canonicalize(const Vec& raw);
  explicit UnitNormal(const Vec& v) : dir_(v) {}
  Vec dir_;
};

inline constexpr double kHorizonTolerance = 1e-12;

// Normalizes `raw` and flips it into canonical orientation. Throws Error on
// a zero (or non-finite) vector.
UnitNormal Canonicalize(const Vec& raw);

// Angle between two unit normals in degrees, in [0, 180].
double AngleDegrees(const UnitNormal& a, const UnitNormal& b);

// Angle between the unoriented lines spanned by a and b, in [0, 90]. Two
// canonical normals that straddle the horizon (e.g. (1, 0, 1e-3) and
// (-1, 0, 1e-3)) are 0.11 degrees apart here and ~180 degrees apart under
// AngleDegrees.
double AxialAngleDegrees(const UnitNormal& a, const UnitNormal& b);

// Squared distance between the unoriented directions a and b:
// min(|a - b|^2, |a + b|^2). For directions with positive dot product this is
// the plain squared Euclidean distance. Lies in [0, 2].
inline double AxialSquaredDistance(const Vec& a, const Vec& b) {
  double minus = 0.0, plus = 0.0;
  for (int i = 0; i < Vec::kMaxDim; ++i) {
    const double dm = a[i] - b[i];
    const double dp = a[i] + b[i];
    minus += dm * dm;
    plus += dp * dp;
  }
  return minus < plus ? minus : plus;
}
inline double AxialSquaredDistance(const UnitNormal& a, const UnitNormal& b) {
  return AxialSquaredDistance(a.vec(), b.vec());
}

// +1 when b points into a's hemisphere, -1 otherwise.
inline double AlignmentSign(const Vec& a, const Vec& b) {
  return a.Dot(b) >= 0.0 ? 1.0 : -1.0;
}

}  // namespace planefit

#endif  // PLANEFIT_VEC_H_
