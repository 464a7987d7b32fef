#pragma once

#include <cassert>
#include <cmath>
#include <limits>
#include <ostream>

#include <Eigen/Core>

#include "phodcos/errors.hpp"

namespace phodcos {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;

/// Absolute threshold used by every degeneracy test (star solvers, vanishing
/// preimage, standard form).
template <typename Scalar>
inline constexpr Scalar kDegeneracyTol = Scalar(1e-9);

/// Real quaternion w + x i + y j + z k. Coefficients are stored and
/// serialized in (w, x, y, z) order.
template <typename Scalar>
class Quaternion {
 public:
  using Coeffs = Eigen::Matrix<Scalar, 4, 1>;

  Quaternion() : c_(Coeffs::Zero()) {}
  Quaternion(Scalar w, Scalar x, Scalar y, Scalar z) : c_(w, x, y, z) {}
  explicit Quaternion(const Coeffs& c) : c_(c) {}
  Quaternion(Scalar w, const Vector3<Scalar>& v) : c_(w, v.x(), v.y(), v.z()) {}

  static Quaternion identity() { return {Scalar(1), Scalar(0), Scalar(0), Scalar(0)}; }
  static Quaternion i() { return {Scalar(0), Scalar(1), Scalar(0), Scalar(0)}; }
  static Quaternion j() { return {Scalar(0), Scalar(0), Scalar(1), Scalar(0)}; }
  static Quaternion k() { return {Scalar(0), Scalar(0), Scalar(0), Scalar(1)}; }
  /// Pure quaternion embedding of a 3-vector.
  static Quaternion pure(const Vector3<Scalar>& v) { return {Scalar(0), v}; }

  Scalar w() const { return c_[0]; }
  Scalar x() const { return c_[1]; }
  Scalar y() const { return c_[2]; }
  Scalar z() const { return c_[3]; }
  Vector3<Scalar> vec() const { return c_.template tail<3>(); }
  const Coeffs& coeffs() const { return c_; }
  Coeffs& coeffs() { return c_; }

  Quaternion conj() const { return {c_[0], -c_[1], -c_[2], -c_[3]}; }
  Scalar squaredNorm() const { return c_.squaredNorm(); }
  Scalar norm() const { return c_.norm(); }
  Quaternion normalized() const { return Quaternion(Coeffs(c_ / c_.norm())); }
  Scalar dot(const Quaternion& o) const { return c_.dot(o.c_); }

  template <typename NewScalar>
  Quaternion<NewScalar> cast() const {
    return Quaternion<NewScalar>(c_.template cast<NewScalar>());
  }

  Quaternion& operator+=(const Quaternion& o) { c_ += o.c_; return *this; }
  Quaternion& operator-=(const Quaternion& o) { c_ -= o.c_; return *this; }
  Quaternion& operator*=(Scalar s) { c_ *= s; return *this; }
  Quaternion& operator/=(Scalar s) { c_ /= s; return *this; }

  friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend Quaternion operator-(const Quaternion& a) { return Quaternion(Coeffs(-a.c_)); }
  friend Quaternion operator*(Quaternion a, Scalar s) { return a *= s; }
  friend Quaternion operator*(Scalar s, Quaternion a) { return a *= s; }
  friend Quaternion operator/(Quaternion a, Scalar s) { return a /= s; }

  /// Hamilton product (ij = k, jk = i, ki = j).
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w() * b.w() - a.x() * b.x() - a.y() * b.y() - a.z() * b.z(),
            a.w() * b.x() + a.x() * b.w() + a.y() * b.z() - a.z() * b.y(),
            a.w() * b.y() - a.x() * b.z() + a.y() * b.w() + a.z() * b.x(),
            a.w() * b.z() + a.x() * b.y() - a.y() * b.x() + a.z() * b.w()};
  }

  friend bool operator==(const Quaternion& a, const Quaternion& b) { return a.c_ == b.c_; }

  friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '(' << q.w() << ", " << q.x() << ", " << q.y() << ", " << q.z() << ')';
  }

 private:
  Coeffs c_;
};

using Quaterniond = Quaternion<double>;

template <typename Scalar>
Quaternion<Scalar> mul(const Quaternion<Scalar>& a, const Quaternion<Scalar>& b) {
  return a * b;
}

/// Q v Q* for a unit quaternion Q.
template <typename Scalar>
Vector3<Scalar> rotate(const Quaternion<Scalar>& q, const Vector3<Scalar>& v) {
  return (q * Quaternion<Scalar>::pure(v) * q.conj()).vec();
}

/// Commutative product A * B = (A i B* + B i A*) / 2, always a pure
/// quaternion; only the vector part is returned.
template <typename Scalar>
Vector3<Scalar> star(const Quaternion<Scalar>& a, const Quaternion<Scalar>& b) {
  const auto unit_i = Quaternion<Scalar>::i();
  const Quaternion<Scalar> ab = a * unit_i * b.conj();
  const Quaternion<Scalar> ba = b * unit_i * a.conj();
  assert(std::abs(ab.w() + ba.w()) <=
         Scalar(1e-12) * (a.norm() * b.norm()) + std::numeric_limits<Scalar>::min());
  return Scalar(0.5) * (ab.vec() + ba.vec());
}

/// A * A, i.e. the vector part of A i A*.
template <typename Scalar>
Vector3<Scalar> star_sq(const Quaternion<Scalar>& a) {
  return (a * Quaternion<Scalar>::i() * a.conj()).vec();
}

/// Q(phi) = cos(phi) + i sin(phi).
template <typename Scalar>
Quaternion<Scalar> rot_i(Scalar phi) {
  using std::cos;
  using std::sin;
  return {cos(phi), sin(phi), Scalar(0), Scalar(0)};
}

/// Member of the solution family of X * B = a:
/// X = -(tau + a) B i / |B|^2.
template <typename Scalar>
Quaternion<Scalar> solve_linear_star(const Quaternion<Scalar>& b, const Vector3<Scalar>& a,
                                     Scalar tau) {
  const Scalar b2 = b.squaredNorm();
  if (!(std::sqrt(b2) > kDegeneracyTol<Scalar>)) {
    throw DegenerateQuaternion("solve_linear_star: |B| is below the degeneracy tolerance");
  }
  return -(Quaternion<Scalar>(tau, a) * b * Quaternion<Scalar>::i()) / b2;
}

/// Member of the solution family of X * X = a:
/// X = sqrt|a| (a/|a| + i) / |a/|a| + i| Q(phi).
/// Throws DegenerateHodographDirection when a vanishes or points along -i.
template <typename Scalar>
Quaternion<Scalar> solve_quadratic_star(const Vector3<Scalar>& a, Scalar phi) {
  using std::sqrt;
  const Scalar len = a.norm();
  if (!(len > kDegeneracyTol<Scalar>)) {
    throw DegenerateHodographDirection("solve_quadratic_star: target vector vanishes");
  }
  Vector3<Scalar> dir = a / len;
  dir.x() += Scalar(1);
  const Scalar dir_len = dir.norm();
  if (!(dir_len > kDegeneracyTol<Scalar>)) {
    throw DegenerateHodographDirection(
        "solve_quadratic_star: target is a negative multiple of i");
  }
  return Quaternion<Scalar>::pure(dir * (sqrt(len) / dir_len)) * rot_i(phi);
}

}  // namespace phodcos
