#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "phodcos/bernstein.hpp"
#include "phodcos/coefficients.hpp"
#include "phodcos/errors.hpp"
#include "phodcos/quaternion.hpp"

namespace phodcos {

inline constexpr int kPreimageDegree = 8;
inline constexpr int kHodographDegree = 16;
inline constexpr int kPathDegree = 17;

template <typename Scalar>
using Preimage = std::array<Quaternion<Scalar>, kPreimageDegree + 1>;

template <typename Scalar>
using HodographPoints = std::array<Vector3<Scalar>, kHodographDegree + 1>;

template <typename Scalar>
using PathPoints = std::array<Vector3<Scalar>, kPathDegree + 1>;

/// Adapted (Euler-Rodrigues) frame with its angular velocity and the
/// parametric speed. omega is per unit of the curve parameter.
template <typename Scalar>
struct FrameSample {
  Matrix3<Scalar> R;
  Vector3<Scalar> omega;
  Scalar sigma;
};

template <typename Scalar>
struct Geometry {
  Scalar arc_length;
  Scalar curvature;
  Scalar torsion;
  /// False when p' x p'' vanishes; torsion is then reported as 0.
  bool torsion_defined;
};

/// Hodograph control points h_0..h_16 from the preimage via the star-product
/// expansion.
template <typename Scalar>
HodographPoints<Scalar> hodograph_from_preimage(const Preimage<Scalar>& a) {
  HodographPoints<Scalar> h;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const auto& row = coefficients::kHodograph[k];
    Vector3<Scalar> acc = Vector3<Scalar>::Zero();
    for (int t = 0; t < row.count; ++t) {
      const auto& term = row.terms[static_cast<std::size_t>(t)];
      const Vector3<Scalar> prod =
          term.i == term.j ? star_sq(a[term.i]) : star(a[term.i], a[term.j]);
      acc += Scalar(term.num) * prod;
    }
    h[k] = acc / Scalar(row.den);
  }
  return h;
}

/// p_i = p_0 + (1/17) sum_{j<i} h_j.
template <typename Scalar>
PathPoints<Scalar> path_from_hodograph(const HodographPoints<Scalar>& h,
                                       const Vector3<Scalar>& p0) {
  PathPoints<Scalar> p;
  p[0] = p0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    p[i + 1] = p[i] + h[i] / Scalar(kPathDegree);
  }
  return p;
}

/// sigma_k = sum_{i+j=k} C(8,i) C(8,j) / C(16,k) <A_i, A_j>, so that
/// sigma(xi) = |A(xi)|^2.
template <typename Scalar>
std::array<Scalar, kHodographDegree + 1> speed_from_preimage(const Preimage<Scalar>& a) {
  std::array<Scalar, kHodographDegree + 1> s{};
  for (int k = 0; k <= kHodographDegree; ++k) {
    Scalar acc(0);
    for (int i = std::max(0, k - kPreimageDegree); i <= std::min(kPreimageDegree, k); ++i) {
      const int j = k - i;
      acc += binomial<Scalar>(kPreimageDegree, i) * binomial<Scalar>(kPreimageDegree, j) *
             a[i].dot(a[j]);
    }
    s[static_cast<std::size_t>(k)] = acc / binomial<Scalar>(kHodographDegree, k);
  }
  return s;
}

/// Degree-17 spatial PH curve over the local parameter xi in [0, 1],
/// generated by a degree-8 quaternion preimage and a start point. Immutable;
/// all polynomial caches are built at construction.
template <typename Scalar>
class PHSegment {
 public:
  using Vec = Vector3<Scalar>;
  using Quat = Quaternion<Scalar>;

  PHSegment() : PHSegment(unit_preimage(), Vec::Zero()) {}

  PHSegment(const Preimage<Scalar>& preimage, const Vec& p0)
      : preimage_ctrl_(preimage), p0_(p0) {
    hodograph_ctrl_ = hodograph_from_preimage(preimage_ctrl_);
    const PathPoints<Scalar> path = path_from_hodograph(hodograph_ctrl_, p0_);
    const auto speed = speed_from_preimage(preimage_ctrl_);

    preimage_ = BernsteinPoly<Quat>({preimage_ctrl_.begin(), preimage_ctrl_.end()});
    preimage_d_ = preimage_.derivative();
    hodograph_ = BernsteinPoly<Vec>({hodograph_ctrl_.begin(), hodograph_ctrl_.end()});
    hodograph_d_ = hodograph_.derivative();
    hodograph_dd_ = hodograph_d_.derivative();
    path_ = BernsteinPoly<Vec>({path.begin(), path.end()});
    sigma_ = BernsteinPoly<Scalar>({speed.begin(), speed.end()});
    arc_length_ = sigma_.antiderivative(Scalar(0));
  }

  const Preimage<Scalar>& preimage_points() const { return preimage_ctrl_; }
  const HodographPoints<Scalar>& hodograph_points() const { return hodograph_ctrl_; }
  const Vec& start() const { return p0_; }

  const BernsteinPoly<Quat>& preimage() const { return preimage_; }
  const BernsteinPoly<Quat>& preimage_derivative() const { return preimage_d_; }
  const BernsteinPoly<Vec>& hodograph() const { return hodograph_; }
  const BernsteinPoly<Vec>& path() const { return path_; }
  const BernsteinPoly<Scalar>& sigma() const { return sigma_; }

  Vec position(Scalar xi) const { return path_.eval(xi); }

  /// k-th derivative of the path, k = 0..4.
  Vec derivative(Scalar xi, int order) const {
    switch (order) {
      case 0: return path_.eval(xi);
      case 1: return hodograph_.eval(xi);
      case 2: return hodograph_d_.eval(xi);
      case 3: return hodograph_dd_.eval(xi);
      default: return hodograph_.derivative(order - 1).eval(xi);
    }
  }

  Scalar speed(Scalar xi) const { return sigma_.eval(xi); }

  /// Closed-form arc length over [0, xi].
  Scalar arc_length(Scalar xi) const { return arc_length_.eval(xi); }
  Scalar total_length() const { return arc_length_.ctrl().back(); }

  /// Euler-Rodrigues frame [A i A*, A j A*, A k A*] / |A|^2 and its angular
  /// velocity, with frame derivatives taken analytically from A and A'.
  FrameSample<Scalar> frame(Scalar xi) const {
    const Quat a = preimage_.eval(xi);
    const Quat da = preimage_d_.eval(xi);
    const Scalar n2 = a.squaredNorm();
    if (!(std::sqrt(n2) > kDegeneracyTol<Scalar>)) {
      throw VanishingPreimage("preimage vanishes: the curve has a cusp");
    }
    const Scalar dn2 = Scalar(2) * a.dot(da);
    const std::array<Quat, 3> basis{Quat::i(), Quat::j(), Quat::k()};
    std::array<Vec, 3> e;
    std::array<Vec, 3> de;
    for (std::size_t c = 0; c < 3; ++c) {
      const Vec u = (a * basis[c] * a.conj()).vec();
      const Vec du = (da * basis[c] * a.conj() + a * basis[c] * da.conj()).vec();
      e[c] = u / n2;
      de[c] = du / n2 - u * (dn2 / (n2 * n2));
    }
    FrameSample<Scalar> out;
    out.R.col(0) = e[0];
    out.R.col(1) = e[1];
    out.R.col(2) = e[2];
    const Scalar chi1 = de[1].dot(e[2]);
    const Scalar chi2 = de[2].dot(e[0]);
    const Scalar chi3 = de[0].dot(e[1]);
    out.omega = chi1 * e[0] + chi2 * e[1] + chi3 * e[2];
    out.sigma = n2;
    return out;
  }

  /// Arc length from 0, curvature and torsion at xi.
  Geometry<Scalar> geometry(Scalar xi) const {
    const Vec d1 = hodograph_.eval(xi);
    const Vec d2 = hodograph_d_.eval(xi);
    const Vec d3 = hodograph_dd_.eval(xi);
    const Scalar s = sigma_.eval(xi);
    if (!(s > kDegeneracyTol<Scalar>)) {
      throw SingularSpeed("parametric speed vanishes");
    }
    const Vec c = d1.cross(d2);
    const Scalar c2 = c.squaredNorm();
    Geometry<Scalar> g;
    g.arc_length = arc_length_.eval(xi);
    g.curvature = std::sqrt(c2) / (s * s * s);
    g.torsion_defined = std::sqrt(c2) > kDegeneracyTol<Scalar>;
    g.torsion = g.torsion_defined ? c.dot(d3) / c2 : Scalar(0);
    return g;
  }

  /// World rotation q (unit): the hodograph becomes q h q*, realized as
  /// A_i -> q A_i; the start point is rotated too.
  PHSegment rotated(const Quat& q) const {
    Preimage<Scalar> a = preimage_ctrl_;
    for (auto& ai : a) ai = q * ai;
    return PHSegment(a, rotate(q, p0_));
  }

  PHSegment translated(const Vec& t) const { return PHSegment(preimage_ctrl_, p0_ + t); }

  /// A_i -> A_i Q(phi): same curve, frame rolled by 2 phi about the tangent.
  PHSegment fiber_rotated(Scalar phi) const {
    const Quat q = rot_i(phi);
    Preimage<Scalar> a = preimage_ctrl_;
    for (auto& ai : a) ai = ai * q;
    return PHSegment(a, p0_);
  }

  PHSegment negated() const {
    Preimage<Scalar> a = preimage_ctrl_;
    for (auto& ai : a) ai = -ai;
    return PHSegment(a, p0_);
  }

 private:
  static Preimage<Scalar> unit_preimage() {
    Preimage<Scalar> a;
    a.fill(Quat::identity());
    return a;
  }

  Preimage<Scalar> preimage_ctrl_;
  Vec p0_;
  HodographPoints<Scalar> hodograph_ctrl_;

  BernsteinPoly<Quat> preimage_;
  BernsteinPoly<Quat> preimage_d_;
  BernsteinPoly<Vec> hodograph_;
  BernsteinPoly<Vec> hodograph_d_;
  BernsteinPoly<Vec> hodograph_dd_;
  BernsteinPoly<Vec> path_;
  BernsteinPoly<Scalar> sigma_;
  BernsteinPoly<Scalar> arc_length_;
};

template <typename Scalar>
FrameSample<Scalar> erf(const PHSegment<Scalar>& seg, Scalar xi) {
  return seg.frame(xi);
}

template <typename Scalar>
Geometry<Scalar> geometry(const PHSegment<Scalar>& seg, Scalar xi) {
  return seg.geometry(xi);
}

}  // namespace phodcos
