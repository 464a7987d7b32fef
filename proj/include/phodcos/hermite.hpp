#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "phodcos/coefficients.hpp"
#include "phodcos/errors.hpp"
#include "phodcos/ph_segment.hpp"
#include "phodcos/quaternion.hpp"

namespace phodcos {

/// End points and derivatives 1..4 at both ends of a segment, with respect to
/// the local parameter xi in [0, 1] (an order-k derivative of a curve sampled
/// over a width-h interval carries the factor h^k).
template <typename Scalar>
struct HermiteC4Data {
  using Vec = Vector3<Scalar>;

  Vec p_b = Vec::Zero(), p_e = Vec::Zero();
  Vec v_b = Vec::Zero(), v_e = Vec::Zero();
  Vec a_b = Vec::Zero(), a_e = Vec::Zero();
  Vec j_b = Vec::Zero(), j_e = Vec::Zero();
  Vec s_b = Vec::Zero(), s_e = Vec::Zero();

  /// Start-side value of derivative order 0..4.
  const Vec& begin(int order) const {
    switch (order) {
      case 0: return p_b;
      case 1: return v_b;
      case 2: return a_b;
      case 3: return j_b;
      default: return s_b;
    }
  }

  const Vec& end(int order) const {
    switch (order) {
      case 0: return p_e;
      case 1: return v_e;
      case 2: return a_e;
      case 3: return j_e;
      default: return s_e;
    }
  }

  Vec& begin(int order) { return const_cast<Vec&>(std::as_const(*this).begin(order)); }
  Vec& end(int order) { return const_cast<Vec&>(std::as_const(*this).end(order)); }

  bool finite() const {
    for (int k = 0; k <= 4; ++k) {
      if (!begin(k).allFinite() || !end(k).allFinite()) return false;
    }
    return true;
  }

  /// Largest norm among the derivative vectors and the chord p_e - p_b.
  Scalar scale() const {
    Scalar s = (p_e - p_b).norm();
    for (int k = 1; k <= 4; ++k) s = std::max({s, begin(k).norm(), end(k).norm()});
    return s;
  }

  /// Data of the same curve traversed backwards, xi -> 1 - xi: the ends swap
  /// and odd derivatives change sign.
  HermiteC4Data reversed() const {
    HermiteC4Data r;
    for (int k = 0; k <= 4; ++k) {
      const Scalar sign = (k % 2 == 0) ? Scalar(1) : Scalar(-1);
      r.begin(k) = sign * end(k);
      r.end(k) = sign * begin(k);
    }
    return r;
  }
};

/// x -> rotation x rotation* + translation.
template <typename Scalar>
struct RigidTransform {
  Quaternion<Scalar> rotation = Quaternion<Scalar>::identity();
  Vector3<Scalar> translation = Vector3<Scalar>::Zero();

  Vector3<Scalar> apply(const Vector3<Scalar>& x) const {
    return rotate(rotation, x) + translation;
  }
  Vector3<Scalar> apply_vector(const Vector3<Scalar>& v) const { return rotate(rotation, v); }

  RigidTransform inverse() const {
    const Quaternion<Scalar> inv = rotation.conj();
    return {inv, -rotate(inv, translation)};
  }

  HermiteC4Data<Scalar> apply(const HermiteC4Data<Scalar>& d) const {
    HermiteC4Data<Scalar> out;
    out.p_b = apply(d.p_b);
    out.p_e = apply(d.p_e);
    for (int k = 1; k <= 4; ++k) {
      out.begin(k) = apply_vector(d.begin(k));
      out.end(k) = apply_vector(d.end(k));
    }
    return out;
  }

  PHSegment<Scalar> apply(const PHSegment<Scalar>& seg) const {
    return seg.rotated(rotation).translated(translation);
  }
};

/// Free parameters of the interpolant family. All zero is the optimal
/// interpolant. Adding the same angle to theta0, theta4 and theta8 moves along
/// the preimage fiber (A_i -> A_i Q) and leaves the curve unchanged; changing
/// one of them alone does not.
template <typename Scalar>
struct InterpolantParams {
  Scalar theta0 = 0, tau1 = 0, tau2 = 0, tau3 = 0;
  Scalar tau5 = 0, tau6 = 0, tau7 = 0, theta8 = 0;
  Scalar theta4 = 0;
};

/// Shortest-arc unit quaternion taking the unit vector u onto +x; a half turn
/// about +y when u is (anti)parallel to -x within the degeneracy tolerance.
template <typename Scalar>
Quaternion<Scalar> align_to_x(const Vector3<Scalar>& u) {
  const Vector3<Scalar> x = Vector3<Scalar>::UnitX();
  const Vector3<Scalar> half = u + x;
  const Scalar half_len = half.norm();
  if (!(half_len > kDegeneracyTol<Scalar>)) {
    return Quaternion<Scalar>::j();
  }
  const Vector3<Scalar> m = half / half_len;
  return Quaternion<Scalar>(u.dot(m), u.cross(m)).normalized();
}

/// Standard form: p_b = 0 and v_b + v_e a positive multiple of i. The returned
/// transform maps standard-form geometry back to the original pose.
template <typename Scalar>
std::pair<HermiteC4Data<Scalar>, RigidTransform<Scalar>> to_standard_form(
    const HermiteC4Data<Scalar>& d) {
  const Vector3<Scalar> vsum = d.v_b + d.v_e;
  const Scalar len = vsum.norm();
  if (!(len > kDegeneracyTol<Scalar>)) {
    throw DegenerateVelocitySum("v_b + v_e vanishes; the segment must be re-split");
  }
  const Quaternion<Scalar> q = align_to_x<Scalar>(vsum / len);
  const RigidTransform<Scalar> forward{q, -rotate(q, d.p_b)};
  HermiteC4Data<Scalar> sf = forward.apply(d);
  sf.p_b.setZero();
  return {sf, forward.inverse()};
}

template <typename Scalar>
struct BoundaryHodograph {
  Vector3<Scalar> h0, h1, h2, h3;
  Vector3<Scalar> h13, h14, h15, h16;
};

/// The four outermost hodograph control points at each end, from the
/// derivative data (inverse of the Bernstein end-derivative relations).
template <typename Scalar>
BoundaryHodograph<Scalar> boundary_hodograph_points(const HermiteC4Data<Scalar>& d) {
  BoundaryHodograph<Scalar> b;
  b.h0 = d.v_b;
  b.h1 = b.h0 + d.a_b / Scalar(16);
  b.h2 = d.j_b / Scalar(240) - b.h0 + Scalar(2) * b.h1;
  b.h3 = (d.s_b + Scalar(3360) * b.h0 - Scalar(10080) * b.h1 + Scalar(10080) * b.h2) /
         Scalar(3360);
  b.h16 = d.v_e;
  b.h15 = b.h16 - d.a_e / Scalar(16);
  b.h14 = d.j_e / Scalar(240) - b.h16 + Scalar(2) * b.h15;
  b.h13 = (Scalar(10080) * b.h14 - Scalar(10080) * b.h15 + Scalar(3360) * b.h16 - d.s_e) /
          Scalar(3360);
  return b;
}

/// c_p: the part of (490/21879)(p_e - p_b) - A_p^2* that does not involve A_4.
template <typename Scalar>
Vector3<Scalar> middle_offset(const Preimage<Scalar>& a) {
  Vector3<Scalar> acc = Vector3<Scalar>::Zero();
  for (const auto& t : coefficients::kCp) {
    const Vector3<Scalar> prod = t.i == t.j ? star_sq(a[t.i]) : star(a[t.i], a[t.j]);
    acc += Scalar(t.num) * prod;
  }
  return acc / Scalar(coefficients::kCpDen);
}

namespace detail {

template <typename Scalar>
Scalar ap_weight(int i) {
  const auto& w = coefficients::kApWeights[static_cast<std::size_t>(i)];
  return Scalar(w.num) / Scalar(w.den);
}

template <typename Scalar>
void check_interpolation(const PHSegment<Scalar>& seg, const HermiteC4Data<Scalar>& d) {
  const Scalar tol = Scalar(1e-9) * std::max(d.scale(), std::numeric_limits<Scalar>::min());
  for (int k = 0; k <= 4; ++k) {
    const Scalar eb = (seg.derivative(Scalar(0), k) - d.begin(k)).norm();
    const Scalar ee = (seg.derivative(Scalar(1), k) - d.end(k)).norm();
    if (!(eb <= tol && ee <= tol)) {
      std::ostringstream os;
      os << "interpolant misses boundary data of order " << k << " (errors " << eb << ", "
         << ee << ", tolerance " << tol << ")";
      throw InterpolationResidual(os.str());
    }
  }
}

}  // namespace detail

/// Degree-17 PH curve interpolating C4 Hermite data.
///
/// The data is moved to standard form, the boundary hodograph points fix
/// A_0..A_3 and A_5..A_8 through the star-linear and star-quadratic solvers,
/// the end-point constraint fixes A_4, and the result is moved back to the
/// original pose. Throws DegenerateVelocitySum / DegenerateHodographDirection
/// when the data cannot be put into a solvable standard form, and
/// InterpolationResidual when the boundary data is not reproduced to 1e-9
/// relative to the data scale.
template <typename Scalar>
PHSegment<Scalar> c4_interpolate(const HermiteC4Data<Scalar>& d,
                                 const InterpolantParams<Scalar>& params = {}) {
  const auto [sf, back] = to_standard_form(d);
  const BoundaryHodograph<Scalar> b = boundary_hodograph_points(sf);

  Preimage<Scalar> a;
  a[0] = solve_quadratic_star(b.h0, params.theta0);
  a[8] = solve_quadratic_star(b.h16, params.theta8);

  a[1] = solve_linear_star(a[0], b.h1, params.tau1);
  a[7] = solve_linear_star(a[8], b.h15, params.tau7);

  a[2] = solve_linear_star(a[0], Vector3<Scalar>((Scalar(15) * b.h2 - Scalar(8) * star_sq(a[1])) / Scalar(7)),
                           params.tau2);
  a[6] = solve_linear_star(a[8], Vector3<Scalar>((Scalar(15) * b.h14 - Scalar(8) * star_sq(a[7])) / Scalar(7)),
                           params.tau6);

  a[3] = solve_linear_star(a[0], Vector3<Scalar>(Scalar(5) * b.h3 - Scalar(4) * star(a[1], a[2])),
                           params.tau3);
  a[5] = solve_linear_star(a[8], Vector3<Scalar>(Scalar(5) * b.h13 - Scalar(4) * star(a[6], a[7])),
                           params.tau5);

  a[4] = Quaternion<Scalar>();
  const Scalar w4 = detail::ap_weight<Scalar>(4);
  const Vector3<Scalar> rhs = w4 * sf.p_e - middle_offset(a);
  Quaternion<Scalar> ap = solve_quadratic_star(rhs, params.theta4);
  for (int i = 0; i <= kPreimageDegree; ++i) {
    if (i != 4) ap -= detail::ap_weight<Scalar>(i) * a[static_cast<std::size_t>(i)];
  }
  a[4] = ap / w4;

  const PHSegment<Scalar> seg = back.apply(PHSegment<Scalar>(a, Vector3<Scalar>::Zero()));
  detail::check_interpolation(seg, d);
  return seg;
}

}  // namespace phodcos
