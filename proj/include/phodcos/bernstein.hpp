#pragma once

#include <cassert>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "phodcos/quaternion.hpp"

namespace phodcos {

namespace detail {

template <typename C, typename = void>
struct ScalarOf {
  using type = C;
};

template <typename C>
struct ScalarOf<C, std::void_t<typename C::Scalar>> {
  using type = typename C::Scalar;
};

template <typename Scalar>
struct ScalarOf<Quaternion<Scalar>, void> {
  using type = Scalar;
};

}  // namespace detail

template <typename C>
using ScalarOf = typename detail::ScalarOf<C>::type;

/// Polynomial sum_i ctrl[i] B_i^n(xi) on [0, 1] with coefficients of type C
/// (a real, an Eigen vector or a Quaternion).
template <typename C>
class BernsteinPoly {
 public:
  using Scalar = ScalarOf<C>;

  BernsteinPoly() = default;
  explicit BernsteinPoly(std::vector<C> ctrl) : ctrl_(std::move(ctrl)) {
    assert(!ctrl_.empty());
  }

  int degree() const { return static_cast<int>(ctrl_.size()) - 1; }
  const std::vector<C>& ctrl() const { return ctrl_; }
  const C& operator[](std::size_t i) const { return ctrl_[i]; }

  /// de Casteljau evaluation.
  C operator()(Scalar xi) const { return eval(xi); }

  C eval(Scalar xi) const {
    const Scalar s = Scalar(1) - xi;
    std::vector<C> work(ctrl_);
    for (std::size_t level = work.size() - 1; level > 0; --level) {
      for (std::size_t i = 0; i < level; ++i) {
        work[i] = s * work[i] + xi * work[i + 1];
      }
    }
    return work.front();
  }

  /// Degree n-1 polynomial with ctrl'_i = n (ctrl_{i+1} - ctrl_i). A constant
  /// differentiates to the zero constant rather than failing.
  BernsteinPoly derivative() const {
    const int n = degree();
    if (n == 0) {
      return BernsteinPoly({ctrl_.front() * Scalar(0)});
    }
    std::vector<C> d;
    d.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      d.push_back(Scalar(n) * (ctrl_[i + 1] - ctrl_[i]));
    }
    return BernsteinPoly(std::move(d));
  }

  BernsteinPoly derivative(int order) const {
    BernsteinPoly out = *this;
    for (int k = 0; k < order; ++k) out = out.derivative();
    return out;
  }

  /// Degree n+1 antiderivative F with F(0) = start.
  BernsteinPoly antiderivative(const C& start) const {
    const Scalar inv = Scalar(1) / Scalar(degree() + 1);
    std::vector<C> a;
    a.reserve(ctrl_.size() + 1);
    a.push_back(start);
    for (const C& c : ctrl_) {
      a.push_back(a.back() + inv * c);
    }
    return BernsteinPoly(std::move(a));
  }

  /// Exact definite integral over [xi_b, xi_e].
  C integral(Scalar xi_b, Scalar xi_e) const {
    const BernsteinPoly anti = antiderivative(ctrl_.front() * Scalar(0));
    return anti.eval(xi_e) - anti.eval(xi_b);
  }

 private:
  std::vector<C> ctrl_;
};

template <typename C>
C eval(const BernsteinPoly<C>& p, ScalarOf<C> xi) {
  return p.eval(xi);
}

template <typename C>
BernsteinPoly<C> derivative(const BernsteinPoly<C>& p) {
  return p.derivative();
}

template <typename C>
C integral(const BernsteinPoly<C>& p, ScalarOf<C> xi_b, ScalarOf<C> xi_e) {
  return p.integral(xi_b, xi_e);
}

/// Binomial coefficient as a floating-point value; exact for n <= 60.
template <typename Scalar>
constexpr Scalar binomial(int n, int k) {
  if (k < 0 || k > n) return Scalar(0);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return Scalar(static_cast<long long>(r + 0.5));
}

}  // namespace phodcos
