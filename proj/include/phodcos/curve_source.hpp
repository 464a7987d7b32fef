#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace phodcos {

/// A C4 curve gamma(xi) on [xi0, xif] that can report its derivatives up to
/// order 4. Implementations are immutable and safe for concurrent reads.
class CurveSource {
 public:
  virtual ~CurveSource() = default;

  virtual double xi0() const = 0;
  virtual double xif() const = 0;
  /// Derivative of the given order (0..4) at xi.
  virtual Eigen::Vector3d evaluate(double xi, int order) const = 0;
  virtual std::string description() const = 0;

  /// Interior parameters where the curve is only C4 (knots of a spline).
  /// The derivative check keeps its stencils between them.
  virtual std::vector<double> breakpoints() const { return {}; }

  Eigen::Vector3d operator()(double xi) const { return evaluate(xi, 0); }
  double width() const { return xif() - xi0(); }
};

using CurveSourcePtr = std::shared_ptr<const CurveSource>;

/// Curve given by a closed-form callable returning derivatives 0..4.
class AnalyticCurve final : public CurveSource {
 public:
  using Fn = std::function<Eigen::Vector3d(double, int)>;

  AnalyticCurve(std::string name, double xi0, double xif, Fn fn)
      : name_(std::move(name)), xi0_(xi0), xif_(xif), fn_(std::move(fn)) {}

  double xi0() const override { return xi0_; }
  double xif() const override { return xif_; }
  Eigen::Vector3d evaluate(double xi, int order) const override { return fn_(xi, order); }
  std::string description() const override { return name_; }

 private:
  std::string name_;
  double xi0_;
  double xif_;
  Fn fn_;
};

/// Curve known only through positions; derivatives come from 8th-order finite
/// differences with step max(1e-4, 1e-3 * width) for orders 1-2 and five times
/// that for orders 3-4, where roundoff dominates a smaller step. Stencils are
/// centered in the interior and shifted to stay inside the domain near its ends.
class FiniteDifferenceCurve final : public CurveSource {
 public:
  using Fn = std::function<Eigen::Vector3d(double)>;

  FiniteDifferenceCurve(std::string name, double xi0, double xif, Fn position);

  double xi0() const override { return xi0_; }
  double xif() const override { return xif_; }
  Eigen::Vector3d evaluate(double xi, int order) const override;
  std::string description() const override { return name_; }

  double step() const { return step_; }

 private:
  std::string name_;
  double xi0_;
  double xif_;
  double step_;
  Fn position_;
};

/// Finite-difference weights for the derivative of the given order at 0 from
/// samples at the given offsets (Fornberg's recursion).
std::vector<double> fd_weights(const std::vector<double>& offsets, int order);

/// lambda(xi) = (1.5 sin 7.2xi, cos 9xi, exp(cos 1.8xi)) on [0, 1].
CurveSourcePtr exemplary_curve();
/// The same curve with the y component set to 0.
CurveSourcePtr exemplary_planar_curve();
/// gamma(xi) = (1, 0, 0) + xi (1, 2, -1) on [0, 1].
CurveSourcePtr line_curve();
/// Two-turn circular helix of radius 1 and rise 0.5 on [0, 1].
CurveSourcePtr helix_curve();

/// Names accepted by builtin_curve().
std::vector<std::string> builtin_curve_names();
/// Throws std::invalid_argument for unknown names.
CurveSourcePtr builtin_curve(const std::string& name);

struct DerivativeCheck {
  bool ok = true;
  double worst_relative = 0.0;
  int worst_order = 0;
  double worst_xi = 0.0;
};

/// Compares each derivative of order 1..4 with an 8th-order central finite
/// difference of the order below it, at `samples` interior points. Errors are
/// relative to the largest magnitude of that derivative over the samples.
/// With breakpoints, the points are span midpoints and the stencil stays
/// inside its span.
DerivativeCheck validate_derivatives(const CurveSource& src, int samples = 16,
                                     double tol = 1e-5);

}  // namespace phodcos
