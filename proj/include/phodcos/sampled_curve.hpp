#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "phodcos/curve_source.hpp"

namespace phodcos {

struct Sample {
  double xi;
  Eigen::Vector3d point;
};

/// Clamped quintic B-spline curve (C4 across simple knots).
class QuinticSpline {
 public:
  static constexpr int kDegree = 5;

  QuinticSpline() = default;
  QuinticSpline(std::vector<double> knots, Eigen::MatrixX3d coeffs);

  /// Least-squares fit with `basis_count` basis functions (6 <= basis_count <=
  /// samples.size()); interior knots sit at parameter quantiles of the samples.
  /// basis_count == samples.size() interpolates.
  static QuinticSpline fit(const std::vector<Sample>& samples, int basis_count);

  /// Derivative of order 0..5; xi is clamped into the knot range.
  Eigen::Vector3d evaluate(double xi, int order) const;

  const std::vector<double>& knots() const { return knots_; }
  const Eigen::MatrixX3d& coeffs() const { return coeffs_; }
  int basis_count() const { return static_cast<int>(coeffs_.rows()); }

 private:
  int find_span(double u) const;

  std::vector<double> knots_;
  Eigen::MatrixX3d coeffs_;
};

/// Curve source backed by a quintic spline fitted to samples. The spline is
/// refined (basis count doubled) until every sample lies within fit_tol, or
/// until it interpolates the samples.
class SampledCurve final : public CurveSource {
 public:
  SampledCurve(std::vector<Sample> samples, double fit_tol, std::string name = "samples");

  double xi0() const override { return samples_.front().xi; }
  double xif() const override { return samples_.back().xi; }
  Eigen::Vector3d evaluate(double xi, int order) const override {
    return spline_.evaluate(xi, order);
  }
  std::string description() const override { return name_; }
  std::vector<double> breakpoints() const override;

  const std::vector<Sample>& samples() const { return samples_; }
  const QuinticSpline& spline() const { return spline_; }
  double max_residual() const { return max_residual_; }
  double fit_tolerance() const { return fit_tol_; }

 private:
  std::vector<Sample> samples_;
  double fit_tol_;
  std::string name_;
  QuinticSpline spline_;
  double max_residual_ = 0.0;
};

/// Throws InsufficientSamples (< 8 samples) or NonMonotonicParameter.
std::shared_ptr<const SampledCurve> from_samples(std::vector<Sample> samples, double fit_tol,
                                                 std::string name = "samples");

/// Reads x,y,z or t,x,y,z rows (comma or whitespace separated, optional
/// header). Without a t column xi = row / (rows - 1); with one, t is mapped
/// affinely onto [0, 1]. ParseError carries the 1-based line number.
std::vector<Sample> load_orbit_csv(const std::filesystem::path& path);

}  // namespace phodcos
