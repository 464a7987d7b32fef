#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "phodcos/curve_source.hpp"
#include "phodcos/hermite.hpp"
#include "phodcos/ph_segment.hpp"

namespace phodcos {

using Segment = PHSegment<double>;

/// Piecewise PH curve over a uniformly split global parameter range. Global
/// queries return derivatives with respect to the global parameter.
class PHPath {
 public:
  PHPath(std::vector<Segment> segments, double xi0, double xif);

  const std::vector<Segment>& segments() const { return segments_; }
  std::size_t size() const { return segments_.size(); }
  double xi0() const { return xi0_; }
  double xif() const { return xif_; }
  /// Uniform segment width.
  double h() const { return h_; }

  /// Segment index and local parameter for a global parameter; a junction
  /// resolves into the later segment at local 0 (the last point into the last
  /// segment at local 1).
  std::pair<std::size_t, double> locate(double xi) const;

  Eigen::Vector3d position(double xi) const;
  /// Path derivative of order 0..4 with respect to the global parameter.
  Eigen::Vector3d derivative(double xi, int order) const;
  /// Frame, angular velocity and speed per unit global parameter.
  FrameSample<double> frame(double xi) const;
  /// Arc length from xi0, curvature and torsion.
  Geometry<double> geometry(double xi) const;
  double total_length() const { return prefix_length_.back(); }

 private:
  std::vector<Segment> segments_;
  double xi0_;
  double xif_;
  double h_;
  std::vector<double> prefix_length_;
};

enum class Growth { Increment, Double };

struct PipelineConfig {
  double epsilon = 1e-6;
  int n_s_init = 2;
  Growth growth = Growth::Double;
  int samples_per_segment = 1000;
  int max_segments = 4096;
};

struct ConvergenceRow {
  int n_segments = 0;
  double max_error = 0.0;
  /// Previous error over this one; empty for the first row.
  std::optional<double> ratio;
};

/// Hermite data of segment k of n_s, derivatives scaled to the local
/// parameter (order m carries h^m).
HermiteC4Data<double> extract_segment_data(const CurveSource& src, int k, int n_s);

/// Removes the roll offset between consecutive segments' frames by moving each
/// later segment along its preimage fiber, then fixes the preimage sign.
/// Throws ContinuityFailure if a junction frame mismatch above 1e-6 remains.
PHPath enforce_frame_continuity(const PHPath& path);

/// Interpolates every segment of a uniform n_s split; frame continuity is
/// enforced unless disabled.
PHPath build_path(const CurveSource& src, int n_s, bool enforce_continuity = true);

/// Max over samples_per_segment + 1 uniform samples per segment of
/// |gamma(xi) - p(xi)| at equal parameter values.
double conversion_error(const CurveSource& src, const PHPath& path, int samples_per_segment);

struct PhodcosResult {
  PHPath path;
  std::vector<ConvergenceRow> rows;
};

/// Grows the segment count until the conversion error drops below epsilon.
/// Throws ToleranceUnreachable past cfg.max_segments.
PhodcosResult phodcos(const CurveSource& src, const PipelineConfig& cfg);

/// Errors for n_s = 2^m, m = min_exp..max_exp.
std::vector<ConvergenceRow> convergence_study(const CurveSource& src, int min_exp, int max_exp,
                                              int samples_per_segment = 1000);

struct JunctionMismatch {
  double position;
  /// Frobenius norm of R_k(1) - R_{k+1}(0).
  double frame;
  double preimage;
};

/// Mismatch between the end of segment k and the start of segment k + 1.
JunctionMismatch junction_mismatch(const PHPath& path, std::size_t k);

}  // namespace phodcos
