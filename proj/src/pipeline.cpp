#include "phodcos/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "phodcos/errors.hpp"

namespace phodcos {

namespace {

constexpr double kContinuityTol = 1e-6;

}  // namespace

PHPath::PHPath(std::vector<Segment> segments, double xi0, double xif)
    : segments_(std::move(segments)), xi0_(xi0), xif_(xif) {
  if (segments_.empty()) throw Error("a path needs at least one segment");
  if (!(xif_ > xi0_)) throw Error("empty parameter range");
  h_ = (xif_ - xi0_) / static_cast<double>(segments_.size());
  prefix_length_.reserve(segments_.size() + 1);
  prefix_length_.push_back(0.0);
  for (const Segment& s : segments_) prefix_length_.push_back(prefix_length_.back() + s.total_length());
}

std::pair<std::size_t, double> PHPath::locate(double xi) const {
  const double u = (xi - xi0_) / h_;
  const auto last = static_cast<double>(segments_.size() - 1);
  const double k = std::clamp(std::floor(u), 0.0, last);
  return {static_cast<std::size_t>(k), u - k};
}

Eigen::Vector3d PHPath::position(double xi) const {
  const auto [k, t] = locate(xi);
  return segments_[k].position(t);
}

Eigen::Vector3d PHPath::derivative(double xi, int order) const {
  const auto [k, t] = locate(xi);
  return segments_[k].derivative(t, order) / std::pow(h_, order);
}

FrameSample<double> PHPath::frame(double xi) const {
  const auto [k, t] = locate(xi);
  FrameSample<double> f = segments_[k].frame(t);
  f.omega /= h_;
  f.sigma /= h_;
  return f;
}

Geometry<double> PHPath::geometry(double xi) const {
  const auto [k, t] = locate(xi);
  Geometry<double> g = segments_[k].geometry(t);
  // Curvature and torsion are parameter independent.
  g.arc_length += prefix_length_[k];
  return g;
}

HermiteC4Data<double> extract_segment_data(const CurveSource& src, int k, int n_s) {
  if (n_s < 1 || k < 0 || k >= n_s) throw std::out_of_range("segment index out of range");
  const double h = src.width() / n_s;
  const double xb = src.xi0() + k * h;
  const double xe = k + 1 == n_s ? src.xif() : src.xi0() + (k + 1) * h;
  HermiteC4Data<double> d;
  double scale = 1.0;
  for (int m = 0; m <= 4; ++m) {
    d.begin(m) = scale * src.evaluate(xb, m);
    d.end(m) = scale * src.evaluate(xe, m);
    scale *= h;
  }
  return d;
}

JunctionMismatch junction_mismatch(const PHPath& path, std::size_t k) {
  const Segment& a = path.segments().at(k);
  const Segment& b = path.segments().at(k + 1);
  JunctionMismatch m;
  m.position = (a.position(1.0) - b.position(0.0)).norm();
  m.frame = (a.frame(1.0).R - b.frame(0.0).R).norm();
  m.preimage = (a.preimage().eval(1.0) - b.preimage().eval(0.0)).norm();
  return m;
}

PHPath enforce_frame_continuity(const PHPath& path) {
  std::vector<Segment> segs = path.segments();
  for (std::size_t k = 0; k + 1 < segs.size(); ++k) {
    const Eigen::Matrix3d prev = segs[k].frame(1.0).R;
    const Eigen::Matrix3d next = segs[k + 1].frame(0.0).R;
    const double alpha =
        std::atan2(prev.col(1).dot(next.col(2)), prev.col(1).dot(next.col(1)));

    Segment fixed = segs[k + 1].fiber_rotated(alpha / 2);
    double mismatch = (fixed.frame(0.0).R - prev).norm();
    if (mismatch > kContinuityTol) {
      Segment other = segs[k + 1].fiber_rotated(-alpha / 2);
      const double other_mismatch = (other.frame(0.0).R - prev).norm();
      if (other_mismatch < mismatch) {
        fixed = std::move(other);
        mismatch = other_mismatch;
      }
    }
    if (mismatch > kContinuityTol) {
      throw ContinuityFailure("frame mismatch " + std::to_string(mismatch) + " at junction " +
                              std::to_string(k + 1));
    }

    const Quaterniond end = segs[k].preimage().eval(1.0);
    const Quaterniond start = fixed.preimage().eval(0.0);
    if ((start + end).norm() < (start - end).norm()) fixed = fixed.negated();
    segs[k + 1] = std::move(fixed);
  }
  return PHPath(std::move(segs), path.xi0(), path.xif());
}

PHPath build_path(const CurveSource& src, int n_s, bool enforce_continuity) {
  if (n_s < 1) throw std::invalid_argument("segment count must be positive");
  std::vector<Segment> segs;
  segs.reserve(static_cast<std::size_t>(n_s));
  for (int k = 0; k < n_s; ++k) segs.push_back(c4_interpolate(extract_segment_data(src, k, n_s)));
  PHPath path(std::move(segs), src.xi0(), src.xif());
  return enforce_continuity ? enforce_frame_continuity(path) : path;
}

double conversion_error(const CurveSource& src, const PHPath& path, int samples_per_segment) {
  const int s_count = std::max(samples_per_segment, 2);
  const double h = path.h();
  double worst = 0.0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const Segment& seg = path.segments()[k];
    const double base = path.xi0() + static_cast<double>(k) * h;
    for (int s = 0; s <= s_count; ++s) {
      const double t = static_cast<double>(s) / s_count;
      worst = std::max(worst, (src.evaluate(base + t * h, 0) - seg.position(t)).norm());
    }
  }
  return worst;
}

namespace {

int grow(int n_s, Growth g) { return g == Growth::Double ? 2 * n_s : n_s + 1; }

bool is_degenerate(const Error& e) {
  return dynamic_cast<const DegenerateQuaternion*>(&e) != nullptr ||
         dynamic_cast<const DegenerateHodographDirection*>(&e) != nullptr ||
         dynamic_cast<const DegenerateVelocitySum*>(&e) != nullptr ||
         dynamic_cast<const VanishingPreimage*>(&e) != nullptr ||
         dynamic_cast<const InterpolationResidual*>(&e) != nullptr;
}

}  // namespace

PhodcosResult phodcos(const CurveSource& src, const PipelineConfig& cfg) {
  if (!(cfg.epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (cfg.n_s_init < 1) throw std::invalid_argument("n_s_init must be at least 1");

  std::vector<ConvergenceRow> rows;
  int n_s = cfg.n_s_init;
  bool retried = false;
  while (n_s <= cfg.max_segments) {
    std::optional<PHPath> path;
    try {
      path = build_path(src, n_s);
    } catch (const Error& e) {
      if (!is_degenerate(e) || retried) throw;
      retried = true;
      n_s *= 2;
      continue;
    }
    retried = false;
    ConvergenceRow row{n_s, conversion_error(src, *path, cfg.samples_per_segment), std::nullopt};
    if (!rows.empty() && row.max_error > 0) row.ratio = rows.back().max_error / row.max_error;
    rows.push_back(row);
    if (row.max_error < cfg.epsilon) return {std::move(*path), std::move(rows)};
    n_s = grow(n_s, cfg.growth);
  }
  const double last = rows.empty() ? INFINITY : rows.back().max_error;
  throw ToleranceUnreachable("error " + std::to_string(last) + " still above " +
                             std::to_string(cfg.epsilon) + " at the segment cap of " +
                             std::to_string(cfg.max_segments));
}

std::vector<ConvergenceRow> convergence_study(const CurveSource& src, int min_exp, int max_exp,
                                              int samples_per_segment) {
  if (min_exp < 0 || max_exp < min_exp || max_exp > 20) {
    throw std::invalid_argument("invalid exponent range");
  }
  std::vector<ConvergenceRow> rows;
  for (int m = min_exp; m <= max_exp; ++m) {
    const int n_s = 1 << m;
    ConvergenceRow row{n_s, conversion_error(src, build_path(src, n_s), samples_per_segment),
                       std::nullopt};
    if (!rows.empty() && row.max_error > 0) row.ratio = rows.back().max_error / row.max_error;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace phodcos
