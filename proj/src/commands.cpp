#include "phodcos/commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

#include "phodcos/document.hpp"
#include "phodcos/errors.hpp"
#include "phodcos/hermite.hpp"
#include "phodcos/sampled_curve.hpp"

namespace phodcos::cli {

namespace {

// Errors below this are roundoff; their ratios carry no information.
constexpr double kNoiseFloor = 1e-13;

// Opens `path` for writing, or hands back `fallback` when path is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

// Resolves the source and runs the derivative-consistency hook on it.
ResolvedSource checked_source(const SourceSpec& spec) {
  ResolvedSource r = resolve_source(spec);
  const DerivativeCheck check = validate_derivatives(*r.source);
  if (!check.ok) {
    std::ostringstream msg;
    msg << "source '" << r.description << "' fails the derivative check: order "
        << check.worst_order << " off by " << check.worst_relative << " (relative) at xi = "
        << check.worst_xi;
    throw std::invalid_argument(msg.str());
  }
  return r;
}

struct PropertyResult {
  std::string name;
  double worst;
  double tol;
  bool ok() const { return worst <= tol; }
};

class PropertySuite {
 public:
  PropertySuite(CurveSourcePtr src, int n_segments) : src_(std::move(src)), n_s_(n_segments) {
    for (int k = 0; k < n_s_; ++k) {
      data_.push_back(extract_segment_data(*src_, k, n_s_));
      segs_.push_back(c4_interpolate(data_.back()));
      double s = 1.0;
      for (const auto& p : segs_.back().path().ctrl()) s = std::max(s, p.norm());
      scale_.push_back(s);
    }
  }

  std::vector<PropertyResult> run() const {
    return {ph_condition(), planarity(), rigid_invariance(), reversion(), angle_fiber(),
            global_fiber()};
  }

 private:
  static constexpr int kSamples = 100;

  template <typename F>
  double worst_over_samples(F&& f) const {
    double worst = 0.0;
    for (int k = 0; k < n_s_; ++k) {
      for (int s = 0; s <= kSamples; ++s) {
        worst = std::max(worst, f(static_cast<std::size_t>(k), static_cast<double>(s) / kSamples));
      }
    }
    return worst;
  }

  PropertyResult ph_condition() const {
    const double w = worst_over_samples([&](std::size_t k, double t) {
      const double sigma = segs_[k].speed(t);
      return std::abs(segs_[k].hodograph().eval(t).norm() - sigma) / std::max(sigma, 1e-300);
    });
    return {"ph-condition", w, 1e-10};
  }

  PropertyResult planarity() const {
    const CurveSourcePtr src = src_;
    const AnalyticCurve planar("planar", src->xi0(), src->xif(), [src](double xi, int k) {
      Eigen::Vector3d v = src->evaluate(xi, k);
      v.y() = 0.0;
      return v;
    });
    double w = 0.0;
    for (int k = 0; k < n_s_; ++k) {
      const Segment seg = c4_interpolate(extract_segment_data(planar, k, n_s_));
      for (int s = 0; s <= kSamples; ++s) {
        w = std::max(w, std::abs(seg.position(static_cast<double>(s) / kSamples).y()) /
                            scale_[static_cast<std::size_t>(k)]);
      }
    }
    return {"planarity", w, 1e-10};
  }

  PropertyResult rigid_invariance() const {
    const double half = std::numbers::pi / 4;
    const RigidTransform<double> m{Quaterniond(std::cos(half), 0.0, std::sin(half), 0.0),
                                   Eigen::Vector3d(-1.0, 0.0, 2.5)};
    std::vector<Segment> moved;
    for (const auto& d : data_) moved.push_back(m.inverse().apply(c4_interpolate(m.apply(d))));
    const double w = worst_over_samples([&](std::size_t k, double t) {
      return (moved[k].position(t) - segs_[k].position(t)).norm() / scale_[k];
    });
    return {"rigid-invariance", w, 1e-9};
  }

  PropertyResult reversion() const {
    std::vector<Segment> rev;
    for (const auto& d : data_) rev.push_back(c4_interpolate(d.reversed()));
    const double w = worst_over_samples([&](std::size_t k, double t) {
      return (rev[k].position(1.0 - t) - segs_[k].position(t)).norm() / scale_[k];
    });
    return {"reversion", w, 1e-9};
  }

  // A common shift of the three angular parameters is a move along the
  // fiber and must leave the curve alone.
  PropertyResult angle_fiber() const {
    InterpolantParams<double> params;
    params.theta0 = params.theta4 = params.theta8 = 0.9;
    std::vector<Segment> alt;
    for (const auto& d : data_) alt.push_back(c4_interpolate(d, params));
    const double w = worst_over_samples([&](std::size_t k, double t) {
      return (alt[k].position(t) - segs_[k].position(t)).norm() / scale_[k];
    });
    return {"angle-fiber", w, 1e-12};
  }

  PropertyResult global_fiber() const {
    const double phi = 0.7;
    std::vector<Segment> alt;
    for (const auto& s : segs_) alt.push_back(s.fiber_rotated(phi));
    const double w = worst_over_samples([&](std::size_t k, double t) {
      const auto f = segs_[k].frame(t);
      const auto g = alt[k].frame(t);
      const double dp = (alt[k].position(t) - segs_[k].position(t)).norm() / scale_[k];
      const double de1 = (g.R.col(0) - f.R.col(0)).norm();
      const double roll_c = std::abs(g.R.col(1).dot(f.R.col(1)) - std::cos(2 * phi));
      const double roll_s = std::abs(g.R.col(1).dot(f.R.col(2)) - std::sin(2 * phi));
      return std::max({dp, de1, roll_c, roll_s});
    });
    return {"global-fiber", w, 1e-12};
  }

  CurveSourcePtr src_;
  int n_s_;
  std::vector<HermiteC4Data<double>> data_;
  std::vector<Segment> segs_;
  std::vector<double> scale_;
};

}  // namespace

ResolvedSource resolve_source(const SourceSpec& spec) {
  if (spec.curve.has_value() == spec.csv.has_value()) {
    throw std::invalid_argument("give exactly one of a builtin curve or a CSV file");
  }
  if (spec.curve) return {builtin_curve(*spec.curve), *spec.curve};
  const std::string desc = "csv:" + *spec.csv;
  return {from_samples(load_orbit_csv(*spec.csv), spec.fit_tol, desc), desc};
}

std::string eval_header() {
  return "xi,px,py,pz,R11,R12,R13,R21,R22,R23,R31,R32,R33,omega_x,omega_y,omega_z,sigma,L,kappa,"
         "tau";
}

int cmd_fit(const FitOptions& opt, std::ostream& out, std::ostream& err) {
  ResolvedSource src;
  try {
    if (!(opt.epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
    src = checked_source(opt.source);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  PipelineConfig cfg;
  cfg.epsilon = opt.epsilon;
  cfg.growth = opt.growth;
  cfg.n_s_init = opt.n_s_init;
  cfg.samples_per_segment = opt.samples_per_segment;
  cfg.max_segments = opt.max_segments;
  try {
    const PhodcosResult result = phodcos(*src.source, cfg);
    const double achieved = result.rows.back().max_error;
    out << std::setprecision(17) << "n_segments=" << result.path.size()
        << " max_error=" << achieved << '\n';
    if (!opt.output.empty()) {
      ParameterizationDocument::from_path(result.path, {src.description, opt.epsilon, 0, achieved})
          .save(opt.output);
    }
    return kOk;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kToleranceFailure;
  }
}

int cmd_convergence(const ConvergenceOptions& opt, std::ostream& out, std::ostream& err) {
  ResolvedSource src;
  try {
    if (opt.min_exp < 0 || opt.max_exp < opt.min_exp || opt.max_exp > 12) {
      throw std::invalid_argument("exponents must satisfy 0 <= min <= max <= 12");
    }
    src = checked_source(opt.source);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  try {
    const auto rows =
        convergence_study(*src.source, opt.min_exp, opt.max_exp, opt.samples_per_segment);
    Sink sink(opt.output, out);
    std::ostream& os = *sink;
    os << "n_segments,error,ratio\n" << std::setprecision(17);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      os << rows[i].n_segments << ',' << rows[i].max_error << ',';
      const bool meaningful = rows[i].ratio && rows[i].max_error > kNoiseFloor &&
                              rows[i - 1].max_error > kNoiseFloor;
      if (meaningful) {
        os << *rows[i].ratio;
      } else {
        os << '-';
      }
      os << '\n';
    }
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kToleranceFailure;
  }
}

int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err) {
  std::optional<PHPath> path;
  try {
    if (opt.samples < 2) throw std::invalid_argument("need at least 2 samples");
    path = ParameterizationDocument::load(opt.document).to_path();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  try {
    Sink sink(opt.output, out);
    std::ostream& os = *sink;
    os << eval_header() << '\n' << std::setprecision(17);
    for (int i = 0; i < opt.samples; ++i) {
      const double xi = i + 1 == opt.samples
                            ? path->xif()
                            : path->xi0() + (path->xif() - path->xi0()) * i / (opt.samples - 1);
      const Eigen::Vector3d p = path->position(xi);
      const FrameSample<double> f = path->frame(xi);
      const Geometry<double> g = path->geometry(xi);
      os << xi << ',' << p.x() << ',' << p.y() << ',' << p.z();
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) os << ',' << f.R(r, c);
      }
      os << ',' << f.omega.x() << ',' << f.omega.y() << ',' << f.omega.z() << ',' << f.sigma
         << ',' << g.arc_length << ',' << g.curvature << ',' << g.torsion << '\n';
    }
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kPropertyFailure;
  }
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  ResolvedSource src;
  try {
    if (opt.n_segments < 1) throw std::invalid_argument("need at least one segment");
    src = checked_source(opt.source);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  std::vector<PropertyResult> results;
  try {
    results = PropertySuite(src.source, opt.n_segments).run();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kPropertyFailure;
  }
  bool all = true;
  out << std::setprecision(3);
  for (const auto& r : results) {
    all = all && r.ok();
    out << (r.ok() ? "PASS " : "FAIL ") << r.name << "  worst=" << r.worst << " tol=" << r.tol
        << '\n';
  }
  if (!all) {
    err << "failed:";
    for (const auto& r : results) {
      if (!r.ok()) err << ' ' << r.name;
    }
    err << '\n';
    return kPropertyFailure;
  }
  return kOk;
}

}  // namespace phodcos::cli
