#include "phodcos/curve_source.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace phodcos {

std::vector<double> fd_weights(const std::vector<double>& offsets, int order) {
  // Fornberg, "Generation of finite difference formulas on arbitrarily spaced
  // grids", Math. Comp. 51 (1988), evaluated at x0 = 0.
  const int n = static_cast<int>(offsets.size());
  std::vector<std::vector<double>> c(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(order + 1), 0.0));
  double c1 = 1.0;
  double c4 = offsets[0];
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = offsets[static_cast<std::size_t>(i)];
    for (int j = 0; j < i; ++j) {
      const double c3 = offsets[static_cast<std::size_t>(i)] - offsets[static_cast<std::size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = c[i][order];
  return w;
}

FiniteDifferenceCurve::FiniteDifferenceCurve(std::string name, double xi0, double xif, Fn position)
    : name_(std::move(name)),
      xi0_(xi0),
      xif_(xif),
      step_(std::max(1e-4, 1e-3 * (xif - xi0))),
      position_(std::move(position)) {}

Eigen::Vector3d FiniteDifferenceCurve::evaluate(double xi, int order) const {
  if (order == 0) return position_(xi);
  // 9 points for orders 1-2, 11 for orders 3-4: 8th order when centered.
  const int half = order <= 2 ? 4 : 5;
  const double step = order <= 2 ? step_ : 5 * step_;
  double lo = -half;
  // Shift the window so that every node stays inside [xi0, xif].
  const double room_left = (xi - xi0_) / step;
  const double room_right = (xif_ - xi) / step;
  if (room_left < half) lo = -std::max(0.0, std::floor(room_left));
  if (room_right < half) lo = std::floor(room_right) - 2 * half;
  std::vector<double> offsets;
  for (int i = 0; i <= 2 * half; ++i) offsets.push_back(lo + i);
  const std::vector<double> w = fd_weights(offsets, order);
  Eigen::Vector3d acc = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    acc += w[i] * position_(xi + offsets[i] * step);
  }
  return acc / std::pow(step, order);
}

namespace {

// k-th derivative of amp * sin(freq * xi + phase).
double sin_derivative(double amp, double freq, double phase, double xi, int k) {
  return amp * std::pow(freq, k) * std::sin(freq * xi + phase + k * std::numbers::pi / 2);
}

// k-th derivative of exp(cos(b xi)), k = 0..4.
double exp_cos_derivative(double b, double xi, int k) {
  const double s = std::sin(b * xi);
  const double c = std::cos(b * xi);
  const double f = std::exp(c);
  const double c1 = -b * s;
  const double c2 = -b * b * c;
  const double c3 = b * b * b * s;
  const double c4 = b * b * b * b * c;
  switch (k) {
    case 0: return f;
    case 1: return f * c1;
    case 2: return f * (c1 * c1 + c2);
    case 3: return f * (c1 * c1 * c1 + 3 * c1 * c2 + c3);
    case 4: return f * (c1 * c1 * c1 * c1 + 6 * c1 * c1 * c2 + 3 * c2 * c2 + 4 * c1 * c3 + c4);
    default: throw std::out_of_range("derivative order above 4");
  }
}

void check_order(int order) {
  if (order < 0 || order > 4) throw std::out_of_range("derivative order must be in 0..4");
}

}  // namespace

CurveSourcePtr exemplary_curve() {
  return std::make_shared<AnalyticCurve>("exemplary", 0.0, 1.0, [](double xi, int k) {
    check_order(k);
    return Eigen::Vector3d(sin_derivative(1.5, 7.2, 0.0, xi, k),
                           sin_derivative(1.0, 9.0, std::numbers::pi / 2, xi, k),
                           exp_cos_derivative(1.8, xi, k));
  });
}

CurveSourcePtr exemplary_planar_curve() {
  return std::make_shared<AnalyticCurve>("exemplary-planar", 0.0, 1.0, [](double xi, int k) {
    check_order(k);
    return Eigen::Vector3d(sin_derivative(1.5, 7.2, 0.0, xi, k), 0.0,
                           exp_cos_derivative(1.8, xi, k));
  });
}

CurveSourcePtr line_curve() {
  return std::make_shared<AnalyticCurve>("line", 0.0, 1.0, [](double xi, int k) {
    check_order(k);
    const Eigen::Vector3d origin(1.0, 0.0, 0.0);
    const Eigen::Vector3d dir(1.0, 2.0, -1.0);
    switch (k) {
      case 0: return Eigen::Vector3d(origin + xi * dir);
      case 1: return dir;
      default: return Eigen::Vector3d::Zero().eval();
    }
  });
}

CurveSourcePtr helix_curve() {
  return std::make_shared<AnalyticCurve>("helix", 0.0, 1.0, [](double xi, int k) {
    check_order(k);
    const double w = 4.0 * std::numbers::pi;
    const double z = k == 0 ? 0.5 * xi : (k == 1 ? 0.5 : 0.0);
    return Eigen::Vector3d(sin_derivative(1.0, w, std::numbers::pi / 2, xi, k),
                           sin_derivative(1.0, w, 0.0, xi, k), z);
  });
}

std::vector<std::string> builtin_curve_names() {
  return {"exemplary", "exemplary-planar", "line", "helix"};
}

CurveSourcePtr builtin_curve(const std::string& name) {
  if (name == "exemplary") return exemplary_curve();
  if (name == "exemplary-planar") return exemplary_planar_curve();
  if (name == "line") return line_curve();
  if (name == "helix") return helix_curve();
  throw std::invalid_argument("unknown builtin curve '" + name + "'");
}

DerivativeCheck validate_derivatives(const CurveSource& src, int samples, double tol) {
  static const std::vector<double> offsets{-4, -3, -2, -1, 0, 1, 2, 3, 4};
  static const std::vector<double> weights = fd_weights(offsets, 1);

  // Check points with the stencil step to use at each.
  std::vector<std::pair<double, double>> points;
  const double default_step = 1e-3 * src.width();
  std::vector<double> breaks = src.breakpoints();
  if (breaks.empty()) {
    const double lo = src.xi0() + 4 * default_step;
    const double hi = src.xif() - 4 * default_step;
    for (int s = 0; s < samples; ++s) {
      points.emplace_back(lo + (hi - lo) * (s + 0.5) / samples, default_step);
    }
  } else {
    breaks.insert(breaks.begin(), src.xi0());
    breaks.push_back(src.xif());
    const std::size_t spans = breaks.size() - 1;
    const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(samples), spans);
    for (std::size_t s = 0; s < count; ++s) {
      const std::size_t i = count == 1 ? 0 : s * (spans - 1) / (count - 1);
      const double width = breaks[i + 1] - breaks[i];
      points.emplace_back(0.5 * (breaks[i] + breaks[i + 1]), std::min(default_step, width / 10));
    }
  }

  DerivativeCheck out;
  double lower_scale = 0.0;
  for (int order = 1; order <= 4; ++order) {
    std::vector<double> errors;
    double scale = 0.0;
    for (const auto& [xi, step] : points) {
      Eigen::Vector3d fd = Eigen::Vector3d::Zero();
      for (std::size_t i = 0; i < offsets.size(); ++i) {
        fd += weights[i] * src.evaluate(xi + offsets[i] * step, order - 1);
      }
      fd /= step;
      const Eigen::Vector3d exact = src.evaluate(xi, order);
      scale = std::max(scale, exact.norm());
      if (order == 1) lower_scale = std::max(lower_scale, src.evaluate(xi, 0).norm());
      errors.push_back((exact - fd).norm());
    }
    // A vanishing derivative (e.g. of a line) is measured against the order below.
    const double denom = std::max({scale, lower_scale, 1e-300});
    lower_scale = std::max(lower_scale, scale);
    for (std::size_t s = 0; s < points.size(); ++s) {
      const double rel = errors[s] / denom;
      if (rel > out.worst_relative) {
        out.worst_relative = rel;
        out.worst_order = order;
        out.worst_xi = points[s].first;
      }
    }
  }
  out.ok = out.worst_relative <= tol;
  return out;
}

}  // namespace phodcos
