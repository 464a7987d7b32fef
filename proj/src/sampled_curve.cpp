#include "phodcos/sampled_curve.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseQR>

#include "phodcos/errors.hpp"

namespace phodcos {

namespace {

constexpr int kOrder = QuinticSpline::kDegree + 1;
constexpr int kMaxDerivative = QuinticSpline::kDegree;

using BasisDers = std::array<std::array<double, kOrder>, kMaxDerivative + 1>;

// Nonzero basis functions on `span` and their derivatives up to `n`
// (The NURBS Book, algorithm A2.3).
BasisDers basis_derivatives(const std::vector<double>& t, int span, double u, int n) {
  constexpr int p = QuinticSpline::kDegree;
  std::array<std::array<double, kOrder>, kOrder> ndu{};
  std::array<double, kOrder> left{};
  std::array<double, kOrder> right{};
  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = u - t[static_cast<std::size_t>(span + 1 - j)];
    right[j] = t[static_cast<std::size_t>(span + j)] - u;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[j][r] = right[r + 1] + left[j - r];
      const double temp = ndu[r][j - 1] / ndu[j][r];
      ndu[r][j] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu[j][j] = saved;
  }

  BasisDers ders{};
  for (int j = 0; j <= p; ++j) ders[0][j] = ndu[j][p];

  std::array<std::array<double, kOrder>, 2> a{};
  for (int r = 0; r <= p; ++r) {
    int s1 = 0;
    int s2 = 1;
    a[0][0] = 1.0;
    for (int k = 1; k <= n; ++k) {
      double d = 0.0;
      const int rk = r - k;
      const int pk = p - k;
      if (r >= k) {
        a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
        d = a[s2][0] * ndu[rk][pk];
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
        d += a[s2][j] * ndu[rk + j][pk];
      }
      if (r <= pk) {
        a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
        d += a[s2][k] * ndu[r][pk];
      }
      ders[k][r] = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= n; ++k) {
    for (int j = 0; j <= p; ++j) ders[k][j] *= factor;
    factor *= (p - k);
  }
  return ders;
}

// Parameter value at fractional sample index f (linear between samples).
double xi_at_index(const std::vector<Sample>& s, double f) {
  const auto i = static_cast<std::size_t>(std::floor(f));
  if (i + 1 >= s.size()) return s.back().xi;
  const double w = f - static_cast<double>(i);
  return (1.0 - w) * s[i].xi + w * s[i + 1].xi;
}

}  // namespace

QuinticSpline::QuinticSpline(std::vector<double> knots, Eigen::MatrixX3d coeffs)
    : knots_(std::move(knots)), coeffs_(std::move(coeffs)) {}

int QuinticSpline::find_span(double u) const {
  const int n = basis_count() - 1;
  if (u >= knots_[static_cast<std::size_t>(n + 1)]) return n;
  if (u <= knots_[kDegree]) return kDegree;
  const auto it = std::upper_bound(knots_.begin() + kDegree, knots_.begin() + n + 2, u);
  return static_cast<int>(it - knots_.begin()) - 1;
}

Eigen::Vector3d QuinticSpline::evaluate(double xi, int order) const {
  if (order > kMaxDerivative) return Eigen::Vector3d::Zero();
  const double u = std::clamp(xi, knots_.front(), knots_.back());
  const int span = find_span(u);
  const BasisDers d = basis_derivatives(knots_, span, u, order);
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  for (int j = 0; j <= kDegree; ++j) {
    out += d[static_cast<std::size_t>(order)][static_cast<std::size_t>(j)] *
           coeffs_.row(span - kDegree + j).transpose();
  }
  return out;
}

QuinticSpline QuinticSpline::fit(const std::vector<Sample>& samples, int basis_count) {
  const int n = static_cast<int>(samples.size());
  const int nb = std::clamp(basis_count, kOrder, n);
  const int interior = nb - kOrder;

  std::vector<double> knots;
  knots.reserve(static_cast<std::size_t>(nb + kOrder));
  knots.insert(knots.end(), kOrder, samples.front().xi);
  for (int j = 1; j <= interior; ++j) {
    knots.push_back(xi_at_index(samples, static_cast<double>(j) * (n - 1) / (interior + 1)));
  }
  knots.insert(knots.end(), kOrder, samples.back().xi);

  QuinticSpline shape(knots, Eigen::MatrixX3d::Zero(nb, 3));
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(n * kOrder));
  Eigen::MatrixX3d rhs(n, 3);
  for (int r = 0; r < n; ++r) {
    const double u = samples[static_cast<std::size_t>(r)].xi;
    const int span = shape.find_span(u);
    const BasisDers d = basis_derivatives(knots, span, u, 0);
    for (int j = 0; j <= kDegree; ++j) {
      if (d[0][static_cast<std::size_t>(j)] != 0.0) {
        triplets.emplace_back(r, span - kDegree + j, d[0][static_cast<std::size_t>(j)]);
      }
    }
    rhs.row(r) = samples[static_cast<std::size_t>(r)].point.transpose();
  }
  Eigen::SparseMatrix<double> basis(n, nb);
  basis.setFromTriplets(triplets.begin(), triplets.end());
  basis.makeCompressed();

  Eigen::SparseQR<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> qr(basis);
  if (qr.info() != Eigen::Success) {
    throw Error("spline fit: least-squares factorization failed");
  }
  Eigen::MatrixX3d coeffs(nb, 3);
  for (int c = 0; c < 3; ++c) {
    coeffs.col(c) = qr.solve(rhs.col(c));
  }
  return QuinticSpline(std::move(knots), std::move(coeffs));
}

SampledCurve::SampledCurve(std::vector<Sample> samples, double fit_tol, std::string name)
    : samples_(std::move(samples)), fit_tol_(fit_tol), name_(std::move(name)) {
  if (samples_.size() < 8) {
    throw InsufficientSamples("at least 8 samples are required, got " +
                              std::to_string(samples_.size()));
  }
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    if (!(samples_[i].xi > samples_[i - 1].xi)) {
      throw NonMonotonicParameter("sample parameter not strictly increasing at index " +
                                  std::to_string(i));
    }
  }
  const int n = static_cast<int>(samples_.size());
  int nb = std::min(n, 16);
  while (true) {
    spline_ = QuinticSpline::fit(samples_, nb);
    max_residual_ = 0.0;
    for (const Sample& s : samples_) {
      max_residual_ = std::max(max_residual_, (spline_.evaluate(s.xi, 0) - s.point).norm());
    }
    if (max_residual_ <= fit_tol_ || nb == n) break;
    nb = std::min(n, 2 * nb);
  }
}

std::vector<double> SampledCurve::breakpoints() const {
  const auto& t = spline_.knots();
  std::vector<double> out(t.begin() + kOrder, t.end() - kOrder);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::shared_ptr<const SampledCurve> from_samples(std::vector<Sample> samples, double fit_tol,
                                                 std::string name) {
  return std::make_shared<const SampledCurve>(std::move(samples), fit_tol, std::move(name));
}

namespace {

// Comma-separated when the line has a comma, whitespace-separated otherwise.
std::vector<std::string_view> split_fields(std::string_view line) {
  const auto trim = [](std::string_view v) {
    const auto b = v.find_first_not_of(" \t");
    if (b == std::string_view::npos) return std::string_view{};
    const auto e = v.find_last_not_of(" \t");
    return v.substr(b, e - b + 1);
  };
  std::vector<std::string_view> out;
  if (line.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      out.push_back(trim(line.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  }
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_double(std::string_view tok, double& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  if (tok.empty()) return false;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size() && std::isfinite(out);
}

}  // namespace

std::vector<Sample> load_orbit_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open '" + path.string() + "'");
  }
  std::vector<std::array<double, 4>> rows;
  std::size_t columns = 0;
  std::string line;
  std::size_t lineno = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto fields = split_fields(std::string_view(line).substr(first));

    double value = 0.0;
    if (!seen_content) {
      seen_content = true;
      if (!parse_double(fields.front(), value)) continue;  // header row
    }
    if (columns == 0) {
      columns = fields.size();
      if (columns != 3 && columns != 4) {
        throw ParseError(lineno, "expected 3 (x,y,z) or 4 (t,x,y,z) columns, got " +
                                     std::to_string(columns));
      }
    }
    if (fields.size() != columns) {
      throw ParseError(lineno, "expected " + std::to_string(columns) + " columns, got " +
                                   std::to_string(fields.size()));
    }
    std::array<double, 4> row{};
    for (std::size_t c = 0; c < columns; ++c) {
      if (!parse_double(fields[c], row[c])) {
        throw ParseError(lineno, "cannot parse '" + std::string(fields[c]) + "' as a number");
      }
    }
    rows.push_back(row);
  }
  if (rows.empty()) {
    throw EmptyFile("no data rows in '" + path.string() + "'");
  }

  std::vector<Sample> samples;
  samples.reserve(rows.size());
  const std::size_t n = rows.size();
  if (columns == 3) {
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
      samples.push_back({xi, Eigen::Vector3d(rows[i][0], rows[i][1], rows[i][2])});
    }
  } else {
    const double t0 = rows.front()[0];
    const double tf = rows.back()[0];
    if (!(tf != t0)) {
      throw ParseError(lineno, "time column has zero span");
    }
    for (const auto& r : rows) {
      samples.push_back({(r[0] - t0) / (tf - t0), Eigen::Vector3d(r[1], r[2], r[3])});
    }
  }
  return samples;
}

}  // namespace phodcos
