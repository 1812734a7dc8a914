#include "aplab/decay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace aplab {

void validate_grid(const std::vector<double>& grid, const char* what) {
  if (grid.size() < 2) throw GridError(std::string(what) + ": grid needs at least 2 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] <= 0.0) {
      throw GridError(std::string(what) + ": grid points must be positive and finite");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw GridError(std::string(what) + ": grid must be strictly increasing");
    }
  }
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
  if (n < 2 || !(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw GridError("geometric_grid: need n >= 2 and 0 < lo < hi");
  }
  std::vector<double> g(n);
  const double step = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo * std::exp(step * static_cast<double>(i));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> default_t_grid() { return geometric_grid(1.0, 1e3, 60); }

double DecayProfile::max_value() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

double DecayProfile::tail_max() const {
  const std::size_t start = values.size() / 2;
  double m = 0.0;
  for (std::size_t i = start; i < values.size(); ++i) m = std::max(m, values[i]);
  return m;
}

bool DecayProfile::decays_at_rate(double threshold, double zero_tol) const {
  if (tail_max() <= zero_tol) return true;
  return fitted_exponent <= threshold;
}

DecayProfile decay_profile(const std::function<double(double)>& norm_of_t, const std::vector<double>& grid) {
  validate_grid(grid, "decay_profile");
  DecayProfile p;
  p.t_grid = grid;
  p.values.reserve(grid.size());
  for (double t : grid) p.values.push_back(norm_of_t(t));

  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = grid.size() / 2; i < grid.size(); ++i) {
    if (p.values[i] >= kDecayFloor && std::isfinite(p.values[i])) {
      xs.push_back(std::log(grid[i]));
      ys.push_back(std::log(p.values[i]));
    }
  }
  p.fit_points = xs.size();
  if (xs.size() < 2) return p;

  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    ss += r * r;
  }
  p.fitted_exponent = slope;
  p.fitted_constant = std::exp(intercept);
  p.residual = std::sqrt(ss / n);
  return p;
}

DecayProfile decay_profile(const std::function<GradedMatrix(double)>& family, const std::vector<double>& grid) {
  return decay_profile([&family](double t) { return operator_norm(family(t)); }, grid);
}

std::string profile_csv(const DecayProfile& p) {
  std::string out = "t,value\n";
  char buf[96];
  for (std::size_t i = 0; i < p.t_grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12e,%.12e\n", p.t_grid[i], p.values[i]);
    out += buf;
  }
  return out;
}

nlohmann::ordered_json profile_json(const DecayProfile& p) {
  nlohmann::ordered_json j;
  j["grid"] = p.t_grid;
  j["values"] = p.values;
  if (std::isfinite(p.fitted_exponent)) {
    j["exponent"] = p.fitted_exponent;
  } else {
    j["exponent"] = nullptr;
  }
  j["constant"] = p.fitted_constant;
  j["residual"] = p.residual;
  return j;
}

}  // namespace aplab
