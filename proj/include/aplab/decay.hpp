#pragma once

// Sampled norms of a t-indexed family with a fitted log-log slope.  The
// slope over the upper half of the grid is the finite-scale stand-in for
// "tends to zero like t^exponent".

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "aplab/graded_linalg.hpp"

namespace aplab {

/// Values below this are treated as exact zeros and left out of the fit.
inline constexpr double kDecayFloor = 1e-14;

class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws GridError unless the grid has >= 2 strictly increasing positive finite points.
void validate_grid(const std::vector<double>& grid, const char* what);

/// n points geometrically spaced on [lo, hi], endpoints exact.
std::vector<double> geometric_grid(double lo, double hi, std::size_t n);
/// 60 points on [1, 1e3].
std::vector<double> default_t_grid();

struct DecayProfile {
  std::vector<double> t_grid;
  std::vector<double> values;
  /// -infinity when fewer than two fit-window values clear the floor.
  double fitted_exponent = -std::numeric_limits<double>::infinity();
  double fitted_constant = 0.0;
  /// RMS residual of the log-log fit (0 when no fit was possible).
  double residual = 0.0;
  std::size_t fit_points = 0;

  double max_value() const;
  /// Largest value inside the fit window (upper half of the grid).
  double tail_max() const;
  /// Fitted exponent <= threshold, or the tail is identically negligible
  /// (<= zero_tol), in which case there is nothing to fit.
  bool decays_at_rate(double threshold, double zero_tol = 1e-12) const;
};

DecayProfile decay_profile(const std::function<double(double)>& norm_of_t, const std::vector<double>& grid);
DecayProfile decay_profile(const std::function<GradedMatrix(double)>& family, const std::vector<double>& grid);

/// Header `t,value`, one row per grid point, values in %.12e.
std::string profile_csv(const DecayProfile& p);
/// {grid, values, exponent, constant, residual}; a -infinity exponent becomes null.
nlohmann::ordered_json profile_json(const DecayProfile& p);

}  // namespace aplab
