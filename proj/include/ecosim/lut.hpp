#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ecosim/error.hpp"

namespace ecosim {

namespace detail {

inline void check_grid(const std::vector<double>& grid, const std::string& what) {
  if (grid.size() < 2) {
    throw InvalidInputError(what + ": grid needs at least 2 points");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) {
      throw InvalidInputError(what + ": non-finite grid point");
    }
    if (i > 0 && grid[i] <= grid[i - 1]) {
      throw InvalidInputError(what + ": grid not strictly increasing");
    }
  }
}

inline void check_values(const std::vector<double>& values, const std::string& what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw InvalidInputError(what + ": non-finite table value");
    }
  }
}

// Index of the cell [grid[i], grid[i+1]] containing x, assuming x is
// already clamped into the grid span.
inline std::size_t cell_index(const std::vector<double>& grid, double x) {
  auto it = std::upper_bound(grid.begin(), grid.end(), x);
  if (it == grid.begin()) return 0;
  std::size_t i = static_cast<std::size_t>(it - grid.begin()) - 1;
  return std::min(i, grid.size() - 2);
}

}  // namespace detail

/// Piecewise-linear 1-D table over a strictly increasing grid.
/// Queries outside the grid clamp to the nearest endpoint value.
class Lut1 {
 public:
  Lut1() = default;

  Lut1(std::vector<double> grid, std::vector<double> values, std::string name = "lut1")
      : grid_(std::move(grid)), values_(std::move(values)), name_(std::move(name)) {
    detail::check_grid(grid_, name_);
    detail::check_values(values_, name_);
    if (values_.size() != grid_.size()) {
      throw InvalidInputError(name_ + ": grid/value size mismatch");
    }
  }

  double operator()(double x) const { return eval(x, nullptr); }

  double eval(double x, bool* clamped) const {
    if (!std::isfinite(x)) {
      throw InvalidInputError(name_ + ": non-finite query");
    }
    if (x <= grid_.front()) {
      if (clamped && x < grid_.front()) *clamped = true;
      return values_.front();
    }
    if (x >= grid_.back()) {
      if (clamped && x > grid_.back()) *clamped = true;
      return values_.back();
    }
    std::size_t i = detail::cell_index(grid_, x);
    double t = (x - grid_[i]) / (grid_[i + 1] - grid_[i]);
    return values_[i] + t * (values_[i + 1] - values_[i]);
  }

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double min_x() const { return grid_.front(); }
  double max_x() const { return grid_.back(); }

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  std::string name_;
};

/// Bilinear 2-D table over strictly increasing x/y grids, row-major in x
/// (values[ix * ny + iy]). Out-of-range queries clamp to the grid edge.
class Lut2 {
 public:
  Lut2() = default;

  Lut2(std::vector<double> x_grid, std::vector<double> y_grid, std::vector<double> values,
       std::string name = "lut2")
      : x_(std::move(x_grid)), y_(std::move(y_grid)), values_(std::move(values)),
        name_(std::move(name)) {
    detail::check_grid(x_, name_ + ".x");
    detail::check_grid(y_, name_ + ".y");
    detail::check_values(values_, name_);
    if (values_.size() != x_.size() * y_.size()) {
      throw InvalidInputError(name_ + ": table size != |x| * |y|");
    }
  }

  double operator()(double x, double y) const { return eval(x, y, nullptr); }

  /// Sets *clamped when (x, y) fell outside the grid and was edge-clamped.
  double eval(double x, double y, bool* clamped) const {
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw InvalidInputError(name_ + ": non-finite query");
    }
    double xc = std::clamp(x, x_.front(), x_.back());
    double yc = std::clamp(y, y_.front(), y_.back());
    if (clamped && (xc != x || yc != y)) *clamped = true;

    std::size_t i = detail::cell_index(x_, xc);
    std::size_t j = detail::cell_index(y_, yc);
    double tx = (xc - x_[i]) / (x_[i + 1] - x_[i]);
    double ty = (yc - y_[j]) / (y_[j + 1] - y_[j]);

    double v00 = at(i, j), v10 = at(i + 1, j);
    double v01 = at(i, j + 1), v11 = at(i + 1, j + 1);
    return (1 - tx) * (1 - ty) * v00 + tx * (1 - ty) * v10 +
           (1 - tx) * ty * v01 + tx * ty * v11;
  }

  const std::vector<double>& x_grid() const { return x_; }
  const std::vector<double>& y_grid() const { return y_; }
  const std::vector<double>& values() const { return values_; }

 private:
  double at(std::size_t i, std::size_t j) const { return values_[i * y_.size() + j]; }

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> values_;
  std::string name_;
};

}  // namespace ecosim
