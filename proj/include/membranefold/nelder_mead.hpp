#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace membranefold {

struct NelderMeadOptions {
  int max_iterations = 500;
  double initial_step = 0.5;
  double f_tolerance = 1e-10;
  double x_tolerance = 1e-8;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  /// Best simplex value after each iteration.
  std::vector<double> trace;
};

/// Downhill simplex minimisation (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2). Deterministic for a deterministic objective.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                                    std::vector<double> start, const NelderMeadOptions& options = {}) {
  const std::size_t dim = start.size();
  NelderMeadResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    return objective(x);
  };

  std::vector<std::vector<double>> simplex(dim + 1, start);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += options.initial_step;
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<std::vector<double>> s2;
    std::vector<double> v2;
    s2.reserve(dim + 1);
    v2.reserve(dim + 1);
    for (auto i : order) {
      s2.push_back(std::move(simplex[i]));
      v2.push_back(values[i]);
    }
    simplex = std::move(s2);
    values = std::move(v2);
  };

  std::vector<double> centroid(dim), trial(dim), trial2(dim);
  auto blend = [&](std::vector<double>& out, double coef) {
    // out = centroid + coef * (centroid - worst)
    for (std::size_t k = 0; k < dim; ++k) out[k] = centroid[k] + coef * (centroid[k] - simplex[dim][k]);
  };

  sort_simplex();
  while (result.iterations < options.max_iterations) {
    ++result.iterations;
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[i][k];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    blend(trial, 1.0);
    const double fr = eval(trial);
    if (fr < values[0]) {
      blend(trial2, 2.0);
      const double fe = eval(trial2);
      if (fe < fr) {
        simplex[dim] = trial2;
        values[dim] = fe;
      } else {
        simplex[dim] = trial;
        values[dim] = fr;
      }
    } else if (fr < values[dim - 1]) {
      simplex[dim] = trial;
      values[dim] = fr;
    } else {
      const bool outside = fr < values[dim];
      blend(trial2, outside ? 0.5 : -0.5);
      const double fc = eval(trial2);
      if (fc < (outside ? fr : values[dim])) {
        simplex[dim] = trial2;
        values[dim] = fc;
      } else {
        for (std::size_t i = 1; i <= dim; ++i) {
          for (std::size_t k = 0; k < dim; ++k) simplex[i][k] = simplex[0][k] + 0.5 * (simplex[i][k] - simplex[0][k]);
          values[i] = eval(simplex[i]);
        }
      }
    }
    sort_simplex();
    result.trace.push_back(values[0]);

    double spread = 0.0;
    for (std::size_t i = 1; i <= dim; ++i) {
      for (std::size_t k = 0; k < dim; ++k) spread = std::max(spread, std::abs(simplex[i][k] - simplex[0][k]));
    }
    if (std::abs(values[dim] - values[0]) <= options.f_tolerance && spread <= options.x_tolerance) break;
  }
  result.x = simplex[0];
  result.value = values[0];
  return result;
}

}  // namespace membranefold
