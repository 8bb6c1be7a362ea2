#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace xyq {

struct SimplexOptions {
  double x_tol = 1e-6;   // stop when every vertex lies within x_tol of the best one
  double f_tol = 1e-10;  // or when the vertex values spread by less than f_tol
  int max_iterations = 500;
};

template <int N>
struct SimplexResult {
  Eigen::Matrix<double, N, 1> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead minimization with the standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
/// The initial simplex is x0 plus x0 + step_i e_i.
template <int N, typename F>
SimplexResult<N> nelder_mead(F&& f, const Eigen::Matrix<double, N, 1>& x0,
                             const Eigen::Matrix<double, N, 1>& step,
                             const SimplexOptions& options = {}) {
  using Point = Eigen::Matrix<double, N, 1>;
  constexpr int kVertices = N + 1;

  std::array<Point, kVertices> x;
  std::array<double, kVertices> fx;
  x[0] = x0;
  fx[0] = f(x0);
  for (int i = 0; i < N; ++i) {
    x[i + 1] = x0;
    x[i + 1](i) += step(i);
    fx[i + 1] = f(x[i + 1]);
  }

  std::array<int, kVertices> order;
  auto sort_vertices = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fx[a] < fx[b]; });
    std::array<Point, kVertices> xs;
    std::array<double, kVertices> fs;
    for (int k = 0; k < kVertices; ++k) {
      xs[k] = x[order[k]];
      fs[k] = fx[order[k]];
    }
    x = xs;
    fx = fs;
  };

  SimplexResult<N> result;
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    sort_vertices();
    if (!std::isfinite(fx[0])) break;

    double diameter = 0.0;
    for (int k = 1; k < kVertices; ++k) diameter = std::max(diameter, (x[k] - x[0]).norm());
    if (diameter < options.x_tol || std::abs(fx[N] - fx[0]) < options.f_tol) {
      result.converged = true;
      break;
    }

    Point centroid = Point::Zero();
    for (int k = 0; k < N; ++k) centroid += x[k];
    centroid /= static_cast<double>(N);

    const Point xr = centroid + (centroid - x[N]);
    const double fr = f(xr);
    if (fr < fx[0]) {
      const Point xe = centroid + 2.0 * (xr - centroid);
      const double fe = f(xe);
      if (fe < fr) {
        x[N] = xe;
        fx[N] = fe;
      } else {
        x[N] = xr;
        fx[N] = fr;
      }
      continue;
    }
    if (fr < fx[N - 1]) {
      x[N] = xr;
      fx[N] = fr;
      continue;
    }

    const bool outside = fr < fx[N];
    const Point xc = outside ? Point(centroid + 0.5 * (xr - centroid))
                             : Point(centroid + 0.5 * (x[N] - centroid));
    const double fc = f(xc);
    if (fc < (outside ? fr : fx[N])) {
      x[N] = xc;
      fx[N] = fc;
      continue;
    }

    for (int k = 1; k < kVertices; ++k) {
      x[k] = x[0] + 0.5 * (x[k] - x[0]);
      fx[k] = f(x[k]);
    }
  }
  sort_vertices();
  result.x = x[0];
  result.value = fx[0];
  result.iterations = iter;
  return result;
}

}  // namespace xyq
