#pragma once

// Globally adaptive Gauss-Kronrod (G10/K21) integration over a finite
// interval. The integrand may be scalar (double) or a fixed-size
// Eigen::Array of doubles; for arrays every component has to meet its own
// tolerance max(abs_tol, rel_tol * |value_i|).

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

#include "xyquench/errors.hpp"
#include "xyquench/model.hpp"

namespace xyq {

namespace detail {

inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Weights of the embedded 10-point Gauss rule, attached to the odd Kronrod nodes.
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <typename Value>
struct QuadTraits {
  static Value zero(const Value& like) { return Value::Zero(like.size()); }
  static Value abs(const Value& v) { return v.abs(); }
  static int size(const Value& v) { return static_cast<int>(v.size()); }
  static double at(const Value& v, int i) { return v(i); }
};

template <>
struct QuadTraits<double> {
  static double zero(double) { return 0.0; }
  static double abs(double v) { return std::abs(v); }
  static int size(double) { return 1; }
  static double at(double v, int) { return v; }
};

template <typename Value>
struct Panel {
  double lo;
  double hi;
  Value value;
  Value error;
};

template <typename Value, typename F>
Panel<Value> gauss_kronrod_21(F& f, double lo, double hi) {
  using T = QuadTraits<Value>;
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  const Value f_center = f(center);
  Value kronrod = f_center * kKronrodWeights[10];
  Value gauss = T::zero(f_center);
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kKronrodNodes[j];
    const Value pair = f(center - dx) + f(center + dx);
    kronrod += pair * kKronrodWeights[j];
    if (j % 2 == 1) gauss += pair * kGaussWeights[j / 2];
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, T::abs(kronrod - gauss)};
}

}  // namespace detail

template <typename Value>
struct QuadratureResult {
  Value value;
  Value abs_error;
  int panels = 0;
  int evaluations = 0;
};

/// Integrates `f` over [lo, hi]. Panels are bisected, worst first, until the
/// summed embedded error estimate meets the tolerance of every component.
/// Throws QuadratureFailure when that needs more than max_subdivisions panels.
template <typename Value, typename F>
QuadratureResult<Value> integrate_adaptive(F&& f, double lo, double hi,
                                           const QuadratureSpec& spec) {
  using T = detail::QuadTraits<Value>;
  spec.validate();

  std::vector<detail::Panel<Value>> panels;
  panels.reserve(static_cast<std::size_t>(std::min(spec.max_subdivisions, 4096)));
  panels.push_back(detail::gauss_kronrod_21<Value>(f, lo, hi));
  int evaluations = 21;

  const int n_comp = T::size(panels.front().value);
  std::vector<double> tol(static_cast<std::size_t>(n_comp));

  for (;;) {
    Value total = panels.front().value;
    Value total_err = panels.front().error;
    for (std::size_t p = 1; p < panels.size(); ++p) {
      total += panels[p].value;
      total_err += panels[p].error;
    }

    bool converged = true;
    for (int i = 0; i < n_comp; ++i) {
      tol[static_cast<std::size_t>(i)] =
          std::max(spec.abs_tol, spec.rel_tol * std::abs(T::at(total, i)));
      const double e = T::at(total_err, i);
      if (!(e <= tol[static_cast<std::size_t>(i)])) converged = false;
    }
    if (converged) {
      return {total, total_err, static_cast<int>(panels.size()), evaluations};
    }

    // Pick the panel carrying the largest tolerance-normalized error.
    std::size_t worst = 0;
    double worst_score = -1.0;
    for (std::size_t p = 0; p < panels.size(); ++p) {
      double score = 0.0;
      for (int i = 0; i < n_comp; ++i) {
        score = std::max(score, T::at(panels[p].error, i) / tol[static_cast<std::size_t>(i)]);
      }
      if (score > worst_score) {
        worst_score = score;
        worst = p;
      }
    }

    const detail::Panel<Value> parent = panels[worst];
    const double mid = 0.5 * (parent.lo + parent.hi);
    const bool too_narrow = !(mid > parent.lo && mid < parent.hi);
    if (static_cast<int>(panels.size()) >= spec.max_subdivisions || too_narrow ||
        !std::isfinite(worst_score)) {
      throw QuadratureFailure(
          "adaptive quadrature did not reach tolerance within " +
          std::to_string(spec.max_subdivisions) + " subdivisions on [" + std::to_string(lo) +
          ", " + std::to_string(hi) + "]");
    }
    panels[worst] = detail::gauss_kronrod_21<Value>(f, parent.lo, mid);
    panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1,
                  detail::gauss_kronrod_21<Value>(f, mid, parent.hi));
    evaluations += 42;
  }
}

}  // namespace xyq
