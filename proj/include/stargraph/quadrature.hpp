#ifndef STARGRAPH_QUADRATURE_HPP
#define STARGRAPH_QUADRATURE_HPP

// Globally adaptive 7/15-point Gauss-Kronrod quadrature with interval maps for
// half-lines and algebraic endpoint singularities.

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace stargraph::quad {

template <class Scalar>
struct Result {
  Scalar value{};
  Scalar error{};
  int intervals = 0;
  bool converged = false;
};

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

namespace detail {

inline constexpr std::array<long double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
inline constexpr std::array<long double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
// Gauss weights for the odd Kronrod nodes 1, 3, 5 and the center.
inline constexpr std::array<long double, 4> kGaussWeights = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

template <class Scalar>
struct Segment {
  Scalar a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class Scalar, class F>
Segment<Scalar> gk15(F& f, Scalar a, Scalar b) {
  const Scalar center = (a + b) / 2;
  const Scalar half = (b - a) / 2;
  const Scalar fc = f(center);
  Scalar kronrod = fc * static_cast<Scalar>(kKronrodWeights[7]);
  Scalar gauss = fc * static_cast<Scalar>(kGaussWeights[3]);
  for (int j = 0; j < 7; ++j) {
    const Scalar dx = half * static_cast<Scalar>(kKronrodNodes[j]);
    const Scalar pair = f(center - dx) + f(center + dx);
    kronrod += static_cast<Scalar>(kKronrodWeights[j]) * pair;
    if (j % 2 == 1) gauss += static_cast<Scalar>(kGaussWeights[j / 2]) * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Integrate f over [a, b]. The result carries converged = false instead of
/// throwing; see integrate() for the throwing variant.
template <class Scalar = double, class F>
Result<Scalar> integrate_adaptive(F&& f, Scalar a, Scalar b, const Options& opt = {}) {
  Result<Scalar> out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<detail::Segment<Scalar>> heap;
  heap.push(detail::gk15<Scalar>(f, a, b));
  Scalar total = heap.top().value;
  Scalar error = heap.top().error;
  int count = 1;
  while (true) {
    const Scalar tol = std::max<Scalar>(static_cast<Scalar>(opt.abs_tol),
                                        static_cast<Scalar>(opt.rel_tol) * std::abs(total));
    if (error <= tol) {
      out.converged = true;
      break;
    }
    if (count >= opt.max_intervals) break;
    const auto worst = heap.top();
    const Scalar mid = (worst.a + worst.b) / 2;
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted in floating point
    heap.pop();
    const auto left = detail::gk15<Scalar>(f, worst.a, mid);
    const auto right = detail::gk15<Scalar>(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  // Re-sum from the segments to shed drift accumulated by the running updates.
  Scalar value = 0, err = 0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = value;
  out.error = err;
  out.intervals = count;
  if (!out.converged) {
    out.converged = err <= std::max<Scalar>(static_cast<Scalar>(opt.abs_tol),
                                            static_cast<Scalar>(opt.rel_tol) * std::abs(value));
  }
  return out;
}

template <class Scalar>
Scalar value_or_throw(const Result<Scalar>& r, const char* what) {
  if (!r.converged) {
    throw std::runtime_error(std::string(what) + ": quadrature did not converge (error estimate " +
                             std::to_string(static_cast<double>(r.error)) + ")");
  }
  return r.value;
}

template <class Scalar = double, class F>
Scalar integrate(F&& f, Scalar a, Scalar b, const Options& opt = {}) {
  return value_or_throw(integrate_adaptive<Scalar>(f, a, b, opt), "integrate");
}

/// Integral over [a, infinity) through x = a + u / (1 - u).
template <class Scalar = double, class F>
Result<Scalar> integrate_to_infinity_adaptive(F&& f, Scalar a, const Options& opt = {}) {
  auto mapped = [&](Scalar u) -> Scalar {
    const Scalar w = 1 - u;
    const Scalar x = a + u / w;
    if (!std::isfinite(static_cast<double>(x))) return 0;
    return f(x) / (w * w);
  };
  return integrate_adaptive<Scalar>(mapped, Scalar(0), Scalar(1), opt);
}

template <class Scalar = double, class F>
Scalar integrate_to_infinity(F&& f, Scalar a, const Options& opt = {}) {
  return value_or_throw(integrate_to_infinity_adaptive<Scalar>(f, a, opt), "integrate_to_infinity");
}

/// Integral over [a, b] for f with an integrable power singularity at a,
/// through x = a + (b - a) u^m. Choose m so that m * (1 - p) >= 2 for a
/// singularity |x - a|^(-p).
template <class Scalar = double, class F>
Scalar integrate_left_singular(F&& f, Scalar a, Scalar b, Scalar m, const Options& opt = {}) {
  auto mapped = [&](Scalar u) -> Scalar {
    if (u <= 0) return 0;
    const Scalar um1 = std::pow(u, m - 1);
    const Scalar x = a + (b - a) * um1 * u;
    if (x <= a) return 0;
    return f(x) * m * (b - a) * um1;
  };
  return value_or_throw(integrate_adaptive<Scalar>(mapped, Scalar(0), Scalar(1), opt),
                        "integrate_left_singular");
}

/// Mirror of integrate_left_singular for a singularity at b.
template <class Scalar = double, class F>
Scalar integrate_right_singular(F&& f, Scalar a, Scalar b, Scalar m, const Options& opt = {}) {
  auto mapped = [&](Scalar u) -> Scalar {
    if (u <= 0) return 0;
    const Scalar um1 = std::pow(u, m - 1);
    const Scalar x = b - (b - a) * um1 * u;
    if (x >= b) return 0;
    return f(x) * m * (b - a) * um1;
  };
  return value_or_throw(integrate_adaptive<Scalar>(mapped, Scalar(0), Scalar(1), opt),
                        "integrate_right_singular");
}

}  // namespace stargraph::quad

#endif  // STARGRAPH_QUADRATURE_HPP
