#ifndef STARGRAPH_KERNELS_HPP
#define STARGRAPH_KERNELS_HPP

// Closed-form densities of one-dimensional Brownian motion used across the
// library. All functions are pure and templated on the scalar type so oracle
// computations can run in long double.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "stargraph/quadrature.hpp"

namespace stargraph::kernels {

namespace detail {
inline void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}
}  // namespace detail

/// Gaussian kernel g_t(x) = exp(-x^2 / 2t) / sqrt(2 pi t).
template <class Scalar>
Scalar heat_kernel(Scalar t, Scalar x) {
  detail::require(t > 0, "heat_kernel: t must be positive");
  const Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
  return std::exp(-x * x / (2 * t)) / std::sqrt(two_pi * t);
}

/// Entrance law of the excursion measure, K(t, x) = sqrt(2 / (pi t^3)) x exp(-x^2 / 2t).
/// Note K(t, x) = 2 (x / t) g_t(x), twice first_passage_density(t, x).
template <class Scalar>
Scalar excursion_entrance_density(Scalar t, Scalar x) {
  detail::require(t > 0 && x >= 0, "excursion_entrance_density: need t > 0, x >= 0");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  return std::sqrt(2 / (pi * t * t * t)) * x * std::exp(-x * x / (2 * t));
}

/// Density in s of the hitting time of 0 from x: (x / s) g_s(x).
template <class Scalar>
Scalar first_passage_density(Scalar s, Scalar x) {
  detail::require(s > 0 && x >= 0, "first_passage_density: need s > 0, x >= 0");
  return x / s * heat_kernel(s, x);
}

/// Laplace transform of first_passage_density in s: exp(-sqrt(2 lambda) x).
template <class Scalar>
Scalar first_passage_laplace(Scalar lambda, Scalar x) {
  detail::require(lambda >= 0 && x >= 0, "first_passage_laplace: need lambda, x >= 0");
  return std::exp(-std::sqrt(2 * lambda) * x);
}

/// Transition density of Brownian motion killed at 0: g_t(x - y) - g_t(x + y).
template <class Scalar>
Scalar killed_kernel(Scalar t, Scalar x, Scalar y) {
  detail::require(t > 0, "killed_kernel: t must be positive");
  detail::require(x >= 0 && y >= 0, "killed_kernel: x, y must be nonnegative");
  // The difference cancels badly for small x y / t; rewrite through expm1.
  const Scalar g = heat_kernel(t, x - y);
  return -g * std::expm1(-2 * x * y / t);
}

/// Excursion measure of {sigma > t}: sqrt(2 / (pi t)).
template <class Scalar>
Scalar excursion_tail(Scalar t) {
  detail::require(t > 0, "excursion_tail: t must be positive");
  return std::sqrt(2 / (std::numbers::pi_v<Scalar> * t));
}

/// Density of the first zero after time t of reflected Brownian motion from
/// the origin: 1 / (pi s sqrt((s - t) / t)) for s > t.
template <class Scalar>
Scalar entrance_time_density(Scalar s, Scalar t) {
  detail::require(t > 0 && s > t, "entrance_time_density: need s > t > 0");
  return 1 / (std::numbers::pi_v<Scalar> * s * std::sqrt((s - t) / t));
}

/// Joint density of (Z_t, l_t) for reflected motion from 0 with Skorokhod
/// local time: 2 (y + w) / t * g_t(y + w).
template <class Scalar>
Scalar joint_density_reflected(Scalar t, Scalar y, Scalar w) {
  detail::require(t > 0, "joint_density_reflected: t must be positive");
  detail::require(y >= 0 && w >= 0, "joint_density_reflected: y, w must be nonnegative");
  const Scalar s = y + w;
  return 2 * s / t * heat_kernel(t, s);
}

/// U^D_lambda f(x) = (1 / k) int_0^inf [e^{-|x - y| k} - e^{-(x + y) k}] f(y) dy,
/// k = sqrt(2 lambda): resolvent of Brownian motion killed at the origin.
template <class Scalar, class F>
Scalar dirichlet_resolvent(F&& f, Scalar lambda, Scalar x, const quad::Options& opt = {}) {
  detail::require(lambda > 0, "dirichlet_resolvent: lambda must be positive");
  detail::require(x >= 0, "dirichlet_resolvent: x must be nonnegative");
  if (x == 0) return 0;
  const Scalar k = std::sqrt(2 * lambda);
  // -expm1(-2 k min(x, y)) * e^{-k |x - y|} equals the bracket without cancellation.
  auto integrand = [&](Scalar y) -> Scalar {
    const Scalar lo = std::min(x, y);
    return -std::expm1(-2 * k * lo) * std::exp(-k * std::abs(x - y)) * f(y);
  };
  const Scalar inner = quad::integrate<Scalar>(integrand, Scalar(0), x, opt);
  const Scalar outer = quad::integrate_to_infinity<Scalar>(integrand, x, opt);
  return (inner + outer) / k;
}

}  // namespace stargraph::kernels

#endif  // STARGRAPH_KERNELS_HPP
