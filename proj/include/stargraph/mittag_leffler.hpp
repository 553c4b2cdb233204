#ifndef STARGRAPH_MITTAG_LEFFLER_HPP
#define STARGRAPH_MITTAG_LEFFLER_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "stargraph/quadrature.hpp"

namespace stargraph {

namespace ml_detail {

// Series terms peak near exp(x^{1/alpha}); long double keeps ~1e-13 absolute
// accuracy up to this many e-folds of cancellation.
inline constexpr double kSeriesLimit = 15.0;
// Beyond this the optimally truncated asymptotic series is accurate to
// roughly exp(-kAsymptoticLimit).
inline constexpr double kAsymptoticLimit = 40.0;

template <class Scalar>
Scalar series(Scalar alpha, Scalar x) {
  using Wide = long double;
  const Wide wa = alpha, wx = x;
  const Wide log_x = std::log(wx);
  Wide sum = 1;
  for (int k = 1; k < 5000; ++k) {
    const Wide log_mag = k * log_x - std::lgamma(wa * k + 1);
    const Wide term = (k % 2 ? -1 : 1) * std::exp(log_mag);
    sum += term;
    // Past the peak (k alpha > x^{1/alpha}) magnitudes decrease monotonically.
    if (wa * k > std::pow(wx, 1 / wa) + 1 && std::abs(term) < 1e-24L) break;
  }
  return static_cast<Scalar>(sum);
}

// E_a(-x) ~ sum_{k>=1} (-1)^{k+1} x^{-k} / Gamma(1 - a k), truncated where the
// envelope x^{-k} Gamma(a k) / pi >= |term| starts to grow. Poles of Gamma
// (a k integer) contribute exactly 0; near-poles must not stop the sum early.
template <class Scalar>
Scalar asymptotic(Scalar alpha, Scalar x) {
  using Wide = long double;
  const Wide pi = std::numbers::pi_v<Wide>;
  const Wide wa = alpha, log_x = std::log(static_cast<Wide>(x));
  Wide sum = 0;
  Wide previous = std::numeric_limits<Wide>::infinity();
  for (int k = 1; k < 400; ++k) {
    const Wide ak = wa * k;
    const Wide envelope = std::exp(std::lgamma(ak) - k * log_x) / pi;
    if (envelope > previous) break;
    previous = envelope;
    const Wide y = 1 - ak;
    if (y <= 0 && y == std::floor(y)) continue;
    // 1 / Gamma(y) = sin(pi y) Gamma(1 - y) / pi.
    const Wide rgamma = std::sin(pi * y) * std::exp(std::lgamma(ak)) / pi;
    sum += (k % 2 ? 1 : -1) * std::exp(-k * log_x) * rgamma;
  }
  return static_cast<Scalar>(sum);
}

// E_a(-t^a) = int_0^inf e^{-r t} K_a(r) dr with the completely monotone
// spectral density K_a(r) = sin(a pi) r^{a-1} / (pi (r^{2a} + 2 r^a cos(a pi) + 1)).
template <class Scalar>
Scalar spectral(Scalar alpha, Scalar x) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar t = std::pow(x, 1 / alpha);
  const Scalar sa = std::sin(alpha * pi), ca = std::cos(alpha * pi);
  auto density = [&](Scalar r) -> Scalar {
    const Scalar ra = std::pow(r, alpha);
    return std::exp(-r * t) * sa * ra / r / (pi * (ra * ra + 2 * ra * ca + 1));
  };
  quad::Options opt;
  opt.abs_tol = 1e-15;
  opt.rel_tol = 1e-13;
  const Scalar split = 1 / t;
  const Scalar head = quad::integrate_left_singular<Scalar>(density, Scalar(0), split, 2 / alpha, opt);
  const Scalar tail = quad::integrate_to_infinity<Scalar>(density, split, opt);
  return head + tail;
}

}  // namespace ml_detail

/// Mittag-Leffler function E_alpha(z) = sum_k z^k / Gamma(alpha k + 1) on the
/// completely monotone branch z <= 0, alpha in (0, 1].
///
/// Evaluation regime is chosen by x^{1/alpha}, x = -z, which sets both the
/// cancellation in the Taylor series and the accuracy of the asymptotic one:
/// series for x^{1/alpha} <= 15, asymptotic expansion for >= 40, and the
/// spectral (Laplace-integral) representation by quadrature in between.
template <class Scalar>
Scalar mittag_leffler(Scalar alpha, Scalar z) {
  if (!(alpha > 0 && alpha <= 1)) throw std::invalid_argument("mittag_leffler: alpha must lie in (0, 1]");
  if (!(z <= 0)) throw std::invalid_argument("mittag_leffler: only z <= 0 is supported");
  if (z == 0) return 1;
  if (alpha == 1) return std::exp(z);
  const Scalar x = -z;
  const double scale = std::pow(static_cast<double>(x), 1.0 / static_cast<double>(alpha));
  if (scale <= ml_detail::kSeriesLimit) return ml_detail::series(alpha, x);
  if (scale >= ml_detail::kAsymptoticLimit) return ml_detail::asymptotic(alpha, x);
  return ml_detail::spectral(alpha, x);
}

}  // namespace stargraph

#endif  // STARGRAPH_MITTAG_LEFFLER_HPP
