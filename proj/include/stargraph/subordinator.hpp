#ifndef STARGRAPH_SUBORDINATOR_HPP
#define STARGRAPH_SUBORDINATOR_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/gamma_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

namespace stargraph {

enum class SubordinatorKind { elementary, stable, gamma };

/// Thrown when an operation has no closed form for the requested kind.
class UnsupportedKind : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One of three subordinators H with Laplace exponent (Bernstein symbol) Phi:
///   elementary  H_s = s,                 Phi(l) = l
///   stable      alpha in (0, 1),         Phi(l) = l^alpha
///   gamma       shape a, rate beta > 0,  Phi(l) = a log(1 + l / beta)
class Subordinator {
 public:
  static Subordinator elementary() { return Subordinator(SubordinatorKind::elementary, 1.0, 0.0); }
  static Subordinator stable(double alpha);
  static Subordinator gamma(double shape, double rate);

  /// Parses "elementary", "stable:ALPHA" or "gamma:A,B".
  static Subordinator parse(std::string_view text);
  std::string to_string() const;

  SubordinatorKind kind() const { return kind_; }
  double alpha() const { return p1_; }
  double shape() const { return p1_; }
  double rate() const { return p2_; }

  double symbol(double lambda) const;

  /// Tail of the Levy measure, phi(t, inf). Throws UnsupportedKind for the
  /// elementary kind, which has no jump part.
  double levy_tail(double t) const;

  /// int_0^t levy_tail(s) ds. Closed form for stable; quadrature of the tail
  /// for gamma.
  double cumulative_tail(double t) const;

  /// Density of the potential measure kappa(ds). Stable only.
  double potential_density(double s) const;

  /// lim_{l -> 0} Phi(l) / l: 1 (elementary), +inf (stable), a / beta (gamma).
  double mean_rate() const;

  /// Stable and gamma laws have infinite Levy mass; the elementary one has none.
  bool has_infinite_levy_mass() const { return kind_ != SubordinatorKind::elementary; }

  /// H_{s + ds} - H_s. Stable draws use Kanter's exact representation (one
  /// uniform angle and one exponential per draw); gamma draws are
  /// Gamma(a ds, beta) variates.
  template <class URBG>
  double sample_increment(double ds, URBG& rng) const {
    if (!(ds >= 0.0)) throw std::invalid_argument("sample_increment: ds must be nonnegative");
    if (ds == 0.0) return 0.0;
    switch (kind_) {
      case SubordinatorKind::elementary:
        return ds;
      case SubordinatorKind::stable: {
        const double a = p1_;
        boost::random::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
        double u = angle(rng);
        while (u == 0.0) u = angle(rng);
        double e = boost::random::exponential_distribution<double>(1.0)(rng);
        if (e == 0.0) e = std::numeric_limits<double>::min();
        const double s = std::sin(a * u) / std::pow(std::sin(u), 1.0 / a) *
                         std::pow(std::sin((1.0 - a) * u) / e, (1.0 - a) / a);
        return std::pow(ds, 1.0 / a) * s;
      }
      case SubordinatorKind::gamma:
        return boost::random::gamma_distribution<double>(p1_ * ds, 1.0 / p2_)(rng);
    }
    return 0.0;
  }

  friend bool operator==(const Subordinator&, const Subordinator&) = default;

 private:
  Subordinator(SubordinatorKind k, double p1, double p2) : kind_(k), p1_(p1), p2_(p2) {}

  SubordinatorKind kind_;
  double p1_;
  double p2_;
};

struct TailLaplaceCheck {
  double integral;  // int_0^inf e^{-l t} levy_tail(t) dt by quadrature
  double expected;  // Phi(l) / l
};

/// Numerical Laplace transform of the Levy tail next to Phi(l) / l.
TailLaplaceCheck tail_laplace_check(const Subordinator& spec, double lambda);

/// int_0^t levy_tail(t - s) kappa(ds) by quadrature; equals 1 for Sonine pairs.
/// Stable only.
double sonine_integral(const Subordinator& spec, double t);

/// Sampled subordinator path on a nondecreasing node set s_0 = 0 < s_1 < ...
/// with H_0 = 0. Built on a uniform grid and extended lazily, either by more
/// grid steps or by one node at an arbitrary operational time.
class SubordinatorPath {
 public:
  SubordinatorPath(Subordinator spec, double step);

  /// A fixed path, mainly for tests. Throws unless times start at 0, are
  /// increasing and values are nondecreasing from 0.
  static SubordinatorPath from_values(std::vector<double> times, std::vector<double> values);

  const Subordinator& spec() const { return spec_; }
  double step() const { return step_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& values() const { return values_; }
  double horizon() const { return times_.back(); }
  double max_value() const { return values_.back(); }

  /// Append uniform steps until horizon() >= s.
  template <class URBG>
  void extend_to(double s, URBG& rng) {
    while (times_.back() < s) {
      const double next = times_.back() + step_;
      values_.push_back(next_value(next, rng));
      times_.push_back(next);
    }
  }

  /// H(s) for s >= horizon(), appending a node exactly at s.
  template <class URBG>
  double advance_to(double s, URBG& rng) {
    if (s < times_.back()) {
      throw std::invalid_argument("advance_to: operational time behind the path horizon");
    }
    if (s > times_.back()) {
      values_.push_back(next_value(s, rng));
      times_.push_back(s);
    }
    return values_.back();
  }

 private:
  // H_s = s exactly for the elementary kind, not a sum of increments.
  template <class URBG>
  double next_value(double s, URBG& rng) {
    if (spec_.kind() == SubordinatorKind::elementary) return s;
    return values_.back() + spec_.sample_increment(s - times_.back(), rng);
  }

  SubordinatorPath(Subordinator spec, double step, std::vector<double> t, std::vector<double> v)
      : spec_(spec), step_(step), times_(std::move(t)), values_(std::move(v)) {}

  Subordinator spec_;
  double step_;
  std::vector<double> times_;
  std::vector<double> values_;
};

/// Generalized right-inverse L_t = inf{s_i : H_i > t} on the path nodes.
/// Throws std::out_of_range when no node exceeds t (extend the path first).
double inverse_at(const SubordinatorPath& path, double t);

}  // namespace stargraph

#endif  // STARGRAPH_SUBORDINATOR_HPP
