#include "stargraph/subordinator.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

#include "stargraph/quadrature.hpp"

namespace stargraph {

namespace {

double parse_number(std::string_view text, std::string_view context) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw std::invalid_argument("subordinator: bad number '" + std::string(text) + "' in '" +
                                std::string(context) + "'");
  }
  return value;
}

double exponential_integral_e1(double x) { return -std::expint(-x); }

}  // namespace

Subordinator Subordinator::stable(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("stable subordinator needs alpha in (0, 1)");
  }
  return Subordinator(SubordinatorKind::stable, alpha, 0.0);
}

Subordinator Subordinator::gamma(double shape, double rate) {
  if (!(shape > 0.0 && rate > 0.0) || !std::isfinite(shape) || !std::isfinite(rate)) {
    throw std::invalid_argument("gamma subordinator needs shape > 0 and rate > 0");
  }
  return Subordinator(SubordinatorKind::gamma, shape, rate);
}

Subordinator Subordinator::parse(std::string_view text) {
  if (text == "elementary") return elementary();
  if (text.starts_with("stable:")) return stable(parse_number(text.substr(7), text));
  if (text.starts_with("gamma:")) {
    const auto args = text.substr(6);
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) {
      throw std::invalid_argument("gamma subordinator expects gamma:A,B, got '" +
                                  std::string(text) + "'");
    }
    return gamma(parse_number(args.substr(0, comma), text), parse_number(args.substr(comma + 1), text));
  }
  throw std::invalid_argument("unknown subordinator '" + std::string(text) +
                              "' (expected elementary | stable:ALPHA | gamma:A,B)");
}

std::string Subordinator::to_string() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case SubordinatorKind::elementary:
      return "elementary";
    case SubordinatorKind::stable:
      os << "stable:" << p1_;
      break;
    case SubordinatorKind::gamma:
      os << "gamma:" << p1_ << "," << p2_;
      break;
  }
  return os.str();
}

double Subordinator::symbol(double lambda) const {
  if (!(lambda > 0.0)) throw std::invalid_argument("symbol: lambda must be positive");
  switch (kind_) {
    case SubordinatorKind::elementary:
      return lambda;
    case SubordinatorKind::stable:
      return std::pow(lambda, p1_);
    case SubordinatorKind::gamma:
      return p1_ * std::log1p(lambda / p2_);
  }
  return 0.0;
}

double Subordinator::levy_tail(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("levy_tail: t must be positive");
  switch (kind_) {
    case SubordinatorKind::elementary:
      throw UnsupportedKind("levy_tail: the elementary subordinator has no jump part");
    case SubordinatorKind::stable:
      return std::pow(t, -p1_) / std::tgamma(1.0 - p1_);
    case SubordinatorKind::gamma:
      // Levy measure a z^{-1} e^{-beta z} dz.
      return p1_ * exponential_integral_e1(p2_ * t);
  }
  return 0.0;
}

double Subordinator::cumulative_tail(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("cumulative_tail: t must be nonnegative");
  if (t == 0.0) return 0.0;
  switch (kind_) {
    case SubordinatorKind::elementary:
      throw UnsupportedKind("cumulative_tail: the elementary subordinator has no jump part");
    case SubordinatorKind::stable:
      return std::pow(t, 1.0 - p1_) / std::tgamma(2.0 - p1_);
    case SubordinatorKind::gamma: {
      // Logarithmic singularity at 0; u^3 substitution flattens it.
      quad::Options opt;
      opt.abs_tol = 1e-14;
      opt.rel_tol = 1e-13;
      return quad::integrate_left_singular<double>([this](double s) { return levy_tail(s); }, 0.0,
                                                   t, 3.0, opt);
    }
  }
  return 0.0;
}

double Subordinator::potential_density(double s) const {
  if (!(s > 0.0)) throw std::invalid_argument("potential_density: s must be positive");
  if (kind_ != SubordinatorKind::stable) {
    throw UnsupportedKind("potential_density: closed form available for the stable kind only");
  }
  return std::pow(s, p1_ - 1.0) / std::tgamma(p1_);
}

double Subordinator::mean_rate() const {
  switch (kind_) {
    case SubordinatorKind::elementary:
      return 1.0;
    case SubordinatorKind::stable:
      return std::numeric_limits<double>::infinity();
    case SubordinatorKind::gamma:
      return p1_ / p2_;
  }
  return 0.0;
}

TailLaplaceCheck tail_laplace_check(const Subordinator& spec, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("tail_laplace_check: lambda must be positive");
  if (spec.kind() == SubordinatorKind::elementary) {
    throw UnsupportedKind("tail_laplace_check: the elementary subordinator has no Levy tail");
  }
  auto integrand = [&](double t) { return std::exp(-lambda * t) * spec.levy_tail(t); };
  const double m = spec.kind() == SubordinatorKind::stable ? 2.0 / (1.0 - spec.alpha()) : 3.0;
  quad::Options opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-12;
  // Split at the scale 1 / lambda: singular head, smooth exponential tail.
  const double split = std::min(1.0, 1.0 / lambda);
  const double head = quad::integrate_left_singular<double>(integrand, 0.0, split, m, opt);
  const double tail = quad::integrate_to_infinity<double>(integrand, split, opt);
  return {head + tail, spec.symbol(lambda) / lambda};
}

double sonine_integral(const Subordinator& spec, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("sonine_integral: t must be positive");
  if (spec.kind() != SubordinatorKind::stable) {
    throw UnsupportedKind("sonine_integral: potential density known for the stable kind only");
  }
  const double a = spec.alpha();
  auto integrand = [&](double s) { return spec.levy_tail(t - s) * spec.potential_density(s); };
  quad::Options opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-12;
  // kappa ~ s^{a-1} at 0, tail ~ (t-s)^{-a} at t.
  const double left = quad::integrate_left_singular<double>(integrand, 0.0, t / 2, 2.0 / a, opt);
  // Near s = t integrate in the gap g = t - s so the tail is never evaluated
  // at a cancelled difference.
  auto by_gap = [&](double g) { return spec.levy_tail(g) * spec.potential_density(t - g); };
  const double right = quad::integrate_left_singular<double>(by_gap, 0.0, t / 2, 2.0 / (1.0 - a), opt);
  return left + right;
}

SubordinatorPath::SubordinatorPath(Subordinator spec, double step)
    : spec_(spec), step_(step), times_{0.0}, values_{0.0} {
  if (!(step > 0.0)) throw std::invalid_argument("SubordinatorPath: step must be positive");
}

SubordinatorPath SubordinatorPath::from_values(std::vector<double> times, std::vector<double> values) {
  if (times.empty() || times.size() != values.size()) {
    throw std::invalid_argument("SubordinatorPath: need matching nonempty time and value grids");
  }
  if (times.front() != 0.0 || values.front() != 0.0) {
    throw std::invalid_argument("SubordinatorPath: path must start at (0, 0)");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1]) || values[i] < values[i - 1]) {
      throw std::invalid_argument("SubordinatorPath: times increasing, values nondecreasing");
    }
  }
  const double step = times.size() > 1 ? times[1] - times[0] : 1.0;
  return SubordinatorPath(Subordinator::elementary(), step, std::move(times), std::move(values));
}

double inverse_at(const SubordinatorPath& path, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("inverse_at: t must be nonnegative");
  const auto& h = path.values();
  const auto it = std::upper_bound(h.begin(), h.end(), t);
  if (it == h.end()) {
    throw std::out_of_range("inverse_at: t beyond the simulated range of H; extend the path");
  }
  return path.times()[static_cast<std::size_t>(it - h.begin())];
}

}  // namespace stargraph
