#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "stargraph/montecarlo.hpp"
#include "stargraph/rng.hpp"

using namespace stargraph;

namespace {

McOptions options(std::size_t paths, double dt, std::uint64_t seed, int workers = 1) {
  McOptions opt;
  opt.paths = paths;
  opt.dt = dt;
  opt.seed = seed;
  opt.workers = workers;
  return opt;
}

}  // namespace

TEST_CASE("option validation") {
  CHECK_NOTHROW(McOptions{}.validate());
  CHECK_THROWS_AS(options(0, 1e-3, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(options(10, 0.0, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(options(10, 1e-3, 1, 0).validate(), std::invalid_argument);
}

TEST_CASE("exit distribution from a ball") {
  const StarGraph g({0.2, 0.3, 0.5});
  const auto s = StickyParams::from_bc(0.5, 0.5);
  const auto opt = options(4000, 1e-4, 11);
  const auto rep = estimate_exit(g, GraphPoint{1, 0.5}, 1.0, s, opt);
  REQUIRE(rep.edge_probabilities.size() == 3);
  CHECK(rep.capped == 0);
  CHECK(std::accumulate(rep.edge_counts.begin(), rep.edge_counts.end(), std::size_t{0}) == opt.paths);
  double total = 0.0;
  for (const auto& e : rep.edge_probabilities) {
    total += e.value;
    REQUIRE(e.analytic.has_value());
    CHECK(e.within(4.0));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  // The exit-time mean carries the sqrt(dt) monitoring bias of the walk.
  REQUIRE(rep.mean_exit_time.analytic.has_value());
  CHECK(rep.mean_exit_time.within(4.0, std::sqrt(opt.dt) * 3));
  CHECK_THROWS_AS(estimate_exit(g, GraphPoint{1, 1.5}, 1.0, s, opt), std::invalid_argument);
}

TEST_CASE("resolvent estimates") {
  const StarGraph g({0.2, 0.3, 0.5});
  const auto s = StickyParams::from_bc(0.5, 0.5);
  SUBCASE("zero data give exactly zero") {
    const EdgeFunction zero = [](int, double) { return 0.0; };
    const auto rep = estimate_resolvent(g, s, Subordinator::elementary(), zero, 0.0, 1.0, kOrigin,
                                        options(200, 1e-3, 3));
    CHECK(rep.estimate.value == 0.0);
    CHECK(rep.estimate.std_error == 0.0);
  }
  SUBCASE("trapped with elementary H is the sticky walk") {
    const EdgeFunction f = [](int k, double x) { return (k == 1 ? 1.0 : 0.5) * std::exp(-x); };
    const auto a = estimate_resolvent(g, s, Subordinator::elementary(), f, 1.0, 1.0, kOrigin, options(500, 1e-3, 4));
    CHECK(a.oracle_params.b == s.b);
    CHECK(a.truncation == doctest::Approx(12.0));
    CHECK(a.truncation_bound == doctest::Approx(std::exp(-12.0)));
    const auto b = estimate_resolvent(g, s, Subordinator::elementary(), f, 1.0, 1.0, kOrigin, options(500, 1e-3, 4));
    CHECK(a.estimate.value == b.estimate.value);
  }
  SUBCASE("sticky resolvent at the vertex") {
    const EdgeFunction one_edge = [](int k, double) { return k == 1 ? 1.0 : 0.0; };
    const auto opt = options(3000, 1e-3, 8);
    const auto rep = estimate_resolvent(g, s, Subordinator::elementary(), one_edge, 1.0, 1.0, kOrigin, opt);
    REQUIRE(rep.estimate.analytic.has_value());
    CHECK(rep.estimate.within(4.0, rep.truncation_bound + 0.5 * std::sqrt(opt.dt)));
  }
}

TEST_CASE("holding times") {
  const std::vector<double> grid{0.1, 0.5, 1.0, 3.0};
  SUBCASE("elementary H gives the exponential law") {
    const double theta = 0.7;
    const auto xs = sample_holding_times(theta, Subordinator::elementary(), 100000, 21);
    const double d = ks_one_sample_statistic(xs, [&](double t) { return 1 - std::exp(-t / theta); });
    CHECK(d <= ks_one_sample_critical_1pct(xs.size()));
    const auto rep = estimate_holding_survival(theta, Subordinator::elementary(), grid, 100000, 21);
    CHECK(rep.ks_pass);
    for (const auto& e : rep.survival) CHECK(e.within(4.0));
  }
  SUBCASE("stable(1/2) H gives the Mittag-Leffler law") {
    const double theta = 1.3;
    const auto xs = sample_holding_times(theta, Subordinator::stable(0.5), 100000, 22);
    const double d = ks_one_sample_statistic(xs, [&](double t) {
      return 1 - static_cast<double>(oracle::mittag_leffler_half(std::sqrt(t) / theta));
    });
    CHECK(d <= ks_one_sample_critical_1pct(xs.size()));
    const auto rep = estimate_holding_survival(theta, Subordinator::stable(0.5), grid, 100000, 22);
    CHECK(rep.ks_pass);
    for (const auto& e : rep.survival) CHECK(e.within(4.0));
  }
  SUBCASE("workers do not change the draws") {
    CHECK(sample_holding_times(1.0, Subordinator::stable(0.7), 5000, 3, 1) ==
          sample_holding_times(1.0, Subordinator::stable(0.7), 5000, 3, 3));
  }
}

TEST_CASE("long excursions") {
  CHECK(long_excursion_rate(2 / std::numbers::pi) == doctest::Approx(1.0).epsilon(1e-14));
  SUBCASE("streaming walks") {
    const double t = 2 / std::numbers::pi, s = 5.0;
    const auto rep = simulate_long_excursions(t, s, 400, 1e-4, 17);
    REQUIRE(rep.mean_count.analytic.has_value());
    CHECK(*rep.mean_count.analytic == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(rep.counts.size() == 400);
    CHECK(rep.mean_count.within(4.0, 5 * std::sqrt(1e-4) * 5));
    CHECK(rep.dispersion == doctest::Approx(1.0).epsilon(0.35));
    CHECK(simulate_long_excursions(t, s, 400, 1e-4, 17).counts == rep.counts);
  }
  SUBCASE("stored paths") {
    auto rng = make_stream(4, 0);
    std::vector<ReflectedPath> paths;
    while (paths.size() < 50) {
      auto path = simulate_reflected(0.0, 20.0, 1e-3, rng);
      if (path.local_time.maxCoeff() >= 1.0) paths.push_back(std::move(path));
    }
    const auto rep = count_long_excursions(paths, 0.5, 1.0);
    CHECK(rep.counts.size() == 50);
    CHECK_THROWS_AS(count_long_excursions(paths, 5e-3, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(count_long_excursions(paths, 0.5, 1e3), std::runtime_error);
  }
}

TEST_CASE("occupation of the vertex") {
  const StarGraph g({0.2, 0.3, 0.5});
  const auto opt = options(3000, 1e-3, 13);
  const double horizon = 2.0;
  const auto kirchhoff = occupation_fraction_at_vertex(g, StickyParams::from_bc(1.0, 0.0),
                                                       Subordinator::elementary(), horizon, opt);
  CHECK(kirchhoff.value <= 0.05);
  std::vector<EstimateWithCI> by_theta;
  for (double theta : {0.5, 1.0, 2.0}) {
    by_theta.push_back(
        occupation_fraction_at_vertex(g, StickyParams::from_theta(theta), Subordinator::elementary(), horizon, opt));
  }
  for (std::size_t i = 0; i + 1 < by_theta.size(); ++i) {
    CHECK(by_theta[i + 1].value - by_theta[i].value >
          3 * std::hypot(by_theta[i].std_error, by_theta[i + 1].std_error));
  }
  const auto trapped = occupation_fraction_at_vertex(g, StickyParams::from_theta(1.0), Subordinator::stable(0.5),
                                                     horizon, opt);
  CHECK(trapped.value - by_theta[1].value > 3 * std::hypot(trapped.std_error, by_theta[1].std_error));
}

TEST_CASE("expectations: error scaling and reproducibility") {
  const StarGraph g({0.2, 0.3, 0.5});
  const auto s = StickyParams::from_bc(0.5, 0.5);
  const EdgeFunction u0 = [](int k, double x) { return k == 1 ? std::exp(-x) : std::exp(-2 * x); };
  const std::vector<double> times{0.5, 1.0};
  const auto a = estimate_expectation(g, s, Subordinator::stable(0.5), u0, kOrigin, times, options(2000, 1e-3, 6));
  const auto b = estimate_expectation(g, s, Subordinator::stable(0.5), u0, kOrigin, times, options(4000, 1e-3, 6));
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(a[i].std_error / b[i].std_error == doctest::Approx(std::sqrt(2.0)).epsilon(0.1));
  }
  const auto c = estimate_expectation(g, s, Subordinator::stable(0.5), u0, kOrigin, times, options(2000, 1e-3, 6, 3));
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(a[i].value == c[i].value);
    CHECK(a[i].std_error == c[i].std_error);
  }
  const std::vector<double> unordered{1.0, 0.5};
  CHECK_THROWS_AS(estimate_expectation(g, s, Subordinator::elementary(), u0, kOrigin, unordered, options(10, 1e-3, 1)),
                  std::invalid_argument);
}
