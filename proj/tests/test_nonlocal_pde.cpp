#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "stargraph/kernels.hpp"
#include "stargraph/nonlocal_pde.hpp"

using namespace stargraph;
using oracle::Real;

namespace {

EdgeFunction bump_on_edge(int edge, double center = 1.0, double width = 0.15) {
  return [=](int k, double x) {
    if (k != edge) return 0.0;
    const double z = (x - center) / width;
    return std::exp(-0.5 * z * z);
  };
}

// Kirchhoff vertex (Walsh motion) with data on edge 1 only: by reflection,
// u_1(t, x) = int [g(x - y) - g(x + y)] u0 + 2 p_1 int g(x + y) u0 and
// u_k(t, x) = 2 p_1 int g(x + y) u0 for k != 1.
double walsh_oracle(const EdgeFunction& u0, double p1, double t, const GraphPoint& p) {
  const double x = p.radius;
  const Real passed = oracle::simpson(
      [&](Real y) { return kernels::heat_kernel<Real>(t, x + y) * u0(1, static_cast<double>(y)); }, 0.0L, 4.0L, 4000);
  double v = 2 * p1 * static_cast<double>(passed);
  if (p.edge == 1 && x > 0) {
    const Real killed = oracle::simpson(
        [&](Real y) { return kernels::killed_kernel<Real>(t, x, y) * u0(1, static_cast<double>(y)); }, 0.0L, 4.0L,
        4000);
    v += static_cast<double>(killed);
  }
  return v;
}

}  // namespace

TEST_CASE("memory kernel on linear and quadratic histories") {
  const double dt = 1e-3;
  const int n = 1000;
  const auto spec = Subordinator::stable(0.5);
  const auto kernel = build_kernel(spec, dt, n);
  REQUIRE(kernel.weights.size() >= static_cast<std::size_t>(n));
  for (double w : kernel.weights) CHECK(w > 0.0);
  CHECK_FALSE(kernel.local());

  std::vector<double> lin(n + 1), sq(n + 1), mix(n + 1), flat(n + 1, 3.0);
  for (int i = 0; i <= n; ++i) {
    const double t = i * dt;
    lin[static_cast<std::size_t>(i)] = t;
    sq[static_cast<std::size_t>(i)] = t * t;
    mix[static_cast<std::size_t>(i)] = 2 * t - 0.5 * t * t;
  }
  CHECK(caputo_apply(flat, kernel) == 0.0);
  CHECK(caputo_apply(mix, kernel) ==
        doctest::Approx(2 * caputo_apply(lin, kernel) - 0.5 * caputo_apply(sq, kernel)).epsilon(1e-12));

  // D t at t = 1 for stable(1/2): int_0^1 (1 - s)^{-1/2} / Gamma(1/2) ds.
  const Real linear_ref =
      oracle::tanh_sinh([](Real s) { return oracle::stable_tail(0.5L, 1 - s); }, 0.0L, 1.0L);
  CHECK(static_cast<double>(linear_ref) == doctest::Approx(1.1283792).epsilon(1e-7));
  CHECK(std::abs(caputo_apply(lin, kernel) / static_cast<double>(linear_ref) - 1) <= 1e-2);
  CHECK(caputo_quadrature(spec, [](double) { return 1.0; }, 1.0) ==
        doctest::Approx(2 / std::sqrt(std::numbers::pi)).epsilon(1e-12));

  // D t^2 = 2 t^{2 - a} / Gamma(3 - a); error ratio under halving gives the order.
  for (double alpha : {0.3, 0.5, 0.8}) {
    const auto sp = Subordinator::stable(alpha);
    const double exact = 2 / std::tgamma(3 - alpha);
    std::vector<double> err;
    for (double h : {1e-3, 5e-4, 2.5e-4}) {
      const int m = static_cast<int>(std::lround(1 / h));
      std::vector<double> hist(static_cast<std::size_t>(m) + 1);
      for (int i = 0; i <= m; ++i) hist[static_cast<std::size_t>(i)] = (i * h) * (i * h);
      err.push_back(std::abs(caputo_apply(hist, build_kernel(sp, h, m)) - exact));
    }
    const double order = std::log2(err[1] / err[2]);
    CHECK(order >= std::min(1.2, 2 - alpha - 0.1));
    CHECK(order <= 2 - alpha + 0.1);
  }
}

TEST_CASE("memory kernel for the elementary and gamma kinds") {
  const auto local = build_kernel(Subordinator::elementary(), 0.01, 50);
  CHECK(local.local());
  std::vector<double> hist{0.0, 0.3, 0.7, 1.6};
  CHECK(caputo_apply(hist, local) == doctest::Approx((1.6 - 0.7) / 0.01));
  CHECK_THROWS_AS(caputo_quadrature(Subordinator::elementary(), [](double) { return 1.0; }, 1.0), UnsupportedKind);

  const auto g = Subordinator::gamma(1.0, 1.0);
  const double dt = 1e-3;
  const int n = 1000;
  const auto kernel = build_kernel(g, dt, n);
  std::vector<double> lin(n + 1);
  for (int i = 0; i <= n; ++i) lin[static_cast<std::size_t>(i)] = i * dt;
  // Exact on linear data: D t = int_0^1 phi = E1 closed form.
  const double ref = static_cast<double>(oracle::gamma_cumulative_tail(1, 1, 1));
  CHECK(caputo_apply(lin, kernel) == doctest::Approx(ref).epsilon(1e-9));
  CHECK(caputo_quadrature(g, [](double) { return 1.0; }, 1.0) == doctest::Approx(ref).epsilon(1e-10));

  CHECK_THROWS_AS(caputo_apply(std::vector<double>{}, kernel), std::invalid_argument);
  CHECK_THROWS_AS(caputo_apply(std::vector<double>(static_cast<std::size_t>(n) + 5, 0.0), kernel), std::invalid_argument);
  CHECK_THROWS_AS(build_kernel(g, 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(build_kernel(g, 0.1, 0), std::invalid_argument);
}

TEST_CASE("solver grid validation") {
  CHECK_NOTHROW(SolverGrid{}.validate());
  CHECK(SolverGrid{}.steps() == 10000);
  CHECK_THROWS_AS((SolverGrid{8.0, 4, 1e-3, 1.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((SolverGrid{-1.0, 100, 1e-3, 1.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((SolverGrid{8.0, 100, 0.3, 1.0}).validate(), std::invalid_argument);
  CHECK(truncation_length(1.0, 1.5) >= 1.5 + 5.6);
}

TEST_CASE("constant data stay constant") {
  const StarGraph g({0.2, 0.3, 0.5});
  const auto s = StickyParams::from_bc(0.5, 0.5);
  const EdgeFunction one = [](int, double) { return 1.0; };
  const SolverGrid grid{4.0, 200, 1e-2, 1.0};
  const std::vector<double> times{0.5, 1.0};
  for (const auto& spec : {Subordinator::elementary(), Subordinator::stable(0.5), Subordinator::gamma(1, 1)}) {
    const auto field = solve_nl(g, s, spec, one, grid, times);
    for (double v : field.vertex) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& snap : field.snapshots) {
      for (const auto& e : snap.edges) CHECK((e.array() - 1.0).abs().maxCoeff() <= 1e-12);
    }
    CHECK(field.diagnostics.maximum_principle);
  }
}

TEST_CASE("Kirchhoff vertex against the Walsh-motion oracle") {
  const double p1 = 0.2;
  const StarGraph g({p1, 0.3, 0.5});
  const auto s = StickyParams::from_bc(1.0, 0.0);
  const auto u0 = bump_on_edge(1);
  const std::vector<double> times{0.1, 0.5};
  const SolverGrid grid{6.0, 1200, 2.5e-4, 0.5};
  const auto field = solve_nl(g, s, Subordinator::elementary(), u0, grid, times);
  for (double t : times) {
    for (const GraphPoint p : {kOrigin, GraphPoint{1, 0.5}, GraphPoint{1, 1.0}, GraphPoint{2, 0.4}, GraphPoint{3, 1.2}}) {
      CHECK(field.value(t, p) == doctest::Approx(walsh_oracle(u0, p1, t, p)).epsilon(5e-3).scale(1e-2));
    }
  }
  REQUIRE(field.diagnostics.mass_drift.has_value());
  CHECK(*field.diagnostics.mass_drift <= 1e-6);
  CHECK(field.diagnostics.vertex_residual <= 1e-10);
}

TEST_CASE("symmetric data on a symmetric graph stay symmetric") {
  const StarGraph g = StarGraph::uniform(3);
  const EdgeFunction u0 = [](int, double x) { return std::exp(-x * x); };
  const std::vector<double> times{0.3, 1.0};
  for (const auto s : {StickyParams::from_bc(1.0, 0.0), StickyParams::from_bc(0.5, 0.5)}) {
    const auto field = solve_nl(g, s, Subordinator::stable(0.6), u0, SolverGrid{5.0, 500, 1e-2, 1.0}, times);
    for (const auto& snap : field.snapshots) {
      CHECK(snap.edges[0] == snap.edges[1]);
      CHECK(snap.edges[1] == snap.edges[2]);
    }
  }
}

TEST_CASE("solver diagnostics and invariants") {
  const StarGraph g({0.2, 0.3, 0.5});
  const auto s = StickyParams::from_bc(0.5, 0.5);
  const auto u0 = bump_on_edge(2, 1.5, 0.2);
  const std::vector<double> times{0.25, 1.0};
  const SolverGrid grid{6.0, 600, 1e-3, 1.0};

  const auto elem = solve_nl(g, s, Subordinator::elementary(), u0, grid, times);
  CHECK(elem.diagnostics.maximum_principle);
  CHECK(elem.diagnostics.max_abs <= elem.diagnostics.initial_sup * (1 + 1e-12));
  REQUIRE(elem.diagnostics.mass_drift.has_value());
  CHECK(*elem.diagnostics.mass_drift <= 1e-5);
  // The drift is a discretization effect: halving dx cuts it by about four.
  const auto fine = solve_nl(g, s, Subordinator::elementary(), u0, SolverGrid{6.0, 1200, 1e-3, 1.0}, times);
  CHECK(*fine.diagnostics.mass_drift <= *elem.diagnostics.mass_drift / 3);
  CHECK(elem.diagnostics.vertex_residual <= 1e-10);
  CHECK(elem.vertex.size() == static_cast<std::size_t>(grid.steps()) + 1);
  CHECK(elem.vertex_at(1.0) == elem.value(1.0, kOrigin));

  const auto stab = solve_nl(g, s, Subordinator::stable(0.5), u0, grid, times);
  CHECK(stab.diagnostics.maximum_principle);
  CHECK_FALSE(stab.diagnostics.mass_drift.has_value());
  CHECK(stab.diagnostics.vertex_residual <= 1e-10);
  CHECK(stab.diagnostics.regularity.has_value());
  for (double v : stab.vertex) CHECK(v >= -1e-14);

  // Reproducible to the bit.
  const auto again = solve_nl(g, s, Subordinator::stable(0.5), u0, grid, times);
  CHECK(again.vertex == stab.vertex);

  const EdgeFunction jump = [](int k, double) { return k == 1 ? 1.0 : 0.0; };
  CHECK_THROWS_AS(solve_nl(g, s, Subordinator::elementary(), jump, grid, times), std::invalid_argument);
  const std::vector<double> late{2.0};
  CHECK_THROWS_AS(solve_nl(g, s, Subordinator::elementary(), u0, grid, late), std::out_of_range);
  CHECK_THROWS_AS(elem.value(0.5, kOrigin), std::out_of_range);
  CHECK_THROWS_AS(elem.value(1.0, GraphPoint{1, 7.0}), std::out_of_range);
}

TEST_CASE("truncation length is adequate") {
  const StarGraph g({0.2, 0.3, 0.5});
  const auto s = StickyParams::from_bc(0.5, 0.5);
  const auto u0 = bump_on_edge(1);
  const std::vector<double> times{1.0};
  const double R = truncation_length(1.0, 1.0 + 6 * 0.15);
  const double dx = 0.01;
  for (const auto& spec : {Subordinator::elementary(), Subordinator::stable(0.5)}) {
    const auto a = solve_nl(g, s, spec, u0, SolverGrid{R, static_cast<int>(std::lround(R / dx)), 1e-3, 1.0}, times);
    const auto b =
        solve_nl(g, s, spec, u0, SolverGrid{2 * R, static_cast<int>(std::lround(2 * R / dx)), 1e-3, 1.0}, times);
    CHECK(std::abs(a.vertex.back() - b.vertex.back()) <= 1e-8);
  }
}

TEST_CASE("field CSV") {
  const StarGraph g = StarGraph::uniform(2);
  const EdgeFunction u0 = [](int, double x) { return std::exp(-x); };
  const std::vector<double> times{0.0, 0.1};
  const auto field = solve_nl(g, StickyParams::from_bc(0.5, 0.5), Subordinator::elementary(), u0,
                              SolverGrid{2.0, 10, 0.05, 0.1}, times);
  std::istringstream in(field_csv(field));
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,edge,x,u");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 2 * (1 + 2 * 10));
}

TEST_CASE("solver agrees with the walk") {
  const StarGraph g({0.2, 0.3, 0.5});
  const auto s = StickyParams::from_bc(0.5, 0.5);
  const auto u0 = bump_on_edge(1);
  const std::vector<double> times{0.25, 1.0};
  const std::vector<GraphPoint> points{kOrigin, GraphPoint{1, 0.8}};
  const SolverGrid grid{7.0, 1400, 1e-3, 1.0};
  McOptions opt;
  opt.paths = 8000;
  opt.dt = 1e-3;
  opt.seed = 5;
  for (const auto& spec : {Subordinator::elementary(), Subordinator::stable(0.5)}) {
    const auto field = solve_nl(g, s, spec, u0, grid, times);
    // Statistical resolution here is ~3 stderr; the walk's own step bias is
    // covered by a sqrt(dt) allowance.
    const auto report = mc_crosscheck(field, g, s, spec, u0, times, points, opt, 0.5 * std::sqrt(opt.dt));
    for (const auto& e : report.entries) CHECK(e.pass);
    CHECK(report.pass);

    McOptions big = opt;
    big.paths = 4 * opt.paths;
    const std::vector<double> one_time{1.0};
    const std::vector<GraphPoint> origin{kOrigin};
    const auto small_run = mc_crosscheck(field, g, s, spec, u0, one_time, origin, opt, 0.0);
    const auto large_run = mc_crosscheck(field, g, s, spec, u0, one_time, origin, big, 0.0);
    const double ratio =
        small_run.entries[0].monte_carlo.std_error / large_run.entries[0].monte_carlo.std_error;
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.15));
  }
}
