#include "stargraph/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <boost/random/normal_distribution.hpp>

#include "stargraph/parallel.hpp"
#include "stargraph/rng.hpp"

namespace stargraph {

namespace {

Eigen::Index steps_for(double horizon, double dt) {
  return static_cast<Eigen::Index>(std::ceil(horizon / dt)) + 2;
}

// Discounted integral of the constant f0 over the clock interval [a, b] clipped at T.
double clipped_exp_integral(double a, double b, double horizon, double lambda) {
  a = std::min(a, horizon);
  b = std::min(b, horizon);
  if (!(b > a)) return 0.0;
  return (std::exp(-lambda * a) - std::exp(-lambda * b)) / lambda;
}

ExcursionReport summarize_counts(std::vector<std::size_t> counts, double t, double s) {
  ExcursionReport rep;
  std::vector<double> xs(counts.begin(), counts.end());
  rep.mean_count = mean_estimate(xs);
  const double oracle = s * long_excursion_rate(t);
  rep.mean_count.attach(oracle);
  const double mean = rep.mean_count.value;
  const double var = rep.mean_count.std_error * rep.mean_count.std_error * static_cast<double>(xs.size());
  rep.dispersion = mean > 0.0 ? var / mean : 0.0;

  // Chi-square against Poisson(oracle) with tails pooled until every bin expects >= 5.
  const auto n = static_cast<double>(counts.size());
  if (!counts.empty() && oracle > 0.0) {
    boost::math::poisson_distribution<double> law(oracle);
    std::size_t lo = 0;
    while (n * boost::math::cdf(law, static_cast<double>(lo)) < 5.0 && static_cast<double>(lo) < oracle) ++lo;
    std::size_t hi = static_cast<std::size_t>(std::ceil(oracle));
    while (n * boost::math::cdf(boost::math::complement(law, static_cast<double>(hi))) >= 5.0) ++hi;
    if (hi > lo + 1) {
      std::vector<double> observed(hi - lo + 1, 0.0), expected(hi - lo + 1, 0.0);
      for (std::size_t c : counts) observed[std::clamp(c, lo, hi) - lo] += 1.0;
      expected.front() = n * boost::math::cdf(law, static_cast<double>(lo));
      for (std::size_t k = lo + 1; k < hi; ++k) expected[k - lo] = n * boost::math::pdf(law, static_cast<double>(k));
      expected.back() = n * boost::math::cdf(boost::math::complement(law, static_cast<double>(hi - 1)));
      double stat = 0.0;
      for (std::size_t k = 0; k < observed.size(); ++k) {
        stat += (observed[k] - expected[k]) * (observed[k] - expected[k]) / expected[k];
      }
      rep.chi_square = stat;
      rep.chi_square_dof = static_cast<int>(observed.size()) - 1;
      rep.chi_square_p = boost::math::cdf(
          boost::math::complement(boost::math::chi_squared_distribution<double>(rep.chi_square_dof), stat));
    }
  }
  rep.counts = std::move(counts);
  return rep;
}

}  // namespace

void McOptions::validate() const {
  if (paths < 2) throw std::invalid_argument("Monte Carlo needs at least 2 paths");
  if (!(dt > 0.0)) throw std::invalid_argument("Monte Carlo dt must be positive");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
}

ExitReport estimate_exit(const StarGraph& g, GraphPoint start, double r, const StickyParams& s,
                         const McOptions& opt) {
  opt.validate();
  g.validate(start);
  if (!(r > 0.0)) throw std::invalid_argument("estimate_exit: radius must be positive");
  if (!(start.radius < r)) throw std::invalid_argument("estimate_exit: start must lie inside the ball");

  const double theta = s.theta();
  const auto elementary = Subordinator::elementary();
  const double cap = 50.0 * r * r;
  const Eigen::Index max_steps = steps_for(cap, opt.dt);
  std::vector<int> exit_edge(opt.paths, 0);
  std::vector<double> exit_clock(opt.paths, 0.0);

  parallel_for(opt.paths, opt.workers, [&](std::size_t i) {
    auto streams = WalkStreams::make(opt.seed, i);
    TimeChangedWalker walk(g, start, theta, elementary, opt.dt, streams);
    while (walk.radius() < r) {
      if (walk.index() >= max_steps) return;
      walk.step();
    }
    exit_edge[i] = walk.edge();
    exit_clock[i] = walk.clock();
  });

  ExitReport rep;
  rep.safety_horizon = cap;
  rep.edge_counts.assign(static_cast<std::size_t>(g.n_edges()), 0);
  std::vector<double> times;
  times.reserve(opt.paths);
  for (std::size_t i = 0; i < opt.paths; ++i) {
    if (exit_edge[i] == 0) {
      ++rep.capped;
      continue;
    }
    ++rep.edge_counts[static_cast<std::size_t>(exit_edge[i] - 1)];
    times.push_back(exit_clock[i]);
  }
  BallProblem bp{g, r, 1, s};
  for (int e = 1; e <= g.n_edges(); ++e) {
    auto est = proportion_estimate(rep.edge_counts[static_cast<std::size_t>(e - 1)], times.size());
    bp.target_edge = e;
    est.attach(dirichlet_solution(bp, start));
    rep.edge_probabilities.push_back(est);
  }
  rep.mean_exit_time = mean_estimate(times);
  rep.mean_exit_time.attach(poisson_solution(bp, start));
  return rep;
}

ResolventReport estimate_resolvent(const StarGraph& g, const StickyParams& s, const Subordinator& spec,
                                   const EdgeFunction& f, double sup_abs_f, double lambda,
                                   GraphPoint start, const McOptions& opt, double truncation) {
  opt.validate();
  g.validate(start);
  if (!(lambda > 0.0)) throw std::invalid_argument("estimate_resolvent: lambda must be positive");
  if (!(sup_abs_f >= 0.0)) throw std::invalid_argument("estimate_resolvent: sup |f| must be >= 0");
  const double horizon = truncation > 0.0 ? truncation : 12.0 / lambda;
  const double theta = s.theta();
  const double f0 = f(1, 0.0);
  const double dt = opt.dt;
  const Eigen::Index max_steps = steps_for(horizon, dt);
  std::vector<double> values(opt.paths, 0.0);

  parallel_for(opt.paths, opt.workers, [&](std::size_t i) {
    auto streams = WalkStreams::make(opt.seed, i);
    TimeChangedWalker walk(g, start, theta, spec, dt, streams);
    CompensatedSum acc;
    double weighted = f(walk.point().edge, walk.radius());  // e^{-lambda V_i} f(X_i)
    while (walk.clock() < horizon && walk.index() < max_steps) {
      const double v0 = walk.clock();
      walk.step();
      const double fv = walk.at_vertex() ? f0 : f(walk.edge(), walk.radius());
      const double h = std::min(dt, horizon - v0);
      const double w1 = std::exp(-lambda * (v0 + h)) * fv;
      acc.add(0.5 * h * (weighted + w1));
      if (walk.local_time_increment() > 0.0 && f0 != 0.0) {
        acc.add(f0 * clipped_exp_integral(v0 + dt, walk.clock(), horizon, lambda));
      }
      weighted = std::exp(-lambda * walk.clock()) * fv;
    }
    values[i] = acc.value();
  });

  ResolventReport rep;
  rep.truncation = horizon;
  rep.truncation_bound = std::exp(-lambda * horizon) * sup_abs_f / lambda;
  rep.estimate = mean_estimate(values);
  rep.oracle_params = spec.kind() == SubordinatorKind::elementary || s.is_kirchhoff()
                          ? s
                          : trapped_effective_params(s, spec, lambda);
  const ResolventQuery q(f, lambda, g.n_edges());
  rep.estimate.attach(resolvent_at_point(q, rep.oracle_params, g, start));
  return rep;
}

std::vector<double> sample_holding_times(double theta, const Subordinator& spec, std::size_t n,
                                         std::uint64_t seed, int workers) {
  if (!(theta > 0.0)) throw std::invalid_argument("holding times need theta > 0");
  std::vector<double> draws(n, 0.0);
  parallel_for(n, workers, [&](std::size_t i) {
    Engine rng = make_stream(seed, i);
    draws[i] = sample_holding_time(theta, spec, rng);
  });
  return draws;
}

HoldingReport estimate_holding_survival(double theta, const Subordinator& spec,
                                        std::span<const double> t_grid, std::size_t n,
                                        std::uint64_t seed, int workers) {
  if (n < 2) throw std::invalid_argument("estimate_holding_survival: need at least 2 draws");
  const auto draws = sample_holding_times(theta, spec, n, seed, workers);
  const StickyParams s = StickyParams::from_theta(theta);
  HoldingReport rep;
  rep.times.assign(t_grid.begin(), t_grid.end());
  for (double t : t_grid) {
    if (!(t >= 0.0)) throw std::invalid_argument("estimate_holding_survival: times must be >= 0");
    const auto hits = static_cast<std::size_t>(std::count_if(draws.begin(), draws.end(), [t](double h) { return h > t; }));
    auto est = proportion_estimate(hits, n);
    if (spec.kind() != SubordinatorKind::gamma) est.attach(holding_survival(t, s, spec));
    rep.survival.push_back(est);
  }
  const auto half = static_cast<std::ptrdiff_t>(n / 2);
  std::vector<double> first(draws.begin(), draws.begin() + half), second(draws.begin() + half, draws.end());
  rep.ks_critical = ks_two_sample_critical_1pct(first.size(), second.size());
  rep.ks_statistic = ks_two_sample_statistic(std::move(first), std::move(second));
  rep.ks_pass = rep.ks_statistic <= rep.ks_critical;
  return rep;
}

double long_excursion_rate(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("long_excursion_rate: t must be positive");
  return std::sqrt(2.0 / (std::numbers::pi * t));
}

ExcursionReport count_long_excursions(std::span<const ReflectedPath> paths, double duration_threshold,
                                      double local_time_budget) {
  if (paths.empty()) throw std::invalid_argument("count_long_excursions: no paths");
  if (!(local_time_budget > 0.0)) throw std::invalid_argument("count_long_excursions: budget must be positive");
  std::vector<std::size_t> counts;
  counts.reserve(paths.size());
  for (const auto& path : paths) {
    if (!(duration_threshold >= 10.0 * path.dt)) {
      throw std::invalid_argument("count_long_excursions: threshold below the 10 dt resolution floor");
    }
    if (path.local_time(path.size() - 1) < local_time_budget) {
      throw std::runtime_error("count_long_excursions: local-time budget not reached within the path");
    }
    std::size_t count = 0;
    for (const auto& ex : path.excursions) {
      if (ex.from_start || ex.start_local_time >= local_time_budget) continue;
      if (ex.duration(path.dt) > duration_threshold) ++count;
    }
    counts.push_back(count);
  }
  return summarize_counts(std::move(counts), duration_threshold, local_time_budget);
}

ExcursionReport simulate_long_excursions(double duration_threshold, double local_time_budget,
                                         std::size_t replicas, double dt, std::uint64_t seed,
                                         int workers) {
  if (!(dt > 0.0)) throw std::invalid_argument("simulate_long_excursions: dt must be positive");
  if (!(duration_threshold >= 10.0 * dt)) {
    throw std::invalid_argument("simulate_long_excursions: threshold below the 10 dt resolution floor");
  }
  if (!(local_time_budget > 0.0)) throw std::invalid_argument("simulate_long_excursions: budget must be positive");
  if (replicas < 2) throw std::invalid_argument("simulate_long_excursions: need at least 2 replicas");
  std::vector<std::size_t> counts(replicas, 0);
  parallel_for(replicas, workers, [&](std::size_t i) {
    auto streams = WalkStreams::make(seed, i);
    boost::random::normal_distribution<double> normal(0.0, std::sqrt(dt));
    SkorokhodState st(0.0);
    std::size_t count = 0;
    long positive = 0;  // positive nodes in the running excursion
    while (st.local_time < local_time_budget) {
      st.step(normal(streams.driver));
      if (st.z == 0.0) {
        positive = 0;
        continue;
      }
      ++positive;
      // The zero-to-zero length is at least (positive + 1) dt.
      if (static_cast<double>(positive + 1) * dt > duration_threshold) {
        ++count;
        positive = 0;
        st.driver = -st.local_time;
        st.z = 0.0;
      }
    }
    counts[i] = count;
  });
  return summarize_counts(std::move(counts), duration_threshold, local_time_budget);
}

EstimateWithCI occupation_fraction_at_vertex(const StarGraph& g, const StickyParams& s,
                                             const Subordinator& spec, double horizon,
                                             const McOptions& opt) {
  opt.validate();
  if (!(horizon > 0.0)) throw std::invalid_argument("occupation_fraction_at_vertex: horizon must be positive");
  const double dt = opt.dt;
  std::vector<double> fractions(opt.paths, 0.0);
  parallel_for(opt.paths, opt.workers, [&](std::size_t i) {
    auto streams = WalkStreams::make(opt.seed, i);
    TimeChangedWalker walk(g, kOrigin, s.theta(), spec, dt, streams);
    CompensatedSum acc;
    while (walk.clock() < horizon) {
      const double v0 = walk.clock();
      walk.step();
      if (!walk.at_vertex()) continue;
      acc.add(std::min(dt, horizon - v0));
      const double a = std::min(v0 + dt, horizon), b = std::min(walk.clock(), horizon);
      if (b > a) acc.add(b - a);
    }
    fractions[i] = acc.value() / horizon;
  });
  return mean_estimate(fractions);
}

std::vector<EstimateWithCI> estimate_expectation(const StarGraph& g, const StickyParams& s,
                                                 const Subordinator& spec, const EdgeFunction& u0,
                                                 GraphPoint start, std::span<const double> times,
                                                 const McOptions& opt) {
  opt.validate();
  if (times.empty()) return {};
  const std::size_t m = times.size();
  const Eigen::Index max_steps = steps_for(*std::max_element(times.begin(), times.end()), opt.dt);
  std::vector<double> values(opt.paths * m, 0.0);
  parallel_for(opt.paths, opt.workers, [&](std::size_t i) {
    auto streams = WalkStreams::make(opt.seed, i);
    const auto points = sample_time_changed(g, start, s.theta(), spec, opt.dt, times, streams, max_steps);
    for (std::size_t q = 0; q < m; ++q) values[q * opt.paths + i] = u0(points[q].edge, points[q].radius);
  });
  std::vector<EstimateWithCI> out;
  for (std::size_t q = 0; q < m; ++q) {
    out.push_back(mean_estimate(std::span<const double>(values).subspan(q * opt.paths, opt.paths)));
  }
  return out;
}

}  // namespace stargraph
