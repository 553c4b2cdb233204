#include "stargraph/paths.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

namespace stargraph {

namespace {

Eigen::Index node_for_time(double t, double dt, Eigen::Index size) {
  const double horizon = static_cast<double>(size - 1) * dt;
  if (!(t >= 0.0) || t > horizon * (1.0 + 1e-12) + 1e-15) {
    throw std::out_of_range("query time outside the simulated horizon");
  }
  return std::min<Eigen::Index>(size - 1, static_cast<Eigen::Index>(std::llround(t / dt)));
}

GraphPoint point_at_node(const ReflectedPath& path, Eigen::Index i) {
  const double z = path.reflected(i);
  if (z == 0.0) return kOrigin;
  return GraphPoint{path.labeled() ? path.node_edge(i) : 1, z};
}

}  // namespace

ReflectedPath reflect_driver(Eigen::VectorXd driver, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("reflect_driver: dt must be positive");
  if (driver.size() == 0) throw std::invalid_argument("reflect_driver: empty driver");
  if (!(driver(0) >= 0.0)) throw std::invalid_argument("reflect_driver: start point must be >= 0");

  ReflectedPath path;
  path.dt = dt;
  path.x0 = driver(0);
  const Eigen::Index n = driver.size();
  path.local_time.resize(n);
  path.reflected.resize(n);
  double ell = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    ell = std::max(ell, -driver(i));
    path.local_time(i) = ell;
    path.reflected(i) = driver(i) + ell;
  }
  path.driver = std::move(driver);

  for (Eigen::Index i = 0; i < n;) {
    if (path.reflected(i) == 0.0) {
      ++i;
      continue;
    }
    Excursion ex;
    ex.begin = i;
    ex.from_start = (i == 0);
    ex.start_local_time = path.local_time(i);
    while (i < n && path.reflected(i) > 0.0) ++i;
    ex.end = i;
    ex.censored = (i == n);
    path.excursions.push_back(ex);
  }
  return path;
}

ReflectedPath simulate_reflected(double x0, double horizon, double dt, Engine& rng) {
  if (!(dt > 0.0)) throw std::invalid_argument("simulate_reflected: dt must be positive");
  if (!(horizon >= dt)) throw std::invalid_argument("simulate_reflected: need horizon >= dt");
  if (!(x0 >= 0.0)) throw std::invalid_argument("simulate_reflected: x0 must be >= 0");
  const auto steps = static_cast<Eigen::Index>(std::ceil(horizon / dt - 1e-9));
  Eigen::VectorXd driver(steps + 1);
  boost::random::normal_distribution<double> normal(0.0, std::sqrt(dt));
  driver(0) = x0;
  for (Eigen::Index i = 1; i <= steps; ++i) driver(i) = driver(i - 1) + normal(rng);
  return reflect_driver(std::move(driver), dt);
}

ReflectedPath assign_edges(ReflectedPath path, const StarGraph& graph, Engine& rng, int initial_edge) {
  graph.validate(GraphPoint{initial_edge, 0.0});
  path.node_edge = Eigen::VectorXi::Zero(path.size());
  for (auto& ex : path.excursions) {
    ex.edge = ex.from_start ? initial_edge : graph.sample_edge(rng);
    path.node_edge.segment(ex.begin, ex.end - ex.begin).setConstant(ex.edge);
  }
  return path;
}

GraphPath to_graph_path(const ReflectedPath& path, std::span<const double> queries) {
  GraphPath out;
  out.times.assign(queries.begin(), queries.end());
  out.points.reserve(queries.size());
  out.at_vertex.reserve(queries.size());
  for (double t : queries) {
    const auto p = point_at_node(path, node_for_time(t, path.dt, path.size()));
    out.points.push_back(p);
    out.at_vertex.push_back(p.at_origin());
  }
  return out;
}

TimeChange sticky_time_change(const ReflectedPath& path, double theta) {
  if (!(theta >= 0.0)) throw std::invalid_argument("sticky_time_change: theta must be >= 0");
  TimeChange tc;
  tc.dt = path.dt;
  const double dt = path.dt;
  tc.clock = Eigen::VectorXd::NullaryExpr(path.size(), [dt](Eigen::Index i) {
               return static_cast<double>(i) * dt;
             }) + theta * path.local_time;
  return tc;
}

TimeChange trapped_time_change(const ReflectedPath& path, double theta, const Subordinator& spec,
                               Engine& rng) {
  if (!(theta >= 0.0)) throw std::invalid_argument("trapped_time_change: theta must be >= 0");
  TimeChange tc;
  tc.dt = path.dt;
  tc.clock.resize(path.size());
  SubordinatorPath h(spec, 1.0);
  double h_value = 0.0;
  for (Eigen::Index i = 0; i < path.size(); ++i) {
    const double s = theta * path.local_time(i);
    if (s > h.horizon()) h_value = h.advance_to(s, rng);
    tc.clock(i) = path.time(i) + h_value;
  }
  return tc;
}

GraphPath evaluate_time_changed(const ReflectedPath& path, const TimeChange& tc,
                                std::span<const double> clock_queries) {
  if (tc.clock.size() != path.size()) {
    throw std::invalid_argument("evaluate_time_changed: time change built on another grid");
  }
  GraphPath out;
  out.times.assign(clock_queries.begin(), clock_queries.end());
  const double* first = tc.clock.data();
  const double* last = first + tc.clock.size();
  for (double s : clock_queries) {
    if (!(s >= tc.clock(0)) || s > tc.final_clock()) {
      throw std::out_of_range("evaluate_time_changed: clock value outside [V(0), V(T)]");
    }
    // Last node with V_i <= s; real time advances by at most dt past it.
    auto i = static_cast<Eigen::Index>(std::upper_bound(first, last, s) - first) - 1;
    // Nearest node in real time; past the real-time half step the clock is either
    // in the next cell or inside a jump, and jumps sit at zero nodes.
    if (i + 1 < path.size() && s - tc.clock(i) >= 0.5 * tc.dt) ++i;
    const auto p = point_at_node(path, i);
    out.points.push_back(p);
    out.at_vertex.push_back(p.at_origin());
  }
  return out;
}

double sample_holding_time(double theta, const Subordinator& spec, Engine& rng) {
  if (!(theta > 0.0)) throw std::invalid_argument("sample_holding_time: theta must be positive");
  const double tau = boost::random::exponential_distribution<double>(1.0 / theta)(rng);
  return spec.sample_increment(tau, rng);
}

std::vector<GraphPoint> sample_time_changed(const StarGraph& graph, GraphPoint start, double theta,
                                            const Subordinator& spec, double dt,
                                            std::span<const double> clock_queries, WalkStreams& streams,
                                            Eigen::Index max_steps) {
  if (!std::is_sorted(clock_queries.begin(), clock_queries.end())) {
    throw std::invalid_argument("sample_time_changed: clock queries must be nondecreasing");
  }
  if (!clock_queries.empty() && !(clock_queries.front() >= 0.0)) {
    throw std::out_of_range("sample_time_changed: negative clock value");
  }
  TimeChangedWalker walk(graph, start, theta, spec, dt, streams);
  std::vector<GraphPoint> out;
  out.reserve(clock_queries.size());
  GraphPoint prev = walk.point();
  double prev_clock = walk.clock();
  walk.step();
  for (double s : clock_queries) {
    // Keep V(prev) <= s < V(current).
    while (walk.clock() <= s) {
      prev = walk.point();
      prev_clock = walk.clock();
      if (walk.index() >= max_steps) {
        throw std::runtime_error("sample_time_changed: clock did not reach the query within max_steps");
      }
      walk.step();
    }
    out.push_back(s - prev_clock >= 0.5 * dt ? walk.point() : prev);
  }
  return out;
}

}  // namespace stargraph
