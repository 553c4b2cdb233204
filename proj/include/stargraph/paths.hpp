#ifndef STARGRAPH_PATHS_HPP
#define STARGRAPH_PATHS_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <boost/random/normal_distribution.hpp>

#include "stargraph/graph.hpp"
#include "stargraph/rng.hpp"
#include "stargraph/subordinator.hpp"

namespace stargraph {

/// Maximal run of grid nodes [begin, end) with Z > 0.
struct Excursion {
  Eigen::Index begin = 0;
  Eigen::Index end = 0;  // first zero node after the run, or the path size if censored
  int edge = 0;          // 1..n once labeled, 0 before assign_edges
  bool censored = false;    // still running at the horizon
  bool from_start = false;  // began before t = 0 (positive start point)
  double start_local_time = 0.0;

  /// Zero-to-zero length on the grid.
  double duration(double dt) const {
    return static_cast<double>(end - begin + (from_start ? 0 : 1)) * dt;
  }
};

/// Reflected Brownian motion on the grid t_i = i dt through the Skorokhod map:
/// Z_i = B_i + l_i with l_i = max(0, max_{k<=i} -B_k), where B_i = x0 + W_{t_i}.
struct ReflectedPath {
  double dt = 0.0;
  double x0 = 0.0;
  Eigen::VectorXd driver;
  Eigen::VectorXd reflected;
  Eigen::VectorXd local_time;
  std::vector<Excursion> excursions;
  /// Edge label per node (0 at the vertex); empty before assign_edges.
  Eigen::VectorXi node_edge;

  Eigen::Index size() const { return reflected.size(); }
  double time(Eigen::Index i) const { return static_cast<double>(i) * dt; }
  double horizon() const { return time(size() - 1); }
  bool labeled() const { return node_edge.size() == size(); }
};

/// Apply the Skorokhod map to a driver B (B_0 = x0 >= 0) and extract excursions.
ReflectedPath reflect_driver(Eigen::VectorXd driver, double dt);

/// Gaussian increments of variance dt out to horizon, then reflect_driver.
ReflectedPath simulate_reflected(double x0, double horizon, double dt, Engine& rng);

/// Label every excursion with an independent edge drawn from the graph's
/// masses. An excursion already running at t = 0 keeps initial_edge.
ReflectedPath assign_edges(ReflectedPath path, const StarGraph& graph, Engine& rng,
                           int initial_edge = 1);

/// Samples of a process on the graph.
struct GraphPath {
  std::vector<double> times;
  std::vector<GraphPoint> points;
  std::vector<char> at_vertex;
};

/// Graph-valued path (edge of the current excursion, Z) at the given times,
/// each mapped to the nearest grid node. Throws std::out_of_range for queries
/// outside [0, horizon].
GraphPath to_graph_path(const ReflectedPath& path, std::span<const double> queries);

/// A monotone clock V on the path grid; clock[i] = V(t_i).
struct TimeChange {
  double dt = 0.0;
  Eigen::VectorXd clock;

  double final_clock() const { return clock(clock.size() - 1); }
};

/// V(t) = t + theta l(t).
TimeChange sticky_time_change(const ReflectedPath& path, double theta);

/// V_H(t) = t + H(theta l(t)) with H drawn independently of the path. H is
/// sampled exactly at the operational times theta l_i, so its law does not
/// depend on the grid. Elementary H reproduces sticky_time_change exactly.
TimeChange trapped_time_change(const ReflectedPath& path, double theta, const Subordinator& spec,
                               Engine& rng);

/// X(s) = Z(V^{-1}(s)) at clock values s. Clock values inside a jump of V map
/// to the vertex. Throws std::out_of_range for s outside [V(0), V(T)].
GraphPath evaluate_time_changed(const ReflectedPath& path, const TimeChange& tc,
                                std::span<const double> clock_queries);

/// Vertex holding time H(tau) with tau ~ Exp(rate 1 / theta).
double sample_holding_time(double theta, const Subordinator& spec, Engine& rng);

/// Streaming Skorokhod map with the same arithmetic as reflect_driver, so a
/// walk fed the same increments reproduces ReflectedPath bit-for-bit.
struct SkorokhodState {
  double driver = 0.0;
  double z = 0.0;
  double local_time = 0.0;

  explicit SkorokhodState(double x0 = 0.0) : driver(x0), z(x0) {}

  /// Returns the local-time increment.
  double step(double increment) {
    driver += increment;
    double grown = 0.0;
    if (-driver > local_time) {
      grown = -driver - local_time;
      local_time = -driver;
    }
    z = driver + local_time;
    return grown;
  }
};

/// Independent engines for the three sources of randomness of a walk: the
/// Brownian driver, the excursion edge labels and the subordinator. Keeping
/// them apart lets the streaming walker and the stored-path pipeline consume
/// identical draws.
struct WalkStreams {
  Engine driver;
  Engine edges;
  Engine clock;

  static WalkStreams make(std::uint64_t seed, std::uint64_t index) {
    const Engine base = make_stream(seed, index);
    const std::uint64_t root = Engine(base)();
    return WalkStreams{Engine(mix64(root ^ 1)), Engine(mix64(root ^ 2)), Engine(mix64(root ^ 3))};
  }
};

/// Time-changed reflected walk on the star graph advanced one grid step at a
/// time: node i sits at real time i dt with clock V_i = i dt + H(theta l_i).
/// Matches simulate_reflected + assign_edges + trapped_time_change on the same
/// streams without storing the path.
class TimeChangedWalker {
 public:
  TimeChangedWalker(const StarGraph& graph, GraphPoint start, double theta, const Subordinator& spec,
                    double dt, WalkStreams& streams)
      : graph_(&graph),
        spec_(spec),
        theta_(theta),
        dt_(dt),
        streams_(&streams),
        normal_(0.0, std::sqrt(dt)),
        state_(start.radius),
        edge_(start.radius > 0.0 ? start.edge : 0) {
    graph.validate(start);
    if (!(dt > 0.0)) throw std::invalid_argument("TimeChangedWalker: dt must be positive");
    if (!(theta >= 0.0)) throw std::invalid_argument("TimeChangedWalker: theta must be >= 0");
  }

  void step() {
    const double previous_clock = clock_;
    const bool was_at_vertex = state_.z == 0.0;
    local_step_ = state_.step(normal_(streams_->driver));
    ++index_;
    if (state_.z == 0.0) {
      edge_ = 0;
    } else if (was_at_vertex) {
      edge_ = graph_->sample_edge(streams_->edges);
    }
    const double s = theta_ * state_.local_time;
    if (s > operational_) {
      if (spec_.kind() == SubordinatorKind::elementary) {
        h_ = s;
      } else {
        h_ = h_ + spec_.sample_increment(s - operational_, streams_->clock);
      }
      operational_ = s;
    }
    clock_ = time() + h_;
    clock_jump_ = clock_ - previous_clock - dt_;
  }

  Eigen::Index index() const { return index_; }
  double dt() const { return dt_; }
  double time() const { return static_cast<double>(index_) * dt_; }
  double clock() const { return clock_; }
  double radius() const { return state_.z; }
  double local_time() const { return state_.local_time; }
  /// Local-time and non-real-time clock growth over the last step.
  double local_time_increment() const { return local_step_; }
  double clock_jump() const { return clock_jump_; }
  bool at_vertex() const { return state_.z == 0.0; }
  int edge() const { return edge_; }
  GraphPoint point() const { return at_vertex() ? kOrigin : GraphPoint{edge_, state_.z}; }

 private:
  const StarGraph* graph_;
  Subordinator spec_;
  double theta_;
  double dt_;
  WalkStreams* streams_;
  boost::random::normal_distribution<double> normal_;
  SkorokhodState state_;
  int edge_;
  Eigen::Index index_ = 0;
  double operational_ = 0.0;
  double h_ = 0.0;
  double clock_ = 0.0;
  double clock_jump_ = 0.0;
  double local_step_ = 0.0;
};

/// Positions X(s_q) of the time-changed walk at increasing clock values, with
/// the node rule of evaluate_time_changed. Throws if the walk needs more than
/// max_steps steps.
std::vector<GraphPoint> sample_time_changed(const StarGraph& graph, GraphPoint start, double theta,
                                            const Subordinator& spec, double dt,
                                            std::span<const double> clock_queries, WalkStreams& streams,
                                            Eigen::Index max_steps);

}  // namespace stargraph

#endif  // STARGRAPH_PATHS_HPP
