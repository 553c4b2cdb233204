#ifndef STARGRAPH_MONTECARLO_HPP
#define STARGRAPH_MONTECARLO_HPP

// Monte Carlo estimators over simulated walks, each paired with its oracle.
// Path k always draws from WalkStreams::make(seed, k) and results are reduced
// in path order, so every estimate is a function of (config, seed) alone.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "stargraph/analytics.hpp"
#include "stargraph/graph.hpp"
#include "stargraph/paths.hpp"
#include "stargraph/stats.hpp"
#include "stargraph/subordinator.hpp"

namespace stargraph {

struct McOptions {
  std::size_t paths = 10000;
  double dt = 1e-4;
  std::uint64_t seed = 1;
  int workers = 1;

  void validate() const;
};

struct ExitReport {
  std::vector<EstimateWithCI> edge_probabilities;  // index e - 1
  std::vector<std::size_t> edge_counts;
  EstimateWithCI mean_exit_time;  // clock time V(T*) = T* + theta l(T*)
  std::size_t capped = 0;         // walks still inside at the safety horizon
  double safety_horizon = 0.0;    // real-time cap per walk
};

/// Exit from the ball of radius r through each edge and the mean exit time of
/// the sticky walk, with oracles from dirichlet_solution and poisson_solution.
/// Walks that have not left by the safety horizon are excluded and counted.
ExitReport estimate_exit(const StarGraph& g, GraphPoint start, double r, const StickyParams& s,
                         const McOptions& opt);

struct ResolventReport {
  EstimateWithCI estimate;
  double truncation = 0.0;        // clock horizon T
  double truncation_bound = 0.0;  // e^{-lambda T} sup|f| / lambda
  StickyParams oracle_params;     // sticky parameters used for the oracle
};

/// E^x int_0^T e^{-lambda t} f(Y_t) dt for the sticky (elementary) or trapped
/// walk. Real-time steps use the trapezoid rule; clock time added at the
/// vertex (stickiness or subordinator jumps) is integrated exactly. The oracle
/// is the sticky resolvent, at trapped_effective_params for non-elementary H.
/// sup_abs_f bounds |f| in the truncation term. truncation <= 0 picks 12 / lambda.
ResolventReport estimate_resolvent(const StarGraph& g, const StickyParams& s, const Subordinator& spec,
                                   const EdgeFunction& f, double sup_abs_f, double lambda,
                                   GraphPoint start, const McOptions& opt, double truncation = 0.0);

struct HoldingReport {
  std::vector<double> times;
  std::vector<EstimateWithCI> survival;
  double ks_statistic = 0.0;  // first half of the draws against the second
  double ks_critical = 0.0;   // 1% level
  bool ks_pass = false;
};

/// Empirical P(H(tau) > t), tau ~ Exp(rate 1 / theta), on t_grid, with the
/// exponential or Mittag-Leffler oracle where one exists. Draw i uses stream i.
HoldingReport estimate_holding_survival(double theta, const Subordinator& spec,
                                        std::span<const double> t_grid, std::size_t n,
                                        std::uint64_t seed, int workers = 1);

/// Holding-time draws themselves, in stream order.
std::vector<double> sample_holding_times(double theta, const Subordinator& spec, std::size_t n,
                                         std::uint64_t seed, int workers = 1);

struct ExcursionReport {
  EstimateWithCI mean_count;  // oracle s sqrt(2 / (pi t))
  double dispersion = 0.0;    // sample variance / sample mean
  double chi_square = 0.0;    // counts against Poisson(oracle), pooled tails
  int chi_square_dof = 0;
  double chi_square_p = 0.0;
  std::vector<std::size_t> counts;
};

/// Rate of excursions longer than t per unit local time.
double long_excursion_rate(double t);

/// Counts of excursions with duration > t started before local time s, one
/// count per path. Throws if t < 10 dt or a path ends before its local time
/// reaches s.
ExcursionReport count_long_excursions(std::span<const ReflectedPath> paths, double duration_threshold,
                                      double local_time_budget);

/// Same count on streaming walks from the vertex. An excursion is abandoned
/// as soon as it is known to be long: by the strong Markov property at its
/// end the walk restarts at the vertex with the same local time, so the
/// excursion point process is unchanged while the cost stays bounded.
ExcursionReport simulate_long_excursions(double duration_threshold, double local_time_budget,
                                         std::size_t replicas, double dt, std::uint64_t seed,
                                         int workers = 1);

/// Fraction of clock time in [0, T] the walk from the vertex spends there.
/// Clock growth at the vertex counts in full; real-time steps count when the
/// step ends at the vertex.
EstimateWithCI occupation_fraction_at_vertex(const StarGraph& g, const StickyParams& s,
                                             const Subordinator& spec, double horizon,
                                             const McOptions& opt);

/// E^x[u0(Y_t)] at increasing clock times t, one estimate per time.
std::vector<EstimateWithCI> estimate_expectation(const StarGraph& g, const StickyParams& s,
                                                 const Subordinator& spec, const EdgeFunction& u0,
                                                 GraphPoint start, std::span<const double> times,
                                                 const McOptions& opt);

}  // namespace stargraph

#endif  // STARGRAPH_MONTECARLO_HPP
