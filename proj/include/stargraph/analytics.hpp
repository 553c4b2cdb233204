#ifndef STARGRAPH_ANALYTICS_HPP
#define STARGRAPH_ANALYTICS_HPP

// Closed-form answers for processes on the star graph: exit problems on the
// ball, resolvents at the vertex, holding-time laws and the vertex condition.

#include <functional>
#include <span>
#include <vector>

#include "stargraph/graph.hpp"
#include "stargraph/mittag_leffler.hpp"
#include "stargraph/subordinator.hpp"

namespace stargraph {

/// f(edge, x) on the graph; continuity at the vertex is the caller's contract.
using EdgeFunction = std::function<double(int edge, double x)>;

/// Exit problem on the ball of radius r around the vertex.
struct BallProblem {
  StarGraph graph;
  double radius = 1.0;
  int target_edge = 1;
  StickyParams sticky;

  /// Throws unless radius > 0 and target_edge is an edge of graph.
  void validate() const;
};

/// P(exit through (e, r) | start at p). Linear in radius on every edge with
/// value p_e at the vertex, 1 at (e, r) and 0 at the other boundary points.
/// The law does not depend on stickiness. Throws for points outside the ball.
double dirichlet_solution(const BallProblem& bp, const GraphPoint& p);

/// Linear combination sum_e alpha_e u^{(e)}(p) for boundary data alpha.
double dirichlet_solution_combined(const BallProblem& bp, std::span<const double> boundary_values,
                                   const GraphPoint& p);

/// Mean exit time v(x) = r^2 - x^2 + (c / b)(r - x), the same on every edge.
double poisson_solution(const BallProblem& bp, const GraphPoint& p);

/// One-sided derivatives f_k'(0) per edge and the common f''(0).
struct VertexJet {
  std::vector<double> first_derivatives;
  double second_derivative = 0.0;
};

VertexJet dirichlet_jet(const BallProblem& bp);
VertexJet poisson_jet(const BallProblem& bp);

/// Second-order one-sided differences with step h on each edge.
VertexJet jet_by_differences(const EdgeFunction& f, int n_edges, double h);

/// (1/2) c f''(0) - b sum_k p_k f_k'(0); zero exactly on the sticky domain.
double vertex_condition_residual(const VertexJet& jet, const StickyParams& s, const StarGraph& g);

/// Resolvent data: lambda, f, and the per-edge transforms f_k^(sqrt(2 lambda)).
class ResolventQuery {
 public:
  /// Transforms by quadrature.
  ResolventQuery(EdgeFunction f, double lambda, int n_edges);
  /// Caller-supplied transforms, one per edge.
  ResolventQuery(EdgeFunction f, double lambda, std::vector<double> transforms);

  double lambda() const { return lambda_; }
  const EdgeFunction& f() const { return f_; }
  double f_at_vertex() const { return f_(1, 0.0); }
  const std::vector<double>& transforms() const { return transforms_; }
  /// sum_k p_k f_k^(sqrt(2 lambda)).
  double weighted_transform(const StarGraph& g) const;

 private:
  EdgeFunction f_;
  double lambda_;
  std::vector<double> transforms_;
};

/// U_lambda f(0) from (lambda + (b/c) sqrt(2 lambda)) U = f(0) + (2b/c) sum p_k f_k^.
/// For c = 0 returns the limit (2 / sqrt(2 lambda)) sum p_k f_k^.
double sticky_resolvent_origin(const ResolventQuery& q, const StickyParams& s, const StarGraph& g);

/// U_lambda f(i, x) = U^D_lambda f_i(x) + e^{-sqrt(2 lambda) x} U_lambda f(0).
double resolvent_at_point(const ResolventQuery& q, const StickyParams& s, const StarGraph& g,
                          const GraphPoint& p);

/// Sticky parameters whose resolvent at lambda equals the trapped one:
/// c' / b' = (c / b) Phi(lambda) / lambda, b' + c' = 1.
StickyParams trapped_effective_params(const StickyParams& s, const Subordinator& spec, double lambda);

/// P(holding time > t) = E[exp(-mu L_t)], mu = b / c: exponential for the
/// elementary kind, E_alpha(-mu t^alpha) for stable. The gamma kind has no time
/// domain form here and throws UnsupportedKind.
double holding_survival(double t, const StickyParams& s, const Subordinator& spec);

/// int_0^inf e^{-lambda t} P(holding time > t) dt = (Phi / lambda) / (mu + Phi).
double holding_survival_laplace(double lambda, const StickyParams& s, const Subordinator& spec);

/// Mean holding time (mean_rate / mu); infinite for stable subordinators.
double holding_mean(const StickyParams& s, const Subordinator& spec);

}  // namespace stargraph

#endif  // STARGRAPH_ANALYTICS_HPP
