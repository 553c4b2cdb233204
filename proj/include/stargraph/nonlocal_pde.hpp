#ifndef STARGRAPH_NONLOCAL_PDE_HPP
#define STARGRAPH_NONLOCAL_PDE_HPP

// Heat equation u_t = (1/2) u_xx on each edge of a truncated star graph with
// the dynamic vertex condition c D u(t, 0) = b sum_k p_k u_k'(t, 0), where D
// is the ordinary time derivative (elementary H) or the Caputo-type operator
// int_0^t u'(s) phi(t - s) ds built from the Levy tail of H.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stargraph/analytics.hpp"
#include "stargraph/graph.hpp"
#include "stargraph/montecarlo.hpp"
#include "stargraph/subordinator.hpp"

namespace stargraph {

/// Uniform grid: M cells of width R / M on every edge, steps of dt up to T.
struct SolverGrid {
  double R = 8.0;
  int M = 4000;
  double dt = 1e-4;
  double T = 1.0;

  double dx() const { return R / M; }
  int steps() const;
  void validate() const;
};

/// Weights w_j such that D u(t_n) ~ sum_{j=0}^{n-1} w_j (u_{n-j} - u_{n-j-1}).
/// With I(t) = int_0^t phi, w_j = (I((j+1) dt) - I(j dt)) / dt: exact for
/// piecewise-linear histories. The elementary kind is the local branch
/// w_0 = 1 / dt, w_j = 0 otherwise.
struct MemoryKernel {
  Subordinator spec = Subordinator::elementary();
  double dt = 0.0;
  std::vector<double> weights;

  bool local() const { return spec.kind() == SubordinatorKind::elementary; }
};

MemoryKernel build_kernel(const Subordinator& spec, double dt, int steps);

/// D u at the last entry of a history sampled on the kernel's grid. Throws if
/// the history is empty or longer than the kernel allows.
double caputo_apply(std::span<const double> history, const MemoryKernel& kernel);

/// int_0^t du(s) phi(t - s) ds by quadrature, with the tail singularity at
/// s = t flattened by a power substitution. Non-elementary kinds only.
double caputo_quadrature(const Subordinator& spec, const std::function<double(double)>& du, double t);

/// Field at one output time: u(t, m dx) on every edge, entry 0 is the vertex.
struct FieldSnapshot {
  double t = 0.0;
  std::vector<Eigen::VectorXd> edges;
};

struct SolverDiagnostics {
  double max_abs = 0.0;        // max |u| over all steps and nodes
  double initial_sup = 0.0;    // sup |u0| on the grid
  bool maximum_principle = false;
  double continuity_error = 0.0;      // spread of u0(k, 0) across edges
  std::optional<double> regularity;   // max |du(t,0)| / kappa((0, dt])
  std::optional<double> mass_drift;   // max |M(t) - M(0)|, see solve_nl
  double vertex_residual = 0.0;       // max |c D u(t,0) - b sum p u'(t,0)| over steps
};

struct SolverField {
  SolverGrid grid;
  std::vector<double> vertex;  // u(t_n, 0), n = 0..steps
  std::vector<FieldSnapshot> snapshots;
  SolverDiagnostics diagnostics;

  /// Vertex value at the grid time nearest t.
  double vertex_at(double t) const;
  /// Linear interpolation in x of the snapshot nearest t.
  double value(double t, const GraphPoint& p) const;
};

/// Implicit Euler in time, centred differences inside each edge, reflecting
/// far ends (ghost node) and a vertex row that couples the memory term to
/// second-order one-sided derivatives. Each step is solved exactly through the
/// Schur complement on the vertex unknown, so one tridiagonal factorization
/// serves all edges and all steps. snapshot_times are rounded to the grid.
///
/// mass_drift monitors sum_k p_k int u_k dx + (c / 2b) u(t, 0), conserved for
/// the elementary kind (and for c = 0), and is left empty otherwise.
/// Throws std::invalid_argument if u0 differs across edges at the vertex by
/// more than continuity_tol.
SolverField solve_nl(const StarGraph& g, const StickyParams& s, const Subordinator& spec,
                     const EdgeFunction& u0, const SolverGrid& grid, std::span<const double> snapshot_times,
                     double continuity_tol = 1e-8);

struct CrosscheckEntry {
  double t = 0.0;
  GraphPoint point;
  double numeric = 0.0;
  EstimateWithCI monte_carlo;  // analytic = numeric, z attached
  double allowance = 0.0;
  bool pass = false;
};

struct CrosscheckReport {
  std::vector<CrosscheckEntry> entries;
  bool pass = false;
};

/// |u_num - u_MC| <= k stderr + allowance at each (t, point). The Monte Carlo
/// side samples the time-changed walk started at each point.
CrosscheckReport mc_crosscheck(const SolverField& field, const StarGraph& g, const StickyParams& s,
                               const Subordinator& spec, const EdgeFunction& u0,
                               std::span<const double> times, std::span<const GraphPoint> points,
                               const McOptions& opt, double allowance, double k = 3.0);

/// Smallest truncation length keeping Gaussian mass beyond R below ~1e-8 up to
/// time T for data supported within support_radius.
double truncation_length(double T, double support_radius);

/// CSV rows "t,edge,x,u" for every snapshot (vertex written once per time as edge 0).
std::string field_csv(const SolverField& field);

}  // namespace stargraph

#endif  // STARGRAPH_NONLOCAL_PDE_HPP
