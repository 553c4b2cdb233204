#include "stargraph/nonlocal_pde.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "stargraph/quadrature.hpp"
#include "stargraph/stats.hpp"

namespace stargraph {

namespace {

// Factorised tridiagonal operator of one edge: rows m = 1..M of
// (1 + 2r) U_m - r (U_{m-1} + U_{m+1}), with the ghost node U_{M+1} = U_{M-1}.
class EdgeOperator {
 public:
  EdgeOperator(int M, double r) : sub_(M, -r), super_(M, -r), inv_pivot_(M), cp_(M) {
    sub_[M - 1] = -2.0 * r;
    const double diag = 1.0 + 2.0 * r;
    double pivot = diag;
    for (int i = 0; i < M; ++i) {
      if (i > 0) pivot = diag - sub_[i] * cp_[i - 1];
      inv_pivot_[i] = 1.0 / pivot;
      cp_[i] = i + 1 < M ? super_[i] * inv_pivot_[i] : 0.0;
    }
  }

  // Solves in place on x[1..M]; x[0] is left untouched.
  void solve(Eigen::VectorXd& x) const {
    const int M = static_cast<int>(cp_.size());
    double* y = x.data() + 1;
    y[0] *= inv_pivot_[0];
    for (int i = 1; i < M; ++i) y[i] = (y[i] - sub_[i] * y[i - 1]) * inv_pivot_[i];
    for (int i = M - 2; i >= 0; --i) y[i] -= cp_[i] * y[i + 1];
  }

 private:
  std::vector<double> sub_, super_, inv_pivot_, cp_;
};

double trapezoid(const Eigen::VectorXd& u, double dx) {
  return dx * (u.sum() - 0.5 * (u(0) + u(u.size() - 1)));
}

// Inward one-sided second-order derivative at the vertex.
double vertex_slope(const Eigen::VectorXd& u, double dx) {
  return (-3.0 * u(0) + 4.0 * u(1) - u(2)) / (2.0 * dx);
}

std::optional<double> potential_of_first_cell(const Subordinator& spec, double dt) {
  switch (spec.kind()) {
    case SubordinatorKind::elementary:
      return dt;
    case SubordinatorKind::stable:
      return std::pow(dt, spec.alpha()) / std::tgamma(1.0 + spec.alpha());
    case SubordinatorKind::gamma:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

int SolverGrid::steps() const {
  return static_cast<int>(std::llround(T / dt));
}

void SolverGrid::validate() const {
  if (!(R > 0.0)) throw std::invalid_argument("SolverGrid: R must be positive");
  if (M < 8) throw std::invalid_argument("SolverGrid: need M >= 8");
  if (!(dt > 0.0)) throw std::invalid_argument("SolverGrid: dt must be positive");
  if (!(T > 0.0)) throw std::invalid_argument("SolverGrid: T must be positive");
  if (std::abs(steps() * dt - T) > 1e-9 * T) {
    throw std::invalid_argument("SolverGrid: T must be a whole number of steps");
  }
}

MemoryKernel build_kernel(const Subordinator& spec, double dt, int steps) {
  if (!(dt > 0.0)) throw std::invalid_argument("build_kernel: dt must be positive");
  if (steps < 1) throw std::invalid_argument("build_kernel: need at least one step");
  MemoryKernel k;
  k.spec = spec;
  k.dt = dt;
  k.weights.assign(static_cast<std::size_t>(steps), 0.0);
  switch (spec.kind()) {
    case SubordinatorKind::elementary:
      k.weights[0] = 1.0 / dt;
      break;
    case SubordinatorKind::stable: {
      const double a = spec.alpha();
      const double scale = std::pow(dt, -a) / std::tgamma(2.0 - a);
      for (int j = 0; j < steps; ++j) {
        k.weights[static_cast<std::size_t>(j)] =
            scale * (std::pow(j + 1.0, 1.0 - a) - std::pow(static_cast<double>(j), 1.0 - a));
      }
      break;
    }
    case SubordinatorKind::gamma: {
      k.weights[0] = spec.cumulative_tail(dt) / dt;
      quad::Options opt;
      opt.abs_tol = 1e-15;
      for (int j = 1; j < steps; ++j) {
        const double cell = quad::integrate<double>([&](double t) { return spec.levy_tail(t); }, j * dt,
                                                    (j + 1) * dt, opt);
        k.weights[static_cast<std::size_t>(j)] = cell / dt;
      }
      break;
    }
  }
  return k;
}

double caputo_apply(std::span<const double> history, const MemoryKernel& kernel) {
  if (history.empty()) throw std::invalid_argument("caputo_apply: empty history");
  const std::size_t n = history.size() - 1;
  if (n > kernel.weights.size()) {
    throw std::invalid_argument("caputo_apply: history longer than the kernel");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) sum += kernel.weights[j] * (history[n - j] - history[n - j - 1]);
  return sum;
}

double caputo_quadrature(const Subordinator& spec, const std::function<double(double)>& du, double t) {
  if (spec.kind() == SubordinatorKind::elementary) {
    throw UnsupportedKind("caputo_quadrature: the elementary kind is the local derivative");
  }
  if (!(t >= 0.0)) throw std::invalid_argument("caputo_quadrature: t must be nonnegative");
  if (t == 0.0) return 0.0;
  const double m = spec.kind() == SubordinatorKind::stable ? 2.0 / (1.0 - spec.alpha()) : 3.0;
  quad::Options opt;
  opt.abs_tol = 1e-14;
  opt.rel_tol = 1e-13;
  // Integrate in the gap g = t - s so the tail never sees a cancelled difference.
  return quad::integrate_left_singular<double>([&](double g) { return du(t - g) * spec.levy_tail(g); }, 0.0, t, m,
                                               opt);
}

double SolverField::vertex_at(double t) const {
  const auto n = std::llround(t / grid.dt);
  if (n < 0 || n >= static_cast<long long>(vertex.size())) {
    throw std::out_of_range("vertex_at: time outside the solved horizon");
  }
  return vertex[static_cast<std::size_t>(n)];
}

double SolverField::value(double t, const GraphPoint& p) const {
  if (snapshots.empty()) throw std::out_of_range("SolverField: no snapshots stored");
  const auto best = std::min_element(snapshots.begin(), snapshots.end(), [t](const auto& a, const auto& b) {
    return std::abs(a.t - t) < std::abs(b.t - t);
  });
  if (std::abs(best->t - t) > 0.5 * grid.dt + 1e-12) {
    throw std::out_of_range("SolverField: no snapshot at the requested time");
  }
  if (p.edge < 1 || p.edge > static_cast<int>(best->edges.size()) || p.radius < 0.0 || p.radius > grid.R) {
    throw std::out_of_range("SolverField: point outside the truncated graph");
  }
  const auto& u = best->edges[static_cast<std::size_t>(p.edge - 1)];
  const double pos = p.radius / grid.dx();
  const auto m = std::min<Eigen::Index>(static_cast<Eigen::Index>(pos), grid.M - 1);
  const double w = pos - static_cast<double>(m);
  return (1.0 - w) * u(m) + w * u(m + 1);
}

SolverField solve_nl(const StarGraph& g, const StickyParams& s, const Subordinator& spec,
                     const EdgeFunction& u0, const SolverGrid& grid, std::span<const double> snapshot_times,
                     double continuity_tol) {
  grid.validate();
  const int n_edges = g.n_edges();
  const int M = grid.M;
  const double dx = grid.dx();
  const int steps = grid.steps();
  const double r = grid.dt / (2.0 * dx * dx);

  std::vector<Eigen::VectorXd> u(static_cast<std::size_t>(n_edges), Eigen::VectorXd(M + 1));
  double lo = u0(1, 0.0), hi = lo, vertex_sum = 0.0;
  for (int k = 1; k <= n_edges; ++k) {
    auto& uk = u[static_cast<std::size_t>(k - 1)];
    for (int m = 0; m <= M; ++m) uk(m) = u0(k, m * dx);
    lo = std::min(lo, uk(0));
    hi = std::max(hi, uk(0));
    vertex_sum += uk(0);
  }
  SolverField field;
  field.grid = grid;
  field.diagnostics.continuity_error = hi - lo;
  if (hi - lo > continuity_tol) throw std::invalid_argument("solve_nl: initial data discontinuous at the vertex");
  const double start_vertex = vertex_sum / n_edges;
  for (auto& uk : u) uk(0) = start_vertex;

  double sup = 0.0;
  for (const auto& uk : u) sup = std::max(sup, uk.cwiseAbs().maxCoeff());
  field.diagnostics.initial_sup = sup;
  field.diagnostics.max_abs = sup;

  std::vector<long long> snap_steps;
  for (double t : snapshot_times) {
    const auto n = std::llround(t / grid.dt);
    if (n < 0 || n > steps) throw std::out_of_range("solve_nl: snapshot time outside [0, T]");
    snap_steps.push_back(n);
  }
  auto store_snapshots = [&](long long n) {
    for (std::size_t q = 0; q < snap_steps.size(); ++q) {
      if (snap_steps[q] == n) field.snapshots.push_back(FieldSnapshot{snapshot_times[q], u});
    }
  };

  const EdgeOperator op(M, r);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(M + 1);
  beta(1) = r;
  op.solve(beta);
  const MemoryKernel kernel = build_kernel(spec, grid.dt, steps);
  const double w0 = kernel.weights[0];
  const double flux_scale = s.b / (2.0 * dx);
  const double self = flux_scale * (3.0 - 4.0 * beta(1) + beta(2));
  const double denom = s.c * w0 + self;

  const bool conserving = (spec.kind() == SubordinatorKind::elementary || s.c == 0.0) && s.b > 0.0;
  auto mass = [&] {
    CompensatedSum total;
    for (int k = 1; k <= n_edges; ++k) total.add(g.prob(k) * trapezoid(u[static_cast<std::size_t>(k - 1)], dx));
    return total.value() + (s.c > 0.0 ? s.c / (2.0 * s.b) * u[0](0) : 0.0);
  };
  const double mass0 = conserving ? mass() : 0.0;
  double drift = 0.0;
  const auto kappa = potential_of_first_cell(spec, grid.dt);
  double max_jump = 0.0;

  field.vertex.reserve(static_cast<std::size_t>(steps) + 1);
  field.vertex.push_back(start_vertex);
  store_snapshots(0);

  for (int n = 0; n < steps; ++n) {
    // Memory of past vertex increments, taken explicitly.
    double history = 0.0;
    for (int j = 1; j <= n; ++j) {
      history += kernel.weights[static_cast<std::size_t>(j)] *
                 (field.vertex[static_cast<std::size_t>(n + 1 - j)] - field.vertex[static_cast<std::size_t>(n - j)]);
    }
    const double old_vertex = field.vertex.back();
    double flux = 0.0;
    for (int k = 1; k <= n_edges; ++k) {
      auto& uk = u[static_cast<std::size_t>(k - 1)];
      op.solve(uk);
      flux += g.prob(k) * (4.0 * uk(1) - uk(2));
    }
    const double v = (s.c * (w0 * old_vertex - history) + flux_scale * flux) / denom;
    double slope = 0.0;
    for (int k = 1; k <= n_edges; ++k) {
      auto& uk = u[static_cast<std::size_t>(k - 1)];
      uk.tail(M) += v * beta.tail(M);
      uk(0) = v;
      slope += g.prob(k) * vertex_slope(uk, dx);
      field.diagnostics.max_abs = std::max(field.diagnostics.max_abs, uk.cwiseAbs().maxCoeff());
    }
    field.vertex.push_back(v);
    const double derivative = s.c > 0.0 ? caputo_apply(field.vertex, kernel) : 0.0;
    field.diagnostics.vertex_residual =
        std::max(field.diagnostics.vertex_residual, std::abs(s.c * derivative - s.b * slope));
    max_jump = std::max(max_jump, std::abs(v - old_vertex));
    if (conserving) drift = std::max(drift, std::abs(mass() - mass0));
    store_snapshots(n + 1);
  }

  field.diagnostics.maximum_principle = field.diagnostics.max_abs <= sup * (1.0 + 1e-12) + 1e-14;
  if (kappa) field.diagnostics.regularity = max_jump / *kappa;
  if (conserving) field.diagnostics.mass_drift = drift;
  return field;
}

CrosscheckReport mc_crosscheck(const SolverField& field, const StarGraph& g, const StickyParams& s,
                               const Subordinator& spec, const EdgeFunction& u0,
                               std::span<const double> times, std::span<const GraphPoint> points,
                               const McOptions& opt, double allowance, double k) {
  CrosscheckReport rep;
  rep.pass = true;
  for (const auto& p : points) {
    const auto estimates = estimate_expectation(g, s, spec, u0, p, times, opt);
    for (std::size_t q = 0; q < times.size(); ++q) {
      CrosscheckEntry e;
      e.t = times[q];
      e.point = p;
      e.numeric = field.value(times[q], p);
      e.monte_carlo = estimates[q];
      e.monte_carlo.attach(e.numeric);
      e.allowance = allowance;
      e.pass = e.monte_carlo.within(k, allowance);
      rep.pass = rep.pass && e.pass;
      rep.entries.push_back(e);
    }
  }
  return rep;
}

double truncation_length(double T, double support_radius) {
  if (!(T > 0.0) || !(support_radius >= 0.0)) {
    throw std::invalid_argument("truncation_length: need T > 0 and support radius >= 0");
  }
  return support_radius + 6.0 * std::sqrt(T);
}

std::string field_csv(const SolverField& field) {
  std::string out = "t,edge,x,u\n";
  char line[128];
  const double dx = field.grid.dx();
  for (const auto& snap : field.snapshots) {
    std::snprintf(line, sizeof line, "%.17g,0,0,%.17g\n", snap.t, snap.edges.front()(0));
    out += line;
    for (std::size_t k = 0; k < snap.edges.size(); ++k) {
      const auto& u = snap.edges[k];
      for (Eigen::Index m = 1; m < u.size(); ++m) {
        std::snprintf(line, sizeof line, "%.17g,%zu,%.17g,%.17g\n", snap.t, k + 1, static_cast<double>(m) * dx, u(m));
        out += line;
      }
    }
  }
  return out;
}

}  // namespace stargraph
