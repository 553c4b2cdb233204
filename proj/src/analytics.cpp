#include "stargraph/analytics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "stargraph/kernels.hpp"
#include "stargraph/quadrature.hpp"

namespace stargraph {

namespace {

void require_inside(const BallProblem& bp, const GraphPoint& p) {
  bp.validate();
  bp.graph.validate(p);
  if (p.radius > bp.radius) {
    throw std::invalid_argument("point at radius " + std::to_string(p.radius) +
                                " lies outside the ball of radius " + std::to_string(bp.radius));
  }
}

void require_positive_c(const StickyParams& s, const char* what) {
  if (!(s.c > 0.0)) throw std::invalid_argument(std::string(what) + ": needs c > 0");
}

}  // namespace

void BallProblem::validate() const {
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  graph.validate(GraphPoint{target_edge, 0.0});
}

double dirichlet_solution(const BallProblem& bp, const GraphPoint& p) {
  require_inside(bp, p);
  const double pe = bp.graph.prob(bp.target_edge);
  const double s = p.radius / bp.radius;
  if (p.at_origin()) return pe;
  return p.edge == bp.target_edge ? pe + s * (1.0 - pe) : pe * (1.0 - s);
}

double dirichlet_solution_combined(const BallProblem& bp, std::span<const double> boundary_values,
                                   const GraphPoint& p) {
  if (static_cast<int>(boundary_values.size()) != bp.graph.n_edges()) {
    throw std::invalid_argument("need one boundary value per edge");
  }
  double total = 0.0;
  BallProblem basis = bp;
  for (int e = 1; e <= bp.graph.n_edges(); ++e) {
    basis.target_edge = e;
    total += boundary_values[static_cast<std::size_t>(e - 1)] * dirichlet_solution(basis, p);
  }
  return total;
}

double poisson_solution(const BallProblem& bp, const GraphPoint& p) {
  require_inside(bp, p);
  const double r = bp.radius, x = p.radius;
  return r * r - x * x + bp.sticky.theta() * (r - x);
}

VertexJet dirichlet_jet(const BallProblem& bp) {
  bp.validate();
  const double pe = bp.graph.prob(bp.target_edge);
  VertexJet jet;
  for (int k = 1; k <= bp.graph.n_edges(); ++k) {
    jet.first_derivatives.push_back(k == bp.target_edge ? (1.0 - pe) / bp.radius : -pe / bp.radius);
  }
  jet.second_derivative = 0.0;
  return jet;
}

VertexJet poisson_jet(const BallProblem& bp) {
  bp.validate();
  VertexJet jet;
  jet.first_derivatives.assign(static_cast<std::size_t>(bp.graph.n_edges()), -bp.sticky.theta());
  jet.second_derivative = -2.0;
  return jet;
}

VertexJet jet_by_differences(const EdgeFunction& f, int n_edges, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("jet_by_differences: h must be positive");
  VertexJet jet;
  double second = 0.0;
  for (int k = 1; k <= n_edges; ++k) {
    const double f0 = f(k, 0.0), f1 = f(k, h), f2 = f(k, 2 * h), f3 = f(k, 3 * h);
    jet.first_derivatives.push_back((-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h));
    second += (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / (h * h);
  }
  jet.second_derivative = second / n_edges;
  return jet;
}

double vertex_condition_residual(const VertexJet& jet, const StickyParams& s, const StarGraph& g) {
  if (static_cast<int>(jet.first_derivatives.size()) != g.n_edges()) {
    throw std::invalid_argument("vertex jet needs one derivative per edge");
  }
  double flux = 0.0;
  for (int k = 1; k <= g.n_edges(); ++k) {
    flux += g.prob(k) * jet.first_derivatives[static_cast<std::size_t>(k - 1)];
  }
  return 0.5 * s.c * jet.second_derivative - s.b * flux;
}

ResolventQuery::ResolventQuery(EdgeFunction f, double lambda, int n_edges)
    : f_(std::move(f)), lambda_(lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("resolvent: lambda must be positive");
  const double k = std::sqrt(2.0 * lambda);
  quad::Options opt;
  opt.abs_tol = 1e-13;
  for (int e = 1; e <= n_edges; ++e) {
    transforms_.push_back(quad::integrate_to_infinity<double>(
        [&](double y) { return std::exp(-k * y) * f_(e, y); }, 0.0, opt));
  }
}

ResolventQuery::ResolventQuery(EdgeFunction f, double lambda, std::vector<double> transforms)
    : f_(std::move(f)), lambda_(lambda), transforms_(std::move(transforms)) {
  if (!(lambda > 0.0)) throw std::invalid_argument("resolvent: lambda must be positive");
}

double ResolventQuery::weighted_transform(const StarGraph& g) const {
  if (static_cast<int>(transforms_.size()) != g.n_edges()) {
    throw std::invalid_argument("resolvent query has one transform per edge of another graph");
  }
  double total = 0.0;
  for (int k = 1; k <= g.n_edges(); ++k) total += g.prob(k) * transforms_[static_cast<std::size_t>(k - 1)];
  return total;
}

double sticky_resolvent_origin(const ResolventQuery& q, const StickyParams& s, const StarGraph& g) {
  const double root = std::sqrt(2.0 * q.lambda());
  const double flux = q.weighted_transform(g);
  if (s.is_kirchhoff()) return 2.0 / root * flux;
  const double ratio = s.b / s.c;
  return (q.f_at_vertex() + 2.0 * ratio * flux) / (q.lambda() + ratio * root);
}

double resolvent_at_point(const ResolventQuery& q, const StickyParams& s, const StarGraph& g,
                          const GraphPoint& p) {
  g.validate(p);
  const double at_vertex = sticky_resolvent_origin(q, s, g);
  if (p.at_origin()) return at_vertex;
  const int edge = p.edge;
  const auto& f = q.f();
  const double killed = kernels::dirichlet_resolvent<double>(
      [&](double y) { return f(edge, y); }, q.lambda(), p.radius);
  return killed + kernels::first_passage_laplace(q.lambda(), p.radius) * at_vertex;
}

StickyParams trapped_effective_params(const StickyParams& s, const Subordinator& spec, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("trapped_effective_params: lambda must be positive");
  if (spec.kind() == SubordinatorKind::elementary) return s;
  const double ratio = s.theta() * spec.symbol(lambda) / lambda;
  return StickyParams::from_theta(ratio);
}

double holding_survival(double t, const StickyParams& s, const Subordinator& spec) {
  require_positive_c(s, "holding_survival");
  if (!(t >= 0.0)) throw std::invalid_argument("holding_survival: t must be nonnegative");
  const double mu = s.holding_rate();
  switch (spec.kind()) {
    case SubordinatorKind::elementary:
      return std::exp(-mu * t);
    case SubordinatorKind::stable:
      return mittag_leffler<double>(spec.alpha(), -mu * std::pow(t, spec.alpha()));
    case SubordinatorKind::gamma:
      throw UnsupportedKind("holding_survival: gamma holding law is available in the Laplace domain only");
  }
  return 0.0;
}

double holding_survival_laplace(double lambda, const StickyParams& s, const Subordinator& spec) {
  require_positive_c(s, "holding_survival_laplace");
  const double phi = spec.symbol(lambda);
  return phi / lambda / (s.holding_rate() + phi);
}

double holding_mean(const StickyParams& s, const Subordinator& spec) {
  require_positive_c(s, "holding_mean");
  return spec.mean_rate() / s.holding_rate();
}

}  // namespace stargraph
