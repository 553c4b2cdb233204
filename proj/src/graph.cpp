#include "stargraph/graph.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace stargraph {

StarGraph::StarGraph(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("star graph needs at least one edge");
  double total = 0.0;
  for (std::size_t k = 0; k < probs_.size(); ++k) {
    const double p = probs_[k];
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw std::invalid_argument("edge probability p_" + std::to_string(k + 1) +
                                  " = " + std::to_string(p) + " outside [0, 1]");
    }
    total += p;
    cumulative_.push_back(total);
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("edge probabilities sum to " + std::to_string(total) +
                                ", expected 1");
  }
}

StarGraph StarGraph::uniform(int n_edges) {
  if (n_edges < 1) throw std::invalid_argument("star graph needs at least one edge");
  std::vector<double> p(static_cast<std::size_t>(n_edges), 1.0 / n_edges);
  // Put the rounding remainder on the last edge so the sum is 1 within 1e-12.
  const double head = std::accumulate(p.begin(), p.end() - 1, 0.0);
  p.back() = 1.0 - head;
  return StarGraph(std::move(p));
}

double StarGraph::prob(int edge) const {
  if (edge < 1 || edge > n_edges()) {
    throw std::out_of_range("edge " + std::to_string(edge) + " outside 1.." +
                            std::to_string(n_edges()));
  }
  return probs_[static_cast<std::size_t>(edge - 1)];
}

void StarGraph::validate(const GraphPoint& p) const {
  if (p.edge < 1 || p.edge > n_edges()) {
    throw std::out_of_range("edge " + std::to_string(p.edge) + " outside 1.." +
                            std::to_string(n_edges()));
  }
  if (!std::isfinite(p.radius) || p.radius < 0.0) {
    throw std::invalid_argument("radius must be finite and nonnegative, got " +
                                std::to_string(p.radius));
  }
}

GraphPoint StarGraph::canonicalize(int edge, double radius) const {
  validate(GraphPoint{edge, radius});
  if (radius == 0.0) return kOrigin;
  return GraphPoint{edge, radius};
}

double StarGraph::distance(const GraphPoint& p, const GraphPoint& q) const {
  validate(p);
  validate(q);
  // Both branches agree when either point is the origin, whatever its edge tag.
  return p.edge == q.edge ? std::abs(p.radius - q.radius) : p.radius + q.radius;
}

StickyParams StickyParams::from_bc(double b, double c) {
  if (!(b > 0.0 && b <= 1.0) || !(c >= 0.0 && c < 1.0)) {
    throw std::invalid_argument("sticky parameters need b in (0,1], c in [0,1)");
  }
  if (std::abs(b + c - 1.0) > 1e-12) {
    throw std::invalid_argument("sticky parameters need b + c = 1, got " +
                                std::to_string(b + c));
  }
  return StickyParams{b, c};
}

StickyParams StickyParams::from_theta(double theta) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    throw std::invalid_argument("stickiness theta must be finite and nonnegative");
  }
  const double b = 1.0 / (1.0 + theta);
  return StickyParams{b, 1.0 - b};
}

double StickyParams::holding_rate() const {
  return c == 0.0 ? std::numeric_limits<double>::infinity() : b / c;
}

}  // namespace stargraph
