#ifndef STARGRAPH_GRAPH_HPP
#define STARGRAPH_GRAPH_HPP

#include <cstddef>
#include <random>
#include <vector>

namespace stargraph {

/// A point (edge, radius) on the star graph. Edges are 1-based; the origin is
/// stored canonically as (1, 0).
struct GraphPoint {
  int edge = 1;
  double radius = 0.0;

  bool at_origin() const { return radius == 0.0; }
  friend bool operator==(const GraphPoint&, const GraphPoint&) = default;
};

inline constexpr GraphPoint kOrigin{1, 0.0};

/// n half-lines glued at a single vertex, each carrying the probability that
/// an excursion from the vertex runs along it.
class StarGraph {
 public:
  /// Throws std::invalid_argument unless probs is nonempty, nonnegative and
  /// sums to one within 1e-12. Probabilities are never renormalized.
  explicit StarGraph(std::vector<double> probs);

  static StarGraph uniform(int n_edges);

  int n_edges() const { return static_cast<int>(probs_.size()); }
  const std::vector<double>& probs() const { return probs_; }
  double prob(int edge) const;

  /// (1, 0) when radius == 0, (edge, radius) otherwise.
  GraphPoint canonicalize(int edge, double radius) const;

  /// Throws std::out_of_range for a bad edge, std::invalid_argument for a
  /// negative or non-finite radius.
  void validate(const GraphPoint& p) const;

  /// |x - y| on a common edge, x + y across edges.
  double distance(const GraphPoint& p, const GraphPoint& q) const;

  /// Draw an edge label with masses p_j.
  template <class URBG>
  int sample_edge(URBG& rng) const {
    if (probs_.size() == 1) return 1;
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    for (std::size_t k = 0; k + 1 < cumulative_.size(); ++k) {
      if (u < cumulative_[k]) return static_cast<int>(k) + 1;
    }
    // Last edge with positive mass absorbs the rounding slack of the cumulative sum.
    for (std::size_t k = probs_.size(); k-- > 0;) {
      if (probs_[k] > 0.0) return static_cast<int>(k) + 1;
    }
    return n_edges();
  }

 private:
  std::vector<double> probs_;
  std::vector<double> cumulative_;
};

/// Boundary parameters of the a = 0 family: b + c = 1, b > 0.
struct StickyParams {
  double b = 1.0;
  double c = 0.0;

  /// Throws std::invalid_argument if the constraints fail.
  static StickyParams from_bc(double b, double c);
  /// b = 1 / (1 + theta), c = theta / (1 + theta).
  static StickyParams from_theta(double theta);

  /// Time-change stickiness c / b.
  double theta() const { return c / b; }
  /// Exponential holding rate b / c at the vertex (infinite when c = 0).
  double holding_rate() const;
  bool is_kirchhoff() const { return c == 0.0; }
};

}  // namespace stargraph

#endif  // STARGRAPH_GRAPH_HPP
