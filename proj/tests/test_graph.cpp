#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "stargraph/graph.hpp"

using namespace stargraph;

TEST_CASE("distance on one edge and across edges") {
  const StarGraph g = StarGraph::uniform(3);
  CHECK(g.distance({1, 2.0}, {1, 0.5}) == doctest::Approx(1.5));
  CHECK(g.distance({2, 1.0}, {3, 1.0}) == doctest::Approx(2.0));
  CHECK(g.distance({1, 0.0}, {3, 0.0}) == 0.0);
  CHECK(g.distance({2, 0.0}, {3, 0.7}) == doctest::Approx(0.7));
  CHECK_THROWS_AS(g.distance({4, 1.0}, {1, 0.0}), std::out_of_range);
  CHECK_THROWS_AS(g.distance({0, 1.0}, {1, 0.0}), std::out_of_range);
}

TEST_CASE("distance is a metric on random triples") {
  const StarGraph g({0.2, 0.3, 0.5});
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> edge(1, 3);
  std::exponential_distribution<double> radius(1.0);
  auto draw = [&] {
    // Hit the origin now and then so the identification is exercised.
    const double r = (rng() % 8 == 0) ? 0.0 : radius(rng);
    return GraphPoint{edge(rng), r};
  };
  for (int i = 0; i < 5000; ++i) {
    const auto p = draw(), q = draw(), w = draw();
    const double pq = g.distance(p, q);
    CHECK(pq >= 0.0);
    CHECK(pq == g.distance(q, p));
    CHECK(g.distance(p, p) == 0.0);
    CHECK(pq <= g.distance(p, w) + g.distance(w, q) + 1e-12);
    CHECK(g.distance(p, kOrigin) == doctest::Approx(p.radius));
  }
}

TEST_CASE("canonicalize folds the origin onto edge 1") {
  const StarGraph g = StarGraph::uniform(3);
  CHECK(g.canonicalize(3, 0.0) == GraphPoint{1, 0.0});
  CHECK(g.canonicalize(2, 1.5) == GraphPoint{2, 1.5});
  CHECK_THROWS_AS(g.canonicalize(5, 0.0), std::out_of_range);
  CHECK_THROWS_AS(g.canonicalize(1, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(g.canonicalize(1, std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
}

TEST_CASE("graph construction validates the edge law") {
  CHECK_NOTHROW(StarGraph({0.2, 0.3, 0.5}));
  CHECK_THROWS_AS(StarGraph(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(StarGraph({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(StarGraph({1.2, -0.2}), std::invalid_argument);
  CHECK_THROWS_AS(StarGraph::uniform(0), std::invalid_argument);
  const StarGraph g({0.2, 0.3, 0.5});
  CHECK(g.n_edges() == 3);
  CHECK(g.prob(2) == 0.3);
  CHECK_THROWS_AS(g.prob(4), std::out_of_range);
  const StarGraph u = StarGraph::uniform(4);
  for (int k = 1; k <= 4; ++k) CHECK(u.prob(k) == doctest::Approx(0.25));
}

TEST_CASE("sample_edge frequencies match the edge law") {
  const StarGraph g({0.2, 0.3, 0.5});
  std::mt19937_64 rng(3);
  const int n = 200000;
  std::vector<int> counts(4, 0);
  for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(g.sample_edge(rng))];
  CHECK(counts[0] == 0);
  for (int k = 1; k <= 3; ++k) {
    const double p = g.prob(k);
    const double freq = counts[static_cast<std::size_t>(k)] / static_cast<double>(n);
    CHECK(std::abs(freq - p) <= 3.0 * std::sqrt(p * (1 - p) / n));
  }
  const StarGraph degenerate({1.0, 0.0, 0.0});
  for (int i = 0; i < 1000; ++i) CHECK(degenerate.sample_edge(rng) == 1);
  const StarGraph last({0.0, 0.0, 1.0});
  for (int i = 0; i < 1000; ++i) CHECK(last.sample_edge(rng) == 3);
}

TEST_CASE("sticky parameters") {
  const auto s = StickyParams::from_bc(0.5, 0.5);
  CHECK(s.theta() == doctest::Approx(1.0));
  CHECK(s.holding_rate() == doctest::Approx(1.0));
  CHECK_FALSE(s.is_kirchhoff());
  const auto t = StickyParams::from_theta(1.0);
  CHECK(t.b == doctest::Approx(0.5));
  CHECK(t.c == doctest::Approx(0.5));
  const auto k = StickyParams::from_bc(1.0, 0.0);
  CHECK(k.is_kirchhoff());
  CHECK(k.theta() == 0.0);
  CHECK(std::isinf(k.holding_rate()));
  const auto q = StickyParams::from_theta(3.0);
  CHECK(q.b + q.c == doctest::Approx(1.0));
  CHECK(q.theta() == doctest::Approx(3.0));
  CHECK_THROWS_AS(StickyParams::from_bc(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(StickyParams::from_bc(0.5, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(StickyParams::from_theta(-1.0), std::invalid_argument);
}
